#include <gtest/gtest.h>

#include <cmath>

#include "cliffpair/quadforms.hpp"
#include "oracles.hpp"

using namespace cliffpair;

namespace {

std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// Over GF(q) a nonsingular 2m-dim form has q^(2m-1) + e(q^m - q^(m-1)) - 1
// nonzero zeros, e = +1 for trivial Arf and -1 otherwise. Counting zeros thus
// decides the Arf class without any symplectic basis.
int arf_by_counting(const QForm& q) {
  const std::uint64_t s = q.field()->size();
  const int m = q.half_dim();
  const std::uint64_t plus = ipow(s, 2 * m - 1) + ipow(s, m) - ipow(s, m - 1) - 1;
  const std::uint64_t minus = ipow(s, 2 * m - 1) - ipow(s, m) + ipow(s, m - 1) - 1;
  const std::uint64_t c = oracle::count_isotropic(q.gram());
  if (c == plus) return 0;
  if (c == minus) return 1;
  ADD_FAILURE() << "isotropic count " << c << " matches neither type";
  return -1;
}

// Largest dimension of a totally singular subspace, by enumerating spans of
// up to two vectors (enough for forms of dimension <= 4).
int witt_by_enumeration(const QForm& q) {
  std::vector<Vec> zeros;
  oracle::for_each_vector(q.field(), q.dim(), [&](const Vec& v) {
    if (!is_zero(v) && q.value(v).is_zero()) zeros.push_back(v);
  });
  if (zeros.empty()) return 0;
  for (std::size_t i = 0; i < zeros.size(); ++i)
    for (std::size_t j = i + 1; j < zeros.size(); ++j)
      if (q.polar_value(zeros[i], zeros[j]).is_zero() && Subspace::span({zeros[i], zeros[j]}, q.dim()).dim() == 2)
        return 2;
  return 1;
}

Mat random_invertible(Rng& rng, Field f, int n) {
  for (;;) {
    Mat p = oracle::random_mat(rng, f, n, n);
    if (inverse(p)) return p;
  }
}

}  // namespace

TEST(QuadForms, BinaryBlockExamples) {
  const Field f = gf2();
  const QForm h = binary_block(f.zero(), f.zero());
  EXPECT_EQ(witt_decompose(h).witt_index, 1);
  const QForm an = binary_block(f.one(), f.one());
  for (auto bits : {std::pair{1, 0}, std::pair{0, 1}, std::pair{1, 1}}) {
    Vec v(2);
    v << f.from_bits(bits.first), f.from_bits(bits.second);
    EXPECT_TRUE(an.value(v).is_one());
  }
  EXPECT_EQ(witt_decompose(an).witt_index, 0);
  const Field f4 = gf4();
  for (const Fe& a : oracle::elements(f4)) {
    const QForm q = binary_block(a, f4.zero());
    EXPECT_EQ(witt_decompose(q).witt_index, 1);
    EXPECT_EQ(arf(q).bit, 0);
  }
}

TEST(QuadForms, SymplecticBasisExamples) {
  const Field f = gf2();
  const QForm h = hyperbolic(f, 1);
  ASSERT_EQ(h.symplectic_basis().size(), 1u);
  const auto& b = h.symplectic_basis()[0];
  EXPECT_TRUE(h.polar_value(b.e, b.f).is_one());
  EXPECT_TRUE(b.a.is_one());  // a nonzero first slot is always arranged
  const QForm q = QForm::from_blocks({{f.one(), f.one()}, {f.one(), f.one()}});
  const auto blocks = q.blocks();
  ASSERT_EQ(blocks.size(), 2u);
  for (auto& [a, c] : blocks) {
    EXPECT_TRUE(a.is_one());
    EXPECT_TRUE(c.is_one());
  }
  EXPECT_EQ(q.symplectic_matrix(), Mat(Mat::Identity(4, 4)));
}

TEST(QuadForms, SymplecticBasisPostcondition) {
  Rng rng(101);
  for (Field f : {gf2(), gf4(), binary_field(4), parse_field("gf2(t)")}) {
    for (int it = 0; it < 10; ++it) {
      const QForm q = random_form(rng, f, 1 + static_cast<int>(rng.below(4)));
      const auto& sb = q.symplectic_basis();
      ASSERT_EQ(static_cast<int>(sb.size()), q.half_dim());
      for (std::size_t i = 0; i < sb.size(); ++i) {
        EXPECT_EQ(q.value(sb[i].e), sb[i].a);
        EXPECT_EQ(q.value(sb[i].f), sb[i].b);
        EXPECT_FALSE(sb[i].a.is_zero());
        EXPECT_TRUE(q.polar_value(sb[i].e, sb[i].f).is_one());
        for (std::size_t j = 0; j < sb.size(); ++j) {
          if (i == j) continue;
          EXPECT_TRUE(q.polar_value(sb[i].e, sb[j].e).is_zero());
          EXPECT_TRUE(q.polar_value(sb[i].e, sb[j].f).is_zero());
          EXPECT_TRUE(q.polar_value(sb[i].f, sb[j].f).is_zero());
        }
      }
      EXPECT_TRUE(inverse(q.symplectic_matrix()).has_value());
    }
  }
}

TEST(QuadForms, ArfExamples) {
  const Field f = gf2();
  EXPECT_EQ(arf(hyperbolic(f, 2)).bit, 0);
  EXPECT_EQ(arf(binary_block(f.one(), f.one())).bit, 1);
  EXPECT_EQ(arf_by_counting(binary_block(f.one(), f.one())), 1);
  const Field f16 = binary_field(4);
  for (const Fe& c : oracle::elements(f16)) {
    const QForm q = binary_block(f16.one(), c);
    EXPECT_EQ(arf_value(q), c);
    EXPECT_EQ(arf(q).bit, artin_schreier_class(c));
  }
}

TEST(QuadForms, ArfMatchesZeroCount) {
  Rng rng(103);
  for (Field f : {gf2(), gf4()})
    for (int m = 1; m <= (f->size() == 2 ? 3 : 2); ++m)
      for (int it = 0; it < 10; ++it) {
        const QForm q = random_form(rng, f, m);
        EXPECT_EQ(arf(q).bit, arf_by_counting(q));
      }
}

TEST(QuadForms, ArfInvariantUnderRebasing) {
  Rng rng(107);
  for (Field f : {gf2(), gf4(), binary_field(3)})
    for (int it = 0; it < 5; ++it) {
      const QForm q = random_form(rng, f, 1 + static_cast<int>(rng.below(4)));
      for (int r = 0; r < 20; ++r) {
        const QForm p = q.transformed(random_invertible(rng, f, q.dim()));
        EXPECT_EQ(arf(p).bit, arf(q).bit);
      }
    }
}

TEST(QuadForms, ArfAdditiveAndScalingInvariant) {
  Rng rng(109);
  for (Field f : {gf2(), gf4(), binary_field(4)})
    for (int it = 0; it < 20; ++it) {
      const QForm p = random_form(rng, f, 1 + static_cast<int>(rng.below(3)));
      const QForm q = random_form(rng, f, 1 + static_cast<int>(rng.below(3)));
      EXPECT_EQ(*arf(orthogonal_sum(p, q)).bit, *arf(p).bit ^ *arf(q).bit);
      const Fe l = rng.nonzero(f);
      EXPECT_EQ(arf(p.scaled(l)).bit, arf(p).bit);
    }
}

TEST(QuadForms, TensorBilQuad) {
  Rng rng(113);
  const Field f = gf2();
  const QForm q = random_form(rng, gf4(), 2);
  EXPECT_EQ(tensor_bil_quad(BilForm::diagonal({gf4().one()}), q).gram(), q.gram());

  for (const Fe& c : oracle::elements(f)) {
    const QForm one_c = binary_block(f.one(), c);
    const QForm t = tensor_bil_quad(BilForm::diagonal({f.one(), f.one()}), one_c);
    EXPECT_EQ(t.gram(), orthogonal_sum(one_c, one_c).gram());
    EXPECT_EQ(arf(t).bit, 0);
  }
  for (int it = 0; it < 10; ++it) {
    const Field f4 = gf4();
    const BilForm b = BilForm::diagonal({rng.nonzero(f4), rng.nonzero(f4)});
    const QForm p = random_form(rng, f4, 1 + static_cast<int>(rng.below(2)));
    const QForm t = tensor_bil_quad(b, p);
    EXPECT_EQ(t.dim(), 2 * p.dim());
    EXPECT_EQ(t.polar(), kron(b.matrix(), p.polar()));
    // (b x q)(w x v) = b(w,w) q(v) on pure tensors.
    const Vec w = oracle::random_mat(rng, f4, 2, 1).col(0), v = oracle::random_mat(rng, f4, p.dim(), 1).col(0);
    const Vec wv = kron(Mat(w), Mat(v)).col(0);
    EXPECT_EQ(t.value(wv), b.value(w, w) * p.value(v));
  }
  const Fe b1 = gf4().parse("g"), c = gf4().parse("g+1");
  EXPECT_EQ(tensor_bil_quad(BilForm::pfister({b1}), binary_block(gf4().one(), c)).gram(), pfister_quad({b1}, c).gram());
}

TEST(QuadForms, PfisterForms) {
  const Field f = gf2();
  for (const Fe& c : oracle::elements(f)) EXPECT_EQ(pfister_quad({}, c).gram(), binary_block(f.one(), c).gram());
  const QForm p = pfister_quad({f.one()}, f.one());
  EXPECT_EQ(witt_by_enumeration(p), 2);
  EXPECT_EQ(witt_decompose(p).witt_index, 2);
  const Field ft = parse_field("gf2(t)");
  const QForm pt = pfister_quad({ft.parse("t")}, ft.parse("1/t"));
  EXPECT_EQ(pt.dim(), 4);
  // Every 2-fold Pfister form has Arf c + c = 0; a single block [1,1/t] stays undecided.
  EXPECT_TRUE(arf_value(pt).is_zero());
  EXPECT_FALSE(arf(binary_block(ft.one(), ft.parse("1/t"))).decided());
  EXPECT_THROW(pfister_quad({f.zero()}, f.one()), AlgebraError);

  // Anisotropic or hyperbolic, for every 2- and 3-fold Pfister form over GF(4).
  const Field f4 = gf4();
  for (const Fe& b1 : oracle::elements(f4)) {
    if (b1.is_zero()) continue;
    for (const Fe& c : oracle::elements(f4)) {
      const auto w = witt_decompose(pfister_quad({b1}, c));
      EXPECT_TRUE(w.witt_index == 0 || w.witt_index == 2);
      for (const Fe& b2 : oracle::elements(f4)) {
        if (b2.is_zero()) continue;
        const auto w3 = witt_decompose(pfister_quad({b1, b2}, c));
        EXPECT_TRUE(w3.witt_index == 0 || w3.witt_index == 4);
      }
    }
  }
}

TEST(QuadForms, WittExamples) {
  const Field f = gf2();
  const auto h = witt_decompose(hyperbolic(f, 1));
  EXPECT_EQ(h.witt_index, 1);
  EXPECT_EQ(h.anisotropic.dim(), 0);
  const auto a = witt_decompose(binary_block(f.one(), f.one()));
  EXPECT_EQ(a.witt_index, 0);
  EXPECT_EQ(a.anisotropic.dim(), 2);
  EXPECT_EQ(oracle::count_isotropic(a.anisotropic.gram()), 0u);
  const QForm two = QForm::from_blocks({{f.one(), f.one()}, {f.one(), f.one()}});
  EXPECT_EQ(witt_by_enumeration(two), 2);
  EXPECT_EQ(witt_decompose(two).witt_index, 2);
  EXPECT_THROW(witt_decompose(hyperbolic(parse_field("gf2(t)"), 1)), AlgebraError);
}

TEST(QuadForms, WittDecompositionProperties) {
  Rng rng(127);
  for (Field f : {gf2(), gf4(), binary_field(4)})
    for (int it = 0; it < 15; ++it) {
      const int m = 1 + static_cast<int>(rng.below(4));
      const QForm q = random_form(rng, f, m);
      const auto w = witt_decompose(q);
      EXPECT_EQ(w.witt_index, *arf(q).bit == 0 ? m : m - 1);
      EXPECT_EQ(w.anisotropic.dim() + 2 * w.witt_index, q.dim());
      if (w.anisotropic.dim() > 0) EXPECT_EQ(oracle::count_isotropic(w.anisotropic.gram()), 0u);
      EXPECT_TRUE(inverse(w.basis).has_value());
      for (int i = 0; i < w.witt_index; ++i) {
        const Vec e = w.basis.col(2 * i), g = w.basis.col(2 * i + 1);
        EXPECT_TRUE(q.value(e).is_zero());
        EXPECT_TRUE(q.value(g).is_zero());
        EXPECT_TRUE(q.polar_value(e, g).is_one());
      }
      if (q.dim() <= 4 && f->size() <= 4) EXPECT_EQ(w.witt_index, witt_by_enumeration(q));
    }
}

TEST(QuadForms, QuaternionNormForm) {
  const Field f = gf2();
  const auto w = witt_decompose(quaternion_norm_form(f.zero(), f.one()));
  EXPECT_EQ(w.witt_index, 2);
  const Field f4 = gf4();
  for (const Fe& a : oracle::elements(f4))
    for (const Fe& b : oracle::elements(f4)) {
      if (b.is_zero()) continue;
      const QForm n = quaternion_norm_form(a, b);
      Vec one = Vec::Constant(4, f4.zero()), u = one;
      one[0] = f4.one();
      u[1] = f4.one();
      EXPECT_TRUE(n.value(one).is_one());
      EXPECT_EQ(n.value(u), a);
      EXPECT_EQ(invariants(n), invariants(pfister_quad({b}, a)));
    }
}

TEST(QuadForms, RejectsSingularOrOdd) {
  const Field f = gf2();
  Mat g = Mat::Zero(2, 2);
  g(0, 0) = f.one();
  EXPECT_THROW(QForm(g, f), AlgebraError);
  EXPECT_THROW(QForm(Mat::Identity(3, 3), f), AlgebraError);
}
