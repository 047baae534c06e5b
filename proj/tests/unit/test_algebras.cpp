#include <gtest/gtest.h>

#include "cliffpair/algebras.hpp"
#include "oracles.hpp"

using namespace cliffpair;

namespace {

// Same structure constants, provenance stripped so splitting takes the generic route.
AlgPtr as_generic(const AlgPtr& a) {
  std::vector<std::string> labels = a->labels();
  std::vector<SparseVec> table;
  for (int i = 0; i < a->dim(); ++i)
    for (int j = 0; j < a->dim(); ++j) table.push_back(a->basis_product(i, j));
  return std::make_shared<const Alg>(a->field(), labels, table, a->one(), a->trd_functional(), Provenance{});
}

// Sum of principal 2x2 minors, which is s_2 of the characteristic polynomial.
Fe principal_two_minors(const Mat& m) {
  Fe s(0);
  for (int i = 0; i < m.rows(); ++i)
    for (int j = i + 1; j < m.rows(); ++j) s += m(i, i) * m(j, j) + m(i, j) * m(j, i);
  return s;
}

// Commutative F[x]/(x^k), a local algebra which is not simple.
AlgPtr truncated_polynomials(Field f, int k) {
  std::vector<std::string> labels;
  for (int i = 0; i < k; ++i) labels.push_back("x^" + std::to_string(i));
  std::vector<SparseVec> t(static_cast<std::size_t>(k * k));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      if (i + j < k) t[static_cast<std::size_t>(i * k + j)] = {{i + j, f.one()}};
  Vec unit = Vec::Constant(k, f.zero());
  unit[0] = f.one();
  return std::make_shared<const Alg>(f, labels, t, unit, RowVec::Constant(k, f.zero()), Provenance{});
}

}  // namespace

TEST(Algebras, QuaternionRelations) {
  for (Field f : {gf2(), gf4(), parse_field("gf2(t)")}) {
    Rng rng(201);
    for (int it = 0; it < 5; ++it) {
      const Fe a = rng.element(f), b = rng.nonzero(f);
      const AlgPtr q = quaternion(a, b);
      const Vec one = q->basis(0), u = q->basis(1), v = q->basis(2), w = q->basis(3);
      EXPECT_EQ(q->mul(u, one + u), a * one);  // u(1-u) = a
      EXPECT_EQ(q->mul(v, v), b * one);
      EXPECT_EQ(q->mul(u, v), w);
      EXPECT_EQ(q->mul(v, one + u), w);
      EXPECT_TRUE(q->trd(u).is_one());
      EXPECT_TRUE(q->trd(one).is_zero());
      // Trd(x) = x + conj(x) read on the identity.
      const Vec x = q->random_element(rng);
      const Vec s = x + mat_vec(quaternion_conjugation(*q), x);
      EXPECT_EQ(s, q->trd(x) * one);
      EXPECT_EQ(quaternion_nrd(*q, v), b);
    }
  }
  EXPECT_THROW(quaternion(gf2().zero(), gf2().zero()), AlgebraError);
}

TEST(Algebras, SplitQuaternionOverGF2) {
  const Field f = gf2();
  const AlgPtr q = quaternion(f.zero(), f.one());
  const Vec u = q->basis(1);
  EXPECT_EQ(q->mul(u, u), u);
  const SplitIso iso = split_isomorphism(q);
  EXPECT_EQ(iso.n, 2);
}

TEST(Algebras, SplitIsomorphismAllQuaternionsGF4) {
  const Field f = gf4();
  for (const Fe& a : oracle::elements(f))
    for (const Fe& b : oracle::elements(f)) {
      if (b.is_zero()) continue;
      const AlgPtr q = quaternion(a, b);
      const SplitIso iso = split_isomorphism(q);
      EXPECT_EQ(iso.n, 2);
      // Nrd = det of the representing matrix, checked on every element.
      oracle::for_each_vector(f, 4, [&](const Vec& x) {
        EXPECT_EQ(quaternion_nrd(*q, x), oracle::det(iso.apply(x)));
      });
    }
}

TEST(Algebras, TensorProducts) {
  const Field f = gf2();
  const AlgPtr q = quaternion(f.zero(), f.one());
  const AlgPtr qf = tensor(q, matrix_algebra(f, 1));
  EXPECT_EQ(qf->dim(), 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) EXPECT_EQ(qf->basis_product(i, j), q->basis_product(i, j));
  const AlgPtr qq = tensor(q, q);
  EXPECT_EQ(qq->dim(), 16);
  EXPECT_EQ(split_isomorphism(qq).n, 4);
  EXPECT_EQ(split_isomorphism(as_generic(qq)).n, 4);
  // (u x 1)(1 x u) = u x u, Trd = Trd(u)^2 = 1.
  const Vec u1 = qq->basis(1 * 4 + 0), one_u = qq->basis(0 * 4 + 1);
  EXPECT_TRUE(qq->trd(qq->mul(u1, one_u)).is_one());
  EXPECT_THROW(tensor(q, quaternion(gf4().zero(), gf4().one())), AlgebraError);
}

TEST(Algebras, TraceIsSymmetric) {
  Rng rng(211);
  const Field f = gf4();
  const AlgPtr a = tensor(quaternion(f.parse("g"), f.one()), quaternion(f.one(), f.parse("g")));
  for (int it = 0; it < 50; ++it) {
    const Vec x = a->random_element(rng), y = a->random_element(rng);
    EXPECT_EQ(a->trd(a->mul(x, y)), a->trd(a->mul(y, x)));
  }
  // Product rule on pure tensors.
  const AlgPtr q1 = a->provenance().factors[0], q2 = a->provenance().factors[1];
  for (int it = 0; it < 20; ++it) {
    const Vec x = q1->random_element(rng), y = q2->random_element(rng);
    const Vec xy = kron(Mat(x), Mat(y)).col(0);
    EXPECT_EQ(a->trd(xy), q1->trd(x) * q2->trd(y));
  }
}

TEST(Algebras, ReducedSrd) {
  const Field f = gf2();
  const AlgPtr m2 = matrix_algebra(f, 2);
  EXPECT_TRUE(reduced_srd(m2, m2->one()).is_one());
  EXPECT_TRUE(reduced_srd(m2, m2->zero()).is_zero());
  EXPECT_TRUE(reduced_srd(m2, m2->basis(0)).is_zero());
  Rng rng(223);
  const Field f4 = gf4();
  const AlgPtr a = tensor(quaternion(f4.parse("g"), f4.parse("g+1")), quaternion(f4.one(), f4.parse("g")));
  const SplitIso iso = split_isomorphism(a);
  for (int it = 0; it < 30; ++it) {
    const Vec x = a->random_element(rng);
    EXPECT_EQ(reduced_srd(iso, x), principal_two_minors(iso.apply(x)));
  }
}

TEST(Algebras, CentreExamples) {
  const Field f = gf2();
  EXPECT_EQ(centre(*matrix_algebra(f, 2)).dim(), 1);
  EXPECT_EQ(centre(*direct_product(matrix_algebra(f, 1), matrix_algebra(f, 1))).dim(), 2);
  EXPECT_EQ(centre(*tensor(quaternion(f.one(), f.one()), quaternion(f.zero(), f.one()))).dim(), 1);
}

TEST(Algebras, CentreMatchesEnumeration) {
  for (Field f : {gf2(), gf4()}) {
    for (const AlgPtr& a : {quaternion(f.one(), f.one()), truncated_polynomials(f, 4),
                            direct_product(matrix_algebra(f, 1), quaternion(f.zero(), f.one()))}) {
      if (a->dim() * f->degree() > 10) continue;
      std::uint64_t central = 0;
      oracle::for_each_vector(f, a->dim(), [&](const Vec& x) {
        bool ok = true;
        for (int i = 0; i < a->dim() && ok; ++i) ok = a->mul(x, a->basis(i)) == a->mul(a->basis(i), x);
        if (ok) ++central;
      });
      std::uint64_t expect = 1;
      for (int i = 0; i < centre(*a).dim(); ++i) expect *= f->size();
      EXPECT_EQ(central, expect);
    }
  }
}

TEST(Algebras, GenericSplittingOfLargerAlgebras) {
  for (Field f : {gf2(), gf4(), binary_field(3)}) {
    const AlgPtr m3 = as_generic(matrix_algebra(f, 3));
    EXPECT_EQ(split_isomorphism(m3).n, 3);
    const AlgPtr q = quaternion(f.one(), f.one());
    const AlgPtr big = as_generic(tensor_all({q, q, q}));
    EXPECT_EQ(split_isomorphism(big).n, 8);
  }
}

TEST(Algebras, SplittingRefusesNonSimpleOrInfinite) {
  const Field f = gf2();
  EXPECT_THROW(split_isomorphism(direct_product(matrix_algebra(f, 1), matrix_algebra(f, 1))), AlgebraError);
  EXPECT_THROW(split_isomorphism(truncated_polynomials(f, 4)), AlgebraError);
  AlgPtr four = direct_product(direct_product(matrix_algebra(f, 1), matrix_algebra(f, 1)),
                               direct_product(matrix_algebra(f, 1), matrix_algebra(f, 1)));
  EXPECT_THROW(split_isomorphism(four), AlgebraError);
  const Field ft = parse_field("gf2(t)");
  EXPECT_THROW(split_isomorphism(quaternion(ft.parse("t"), ft.one())), AlgebraError);
  // Tensor of matrix algebras splits structurally even over a function field.
  EXPECT_EQ(split_isomorphism(tensor(matrix_algebra(ft, 2), matrix_algebra(ft, 2))).n, 4);
}

TEST(Algebras, RejectsNonAssociativeTables) {
  const AlgPtr q = quaternion(gf2().one(), gf2().one());
  std::vector<SparseVec> table;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) table.push_back(q->basis_product(i, j));
  table[2 * 4 + 3] = {{0, gf2().one()}};  // v w = 1 breaks associativity
  EXPECT_THROW(Alg(gf2(), q->labels(), table, q->one(), q->trd_functional(), Provenance{}), AlgebraError);
}
