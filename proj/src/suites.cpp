#include "cliffpair/suites.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <sstream>
#include <thread>

#include "cliffpair/triality.hpp"

namespace cliffpair {

namespace {

// A case returns an empty string on success, otherwise a short description.
using CaseFn = std::function<std::string(Rng&, int)>;

struct Property {
  std::string name;
  int divisor;  // cases = ceil(n / divisor)
  CaseFn run;
};

struct Suite {
  std::string name;
  std::vector<Property> props;
};

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) h = (h ^ c) * 0x100000001b3ull;
  return h;
}

Field field_for(int i) { return i % 2 == 0 ? gf2() : gf4(); }

Mat identity(Field f, int n) { return Mat(Mat::Identity(n, n) + Mat::Constant(n, n, f.zero())); }

Vec flat_matrix(const Mat& m) {
  Vec v(m.size());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) v[i * m.cols() + j] = m(i, j);
  return v;
}

Vec random_vec(Rng& rng, Field f, int n) {
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = rng.element(f);
  return v;
}

Mat random_mat(Rng& rng, Field f, int r, int c) {
  Mat m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = rng.element(f);
  return m;
}

Mat random_invertible(Rng& rng, Field f, int n) {
  for (;;) {
    Mat m = random_mat(rng, f, n, n);
    if (inverse(m)) return m;
  }
}

Mat random_trace_one(Rng& rng, Field f, int n) {
  Mat l = random_mat(rng, f, n, n);
  l(0, 0) += l.trace() + f.one();
  return l;
}

QForm random_trivial_arf(Rng& rng, Field f, int m) {
  for (;;) {
    QForm q = random_form(rng, f, m);
    if (arf(q).bit == 0) return q;
  }
}

// H + (random form), in a random basis. The components of C_0 only exist when Arf is trivial.
QForm random_isotropic(Rng& rng, Field f, int m, bool trivial_arf = false) {
  const QForm rest = trivial_arf ? random_trivial_arf(rng, f, m - 1) : random_form(rng, f, m - 1);
  return orthogonal_sum(hyperbolic(f, 1), rest).transformed(random_invertible(rng, f, 2 * m));
}

std::pair<Vec, Vec> random_symplectic_pair(Rng& rng, const QForm& q) {
  for (;;) {
    const Vec e = random_vec(rng, q.field(), q.dim()), w = random_vec(rng, q.field(), q.dim());
    const Fe b = q.polar_value(e, w);
    if (!b.is_zero()) return {e, Vec(b.inverse() * w)};
  }
}

Inv random_quaternion_bar(Rng& rng, Field f) {
  const AlgPtr q = quaternion(rng.element(f), rng.nonzero(f));
  return Inv(q, quaternion_conjugation(*q));
}

Mat transvection(const QForm& q, const Vec& v) {
  const Mat row = v.transpose() * q.polar();
  return Mat(identity(q.field(), q.dim()) + Mat(q.value(v).inverse() * v * row));
}

Mat random_transvections(Rng& rng, const QForm& q, int count) {
  Mat g = identity(q.field(), q.dim());
  for (int k = 0; k < count; ++k) {
    Vec v;
    do v = random_vec(rng, q.field(), q.dim());
    while (q.value(v).is_zero());
    g = mat_mul(transvection(q, v), g);
  }
  return g;
}

std::vector<Inv> model_factors(const AlgPtr& model) {
  // Left fold ((Q1 x Q2) x Q3) x ... down to the quaternion factors.
  std::vector<AlgPtr> out;
  AlgPtr cur = model;
  while (cur->kind() == AlgKind::tensor) {
    out.push_back(cur->provenance().factors[1]);
    cur = cur->provenance().factors[0];
  }
  out.push_back(cur);
  std::reverse(out.begin(), out.end());
  std::vector<Inv> bars;
  for (const AlgPtr& q : out) bars.emplace_back(q, quaternion_conjugation(*q));
  return bars;
}

#define REQUIRE(cond, what) \
  do {                      \
    if (!(cond)) return what; \
  } while (0)

// ---------------------------------------------------------------- semitrace

std::string semitrace_axiom(Rng& rng, int i) {
  const Field f = field_for(i);
  const QForm q = random_form(rng, f, 1 + i % 4);
  const QPair p = adjoint_pair(q);
  p.f.check();
  for (int k = 0; k < 5; ++k) {
    const Vec v = random_vec(rng, f, q.dim());
    REQUIRE(p.f(flat_matrix(rank_one(v, v, q.polar()))) == q.value(v), "f(phi(v x v)) != q(v)");
  }
  return "";
}

std::string disc_equals_arf(Rng& rng, int i) {
  const QForm q = random_form(rng, field_for(i), 2 + i % 3);
  REQUIRE(discriminant(adjoint_pair(q)).bit == arf(q).bit && arf(q).decided(), "disc(Ad_q) != Arf(q)");
  return "";
}

std::string canonical_lambda(Rng& rng, int i) {
  const Field f = field_for(i);
  const Cliff c(random_form(rng, f, 4), Parity::even);
  const SemiTr s = canonical_semitrace(c, random_trace_one(rng, f, 8));
  REQUIRE(canonical_semitrace(c, random_trace_one(rng, f, 8)) == s, "semi-trace depends on lambda");
  REQUIRE(canonical_semitrace(c, standard_lambda(c)) == s, "semi-trace depends on lambda");
  return "";
}

std::string symplectic_pairs(Rng& rng, int i) {
  const Field f = field_for(i);
  const QForm q = random_form(rng, f, 4);
  const Cliff c(q, Parity::even);
  const SemiTr s = canonical_semitrace(c, standard_lambda(c));
  const auto [e, e2] = random_symplectic_pair(rng, q);
  REQUIRE(SemiTr(c.involution(), c.product(e, e2)) == s, "f_{e,e'} differs from the canonical semi-trace");
  REQUIRE(canonical_semitrace(c, rank_one(e, e2, q.polar())) == s, "c(phi(e x e')) gives another semi-trace");
  return "";
}

std::string canonical_otimes_case(Rng& rng, int i) {
  const Field f = field_for(i);
  const std::vector<Inv> bars{random_quaternion_bar(rng, f), random_quaternion_bar(rng, f),
                              random_quaternion_bar(rng, f)};
  const QPair p = canonical_otimes(bars);
  REQUIRE(canonical_otimes(bars, 0).f == p.f && canonical_otimes(bars, 1).f == p.f, "f_x depends on the carrier");
  // Vanishes on Sym x Sym x Sym.
  std::vector<Subspace> syms;
  for (const Inv& b : bars) syms.push_back(symmetry_subspaces(b).sym);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c) {
        const Mat x = kron(kron(Mat(syms[0].vector(a)), Mat(syms[1].vector(b))), Mat(syms[2].vector(c)));
        REQUIRE(p.f(Vec(x.col(0))).is_zero(), "f_x does not vanish on Sym x Sym x Sym");
      }
  // (Q, bar) x (Q, bar) ~ Ad_{Nrd_Q}.
  const Provenance& pr = bars[0].alg()->provenance();
  const QPair qq = canonical_otimes({bars[0], bars[0]});
  REQUIRE(pair_invariants(qq) == pair_invariants(adjoint_pair(quaternion_norm_form(pr.a, pr.b))),
          "Q x Q is not Ad of the norm form");
  return "";
}

// ---------------------------------------------------------------- clifford

std::string image_case(Rng& rng, int i) {
  const int m = 3 + i % 2;
  const Cliff c(random_form(rng, field_for(i / 2), m), Parity::even);
  const ImageSubspaces im = image_subspaces(c);
  REQUIRE(im.ca.dim() == 2 * m * m - m + 1, "dim c(A) wrong");
  REQUIRE(im.ca_skew.dim() == 2 * m * m - m, "dim c(A) cap Skew wrong");
  REQUIRE(im.ca_skew == im.ca_alt, "c(A) cap Skew != c(A) cap Alt");
  return "";
}

std::string decomposition_case(Rng& rng, int i) {
  const Field f = field_for(i);
  const int m = 2 + i % 3;
  const QForm q = random_form(rng, f, m);
  const Cliff c(q, Parity::even);
  const Alg& a = *c.alg();
  const EvenDecomposition d = decompose_even(c);
  const Vec one = a.one();
  for (int k = 0; k + 1 < m; ++k) {
    const auto idx = static_cast<std::size_t>(k);
    REQUIRE(a.mul(d.u[idx], Vec(one + d.u[idx])) == d.params[idx].first * one, "u(1+u) != a b");
    REQUIRE(a.mul(d.v[idx], d.v[idx]) == d.params[idx].second * one, "v^2 != a a_m");
    REQUIRE(a.mul(d.u[idx], d.v[idx]) == a.mul(d.v[idx], Vec(one + d.u[idx])), "uv != v(1+u)");
  }
  REQUIRE(a.mul(d.xi, d.xi) == Vec(d.xi + arf_value(q) * one), "xi^2 != xi + Arf");
  if (m == 4) {
    const SemiTr s = canonical_semitrace(c, standard_lambda(c));
    const std::vector<Inv> bars = model_factors(d.model);
    std::vector<Subspace> syms;
    for (const Inv& b : bars) syms.push_back(symmetry_subspaces(b).sym);
    for (int x = 0; x < 3; ++x)
      for (int y = 0; y < 3; ++y)
        for (int z = 0; z < 3; ++z) {
          const Mat t = kron(kron(Mat(syms[0].vector(x)), Mat(syms[1].vector(y))), Mat(syms[2].vector(z)));
          REQUIRE(s(mat_vec(d.iota, Vec(t.col(0)))).is_zero(), "semi-trace does not vanish on Sym x Sym x Sym");
        }
  }
  return "";
}

std::string pfister_case(Rng& rng, int i) {
  const Field f = field_for(i);
  const QForm pi = pfister_quad({rng.nonzero(f), rng.nonzero(f)}, rng.element(f));
  const Components comp = split_components(adjoint_pair(pi));
  REQUIRE(comp.split, "centre of C(Ad_pi) not split");
  REQUIRE(pair_invariants(comp.plus).form == invariants(pi), "C+ not similar to pi");
  REQUIRE(pair_invariants(comp.minus).form == invariants(pi), "C- not similar to pi");
  return "";
}

std::string isotropic_case(Rng& rng, int i) {
  const Components comp = split_components(Cliff(random_isotropic(rng, field_for(i), 4, true), Parity::even));
  REQUIRE(comp.split, "centre not split");
  REQUIRE(is_hyperbolic(comp.plus) && is_hyperbolic(comp.minus), "component not hyperbolic");
  return "";
}

std::string automorphism_case(Rng& rng, int i) {
  const Field f = field_for(i);
  const QForm q = random_form(rng, f, 4);
  const Cliff c(q, Parity::even);
  const int count = 1 + static_cast<int>(rng.below(4));
  const Mat g = Mat(rng.nonzero(f) * random_transvections(rng, q, count));
  const Mat ct = induced_automorphism(c, g);
  REQUIRE(mat_mul(ct, c.involution().matrix()) == mat_mul(c.involution().matrix(), ct), "C0(g) does not commute with sigma");
  const SemiTr s = canonical_semitrace(c, standard_lambda(c));
  REQUIRE(SemiTr(c.involution(), mat_vec(ct, s.ell())) == s, "C0(g) does not preserve the semi-trace");
  const Vec xi = mat_vec(ct, c.xi());
  REQUIRE(xi == (count % 2 == 0 ? c.xi() : Vec(c.xi() + c.alg()->one())), "Dickson invariant mismatch");
  return "";
}

// ---------------------------------------------------------------- triality

Oct random_cayley(Rng& rng, Field f) { return cayley(rng.element(f), rng.nonzero(f), rng.nonzero(f)); }

std::string composition_case(Rng& rng, int i) {
  const Oct o = random_cayley(rng, field_for(i));
  for (int k = 0; k < 10; ++k) {
    const Vec x = o.random_element(rng), y = o.random_element(rng);
    REQUIRE(o.norm(o.mul(x, y)) == o.norm(x) * o.norm(y), "n(xy) != n(x)n(y)");
    REQUIRE(o.para(x, o.para(y, x)) == o.norm(x) * y, "x*(y*x) != n(x) y");
    REQUIRE(o.para(o.para(x, y), x) == o.norm(x) * y, "(x*y)*x != n(x) y");
  }
  return "";
}

std::string triality_case(Rng& rng, int i) {
  const Field f = field_for(i);
  const Oct o = i % 4 < 2 ? cayley(f.zero(), f.one(), f.one()) : zorn(f);
  const Simil t = random_similitude(o, rng, true);
  REQUIRE(triality_nullity(o, t) == 1, "nullspace dimension != 1");
  const TrialityPair p = triality_pair(o, t);
  REQUIRE(check_relations(o, t, p).ok(), "relations (a)-(c) fail");
  return "";
}

std::string improper_case(Rng& rng, int i) {
  const Oct o = cayley(field_for(i).zero(), field_for(i).one(), field_for(i).one());
  const Simil t = random_similitude(o, rng, false);
  REQUIRE(!t.proper, "improper similitude reported proper");
  REQUIRE(triality_nullity(o, t) == 0, "improper similitude has solutions");
  return "";
}

std::string theta_case(Rng& rng, int i) {
  const Oct o = cayley(field_for(i).one(), field_for(i).one(), field_for(i).one());
  const Mat t = class_rep(random_similitude(o, rng, true).t);
  const Mat tp = theta(o, Sheet::plus, t);
  REQUIRE(theta(o, Sheet::plus, tp) == theta(o, Sheet::minus, t), "theta+^2 != theta-");
  REQUIRE(theta(o, Sheet::plus, theta(o, Sheet::plus, tp)) == t, "theta+^3 != id");
  REQUIRE(theta(o, Sheet::minus, tp) == t, "theta- theta+ != id");
  return "";
}

std::string psi_case(Rng& rng, int i) {
  const Oct o = random_cayley(rng, field_for(i));
  const EvenPsi ps = psi1_even_iso(o);
  const SemiTr can = canonical_semitrace(*ps.c, standard_lambda(*ps.c));
  REQUIRE(SemiTr(ps.target_inv, mat_vec(ps.phi, can.ell())) == ps.target_f, "Psi_1 does not transport the semi-trace");
  return "";
}

// ---------------------------------------------------------------- triples

std::string permutation_case(Rng& rng, int i) {
  const Triple t = make_triple(adjoint_pair(random_trivial_arf(rng, field_for(i), 4)));
  const TripleReport r = verify_triple_permutation(t);
  REQUIRE(r.ok, "permutation check failed");
  return "";
}

std::string totdecomp_case(Rng& rng, int i) {
  const Field f = field_for(i);
  std::vector<Inv> bars;
  std::vector<std::pair<Fe, Fe>> blocks;
  Fe sum = f.zero();
  for (int k = 0; k < 3; ++k) {
    const Fe a = rng.element(f), b = rng.nonzero(f);
    const AlgPtr q = quaternion(a, b);
    bars.emplace_back(q, quaternion_conjugation(*q));
    blocks.emplace_back(b, a / b);
    sum += a;
  }
  blocks.emplace_back(f.one(), sum);
  const QForm q = QForm::from_blocks(blocks);
  REQUIRE(arf(q).bit == 0, "Arf of the constructed form is not trivial");
  const Triple t = make_triple(adjoint_pair(q));
  const PairInvariants input = pair_invariants(canonical_otimes(bars));
  REQUIRE(pair_invariants(t.b) == input && pair_invariants(t.c) == input, "components differ from the input pair");
  return "";
}

std::string orthsum_case(Rng& rng, int i) {
  const Field f = field_for(i);
  std::vector<Inv> q;
  for (int k = 0; k < 4; ++k) q.push_back(random_quaternion_bar(rng, f));
  auto pr = [&](int a, int b) {
    return canonical_otimes({q[static_cast<std::size_t>(a)], q[static_cast<std::size_t>(b)]});
  };
  const QPair a = orthogonal_sum(pr(0, 1), pr(2, 3), rng.nonzero(f));
  REQUIRE(discriminant(a).bit == 0, "discriminant not trivial");
  const Triple t = make_triple(a);
  auto sum_form = [&](int x, int y, int z, int w) {
    return invariants(orthogonal_sum(recover_form(pr(x, y)), recover_form(pr(z, w))));
  };
  const FormInvariants plus = sum_form(0, 2, 1, 3), minus = sum_form(0, 3, 1, 2);
  const FormInvariants bf = pair_invariants(t.b).form, cf = pair_invariants(t.c).form;
  REQUIRE((bf == plus && cf == minus) || (bf == minus && cf == plus), "components do not match the orthogonal sums");
  return "";
}

// ---------------------------------------------------------------- appendix

std::string full_semitrace_case(Rng& rng, int i) {
  const QForm q = random_form(rng, field_for(i), 3);
  const Cliff c(q, Parity::full);
  const auto [e, e2] = random_symplectic_pair(rng, q);
  const auto [g, g2] = random_symplectic_pair(rng, q);
  const SemiTr s = full_semitrace(c, e, e2);
  REQUIRE(full_semitrace(c, g, g2) == s, "Trd(e e' x) depends on the symplectic pair");
  return "";
}

std::string full_decomposition_case(Rng& rng, int i) {
  const QForm q = random_form(rng, field_for(i), 3);
  const Cliff c(q, Parity::full);
  const FullDecomposition d = decompose_full(c);
  const QPair ot = canonical_otimes(model_factors(d.model));
  REQUIRE(mat_mul(d.iota, ot.inv.matrix()) == mat_mul(c.involution().matrix(), d.iota), "involutions differ");
  const Mat& s = c.engine().symplectic_matrix();
  REQUIRE(SemiTr(c.involution(), mat_vec(d.iota, ot.f.ell())) == full_semitrace(c, Vec(s.col(0)), Vec(s.col(1))),
          "f_x differs from Trd(e e' x)");
  return "";
}

std::string isotropic_full_case(Rng& rng, int i) {
  const Cliff c(random_isotropic(rng, field_for(i), 3), Parity::full);
  const Mat& s = c.engine().symplectic_matrix();
  REQUIRE(is_hyperbolic(make_pair(c.involution(), full_semitrace(c, Vec(s.col(0)), Vec(s.col(1))).ell())),
          "full Clifford pair not hyperbolic");
  return "";
}

#undef REQUIRE

const std::vector<Suite>& suites() {
  static const std::vector<Suite> all{
      {"semitrace",
       {{"adjoint_semitrace", 1, semitrace_axiom},
        {"disc_equals_arf", 1, disc_equals_arf},
        {"canonical_independent_of_lambda", 2, canonical_lambda},
        {"symplectic_pair_semitrace", 2, symplectic_pairs},
        {"canonical_otimes", 1, canonical_otimes_case}}},
      {"clifford",
       {{"image_subspaces", 1, image_case},
        {"even_decomposition", 1, decomposition_case},
        {"pfister_components", 2, pfister_case},
        {"isotropic_components", 2, isotropic_case},
        {"induced_automorphism", 2, automorphism_case}}},
      {"triality",
       {{"composition", 1, composition_case},
        {"triality_pair", 1, triality_case},
        {"improper_refused", 1, improper_case},
        {"theta_action", 2, theta_case},
        {"psi1_transport", 5, psi_case}}},
      {"triples",
       {{"permutation", 2, permutation_case},
        {"totally_decomposable", 2, totdecomp_case},
        {"orthogonal_sums", 2, orthsum_case}}},
      {"appendix",
       {{"full_semitrace", 1, full_semitrace_case},
        {"full_decomposition", 2, full_decomposition_case},
        {"isotropic_full", 1, isotropic_full_case}}},
  };
  return all;
}

PropertyResult run_property(const std::string& suite, const Property& p, std::uint64_t seed, int n) {
  PropertyResult r;
  r.suite = suite;
  r.name = p.name;
  r.cases = std::max(1, (n + p.divisor - 1) / p.divisor);
  const std::uint64_t pseed = derive_seed(seed, fnv1a(suite + "." + p.name));
  std::vector<std::string> out(static_cast<std::size_t>(r.cases));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < r.cases; i = next++) {
      Rng rng(derive_seed(pseed, static_cast<std::uint64_t>(i)));
      std::string res;
      try {
        res = p.run(rng, i);
      } catch (const std::exception& e) {
        res = std::string("exception: ") + e.what();
      }
      out[static_cast<std::size_t>(i)] = std::move(res);
    }
  };
  const int workers = std::min(worker_count(), r.cases);
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (int i = 0; i < r.cases; ++i) {
    const std::string& res = out[static_cast<std::size_t>(i)];
    if (res.empty()) ++r.passed;
    else if (r.first_failure.empty()) r.first_failure = "case " + std::to_string(i) + ": " + res;
  }
  return r;
}

}  // namespace

bool SuiteReport::ok() const {
  return std::all_of(properties.begin(), properties.end(), [](const PropertyResult& p) { return p.ok(); });
}

std::string SuiteReport::str(ReportFormat format) const {
  std::ostringstream os;
  int failed = 0;
  for (const PropertyResult& p : properties) {
    if (!p.ok()) ++failed;
    const char* status = p.ok() ? "pass" : "FAIL";
    if (format == ReportFormat::kv) {
      os << "suite=" << p.suite << " property=" << p.name << " cases=" << p.cases << " passed=" << p.passed
         << " status=" << (p.ok() ? "pass" : "fail");
      if (!p.ok()) os << " detail=\"" << p.first_failure << "\"";
      os << "\n";
    } else {
      os << std::left << std::setw(44) << (p.suite + "." + p.name) << std::right << std::setw(5) << p.passed << "/"
         << std::left << std::setw(5) << p.cases << status;
      if (!p.ok()) os << "  " << p.first_failure;
      os << "\n";
    }
  }
  if (format == ReportFormat::kv)
    os << "summary properties=" << properties.size() << " failed=" << failed << " status=" << (failed ? "fail" : "pass")
       << "\n";
  else
    os << properties.size() - static_cast<std::size_t>(failed) << "/" << properties.size() << " properties pass\n";
  return os.str();
}

std::vector<std::string> suite_names() {
  std::vector<std::string> out;
  for (const Suite& s : suites()) out.push_back(s.name);
  return out;
}

bool is_suite(const std::string& name) {
  if (name == "all") return true;
  for (const Suite& s : suites())
    if (s.name == name) return true;
  return false;
}

int worker_count() {
  if (const char* env = std::getenv("CLIFFPAIR_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

SuiteReport run_suite(const std::string& name, std::uint64_t seed, int n) {
  if (!is_suite(name)) throw AlgebraError("unknown suite: " + name);
  SuiteReport rep;
  for (const Suite& s : suites())
    if (name == "all" || name == s.name)
      for (const Property& p : s.props) rep.properties.push_back(run_property(s.name, p, seed, n));
  return rep;
}

}  // namespace cliffpair
