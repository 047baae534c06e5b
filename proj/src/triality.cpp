#include "cliffpair/triality.hpp"

#include <utility>

namespace cliffpair {

namespace {

Vec unit(Field f, int n, int k) {
  Vec v = Vec::Constant(n, f.zero());
  v[k] = f.one();
  return v;
}

Mat zeros(Field f, int r, int c) { return Mat::Constant(r, c, f.zero()); }

Mat identity(Field f, int n) {
  Mat m = zeros(f, n, n);
  for (int i = 0; i < n; ++i) m(i, i) = f.one();
  return m;
}

QForm form_from_values(Field f, const std::vector<Vec>& basis, auto&& n) {
  const int d = static_cast<int>(basis.size());
  Mat g = zeros(f, d, d);
  for (int i = 0; i < d; ++i) {
    g(i, i) = n(basis[static_cast<std::size_t>(i)]);
    for (int j = i + 1; j < d; ++j)
      g(i, j) = n(Vec(basis[static_cast<std::size_t>(i)] + basis[static_cast<std::size_t>(j)])) +
                n(basis[static_cast<std::size_t>(i)]) + n(basis[static_cast<std::size_t>(j)]);
  }
  return QForm(g, f);
}

Vec xi_full(const CliffEngine& eng) {
  Vec x = Vec::Constant(eng.full_dim(), eng.field().zero());
  for (int i = 0; i < eng.m(); ++i) x += eng.mul(eng.generator(2 * i), eng.generator(2 * i + 1));
  return x;
}

Vec flatten(const Mat& m) {
  Vec v(m.size());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) v[i * m.cols() + j] = m(i, j);
  return v;
}

Mat unflatten(const Vec& v, int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = v[i * n + j];
  return m;
}

}  // namespace

// ---------------------------------------------------------------- Oct

Oct::Oct(Field field, std::vector<std::string> labels, std::vector<Vec> table, Mat conj_matrix, QForm norm_form, std::string model)
    : field_(field), labels_(std::move(labels)), table_(std::move(table)), conj_(std::move(conj_matrix)),
      norm_(std::move(norm_form)), model_(std::move(model)) {
  if (table_.size() != 64 || labels_.size() != 8 || norm_.dim() != 8) throw AlgebraError("octonion table has the wrong size");
  // The unit is the element fixed under both x -> 1x and x -> x1; find it through x xbar on 1.
  std::optional<Vec> one;
  {
    // Solve sum_k c_k b_k b_j = b_j for all j.
    Mat sys = zeros(field_, 64, 8);
    Vec rhs = Vec::Constant(64, field_.zero());
    for (int j = 0; j < 8; ++j)
      for (int k = 0; k < 8; ++k)
        for (int r = 0; r < 8; ++r) sys(j * 8 + r, k) = table_[static_cast<std::size_t>(k * 8 + j)][r];
    for (int j = 0; j < 8; ++j) rhs[j * 8 + j] = field_.one();
    one = solve(sys, rhs);
  }
  if (!one) throw AlgebraError("octonion table has no left unit");
  one_ = *one;
  for (int j = 0; j < 8; ++j)
    if (mul(basis(j), one_) != basis(j)) throw AlgebraError("octonion table: unit law fails");
  for (int i = 0; i < 8; ++i) {
    const Vec bi = basis(i);
    if (mul(bi, conj(bi)) != norm(bi) * one_) throw AlgebraError("octonion table: x xbar != n(x)");
    for (int j = i + 1; j < 8; ++j) {
      const Vec s = bi + basis(j);
      if (mul(s, conj(s)) != norm(s) * one_) throw AlgebraError("octonion table: x xbar != n(x)");
    }
  }
  // Alternativity: the associator is alternating; in characteristic 2 check [x,x,z] = [z,x,x] = 0
  // and [x,y,z] + [y,x,z] = 0 on basis elements.
  auto assoc = [&](int x, int y, int z) {
    return Vec(mul(mul(basis(x), basis(y)), basis(z)) + mul(basis(x), mul(basis(y), basis(z))));
  };
  for (int x = 0; x < 8; ++x)
    for (int z = 0; z < 8; ++z) {
      if (!is_zero(assoc(x, x, z)) || !is_zero(assoc(z, x, x))) throw AlgebraError("octonion table is not alternative");
      for (int y = x + 1; y < 8; ++y)
        if (!is_zero(Vec(assoc(x, y, z) + assoc(y, x, z))) || !is_zero(Vec(assoc(z, x, y) + assoc(z, y, x))))
          throw AlgebraError("octonion table is not alternative");
    }
  eng_ = std::make_shared<const CliffEngine>(norm_);
}

Vec Oct::basis(int i) const { return unit(field_, 8, i); }

Vec Oct::mul(const Vec& x, const Vec& y) const {
  Vec out = Vec::Constant(8, field_.zero());
  for (int i = 0; i < 8; ++i) {
    if (x[i].is_zero()) continue;
    for (int j = 0; j < 8; ++j) {
      if (y[j].is_zero()) continue;
      out += (x[i] * y[j]) * table_[static_cast<std::size_t>(i * 8 + j)];
    }
  }
  return out;
}

Vec Oct::para(const Vec& x, const Vec& y) const { return mul(conj(x), conj(y)); }

Mat Oct::left_para(const Vec& x) const {
  Mat m(8, 8);
  for (int j = 0; j < 8; ++j) m.col(j) = para(x, basis(j));
  return m;
}

Mat Oct::right_para(const Vec& x) const {
  Mat m(8, 8);
  for (int j = 0; j < 8; ++j) m.col(j) = para(basis(j), x);
  return m;
}

Vec Oct::random_element(Rng& rng) const {
  Vec v(8);
  for (int i = 0; i < 8; ++i) v[i] = rng.element(field_);
  return v;
}

std::string Oct::element_str(const Vec& x) const {
  std::string out;
  for (int i = 0; i < 8; ++i) {
    if (x[i].is_zero()) continue;
    if (!out.empty()) out += " + ";
    const std::string& l = labels_[static_cast<std::size_t>(i)];
    if (x[i].is_one()) out += l;
    else if (l == "1") out += x[i].str();
    else out += "(" + x[i].str() + ")" + l;
  }
  return out.empty() ? "0" : out;
}

Oct cayley(const Fe& a, const Fe& b, const Fe& c) {
  if (b.is_zero() || c.is_zero()) throw AlgebraError("cayley: parameters b and c must be nonzero");
  const AlgPtr q = quaternion(a, b);
  const Field f = q->field();
  const Fe cc = c * f.one();
  const Mat qc = quaternion_conjugation(*q);
  auto qconj = [&](const Vec& x) { return mat_vec(qc, x); };
  auto split = [&](const Vec& x) { return std::pair<Vec, Vec>(x.head(4), x.tail(4)); };
  std::vector<Vec> table;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      const auto [p, qq] = split(unit(f, 8, i));
      const auto [r, s] = split(unit(f, 8, j));
      Vec out(8);
      out << Vec(q->mul(p, r) + cc * q->mul(qconj(s), qq)), Vec(q->mul(s, p) + q->mul(qq, qconj(r)));
      table.push_back(out);
    }
  Mat conj = zeros(f, 8, 8);
  conj.topLeftCorner(4, 4) = qc;
  conj.bottomRightCorner(4, 4) = identity(f, 4);  // conj(q l) = -q l
  std::vector<Vec> basis;
  for (int i = 0; i < 8; ++i) basis.push_back(unit(f, 8, i));
  const QForm n = form_from_values(f, basis, [&](const Vec& x) {
    const auto [p, qq] = split(x);
    return quaternion_nrd(*q, p) + cc * quaternion_nrd(*q, qq);
  });
  return Oct(f, {"1", "u", "v", "w", "l", "ul", "vl", "wl"}, std::move(table), conj, n,
             "cayley(" + a.str() + "," + b.str() + "," + c.str() + ")");
}

Oct zorn(Field f) {
  // x = (alpha, v; w, beta): alpha = x0, v = x1..x3, w = x4..x6, beta = x7.
  auto cross = [](const Vec& p, const Vec& q) {
    Vec r(3);
    r << p[1] * q[2] + p[2] * q[1], p[2] * q[0] + p[0] * q[2], p[0] * q[1] + p[1] * q[0];
    return r;
  };
  auto dot = [](const Vec& p, const Vec& q) { return p[0] * q[0] + p[1] * q[1] + p[2] * q[2]; };
  auto product = [&](const Vec& x, const Vec& y) {
    const Fe a = x[0], b = x[7], a2 = y[0], b2 = y[7];
    const Vec v = x.segment(1, 3), w = x.segment(4, 3), v2 = y.segment(1, 3), w2 = y.segment(4, 3);
    Vec out(8);
    out << a * a2 + dot(v, w2), Vec(a * v2 + b2 * v + cross(w, w2)), Vec(a2 * w + b * w2 + cross(v, v2)),
        b * b2 + dot(w, v2);
    return out;
  };
  std::vector<Vec> table;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) table.push_back(product(unit(f, 8, i), unit(f, 8, j)));
  Mat conj = identity(f, 8);
  conj(0, 0) = conj(7, 7) = f.zero();
  conj(0, 7) = conj(7, 0) = f.one();
  std::vector<Vec> basis;
  for (int i = 0; i < 8; ++i) basis.push_back(unit(f, 8, i));
  const QForm n = form_from_values(f, basis, [&](const Vec& x) { return x[0] * x[7] + dot(Vec(x.segment(1, 3)), Vec(x.segment(4, 3))); });
  return Oct(f, {"a", "v1", "v2", "v3", "w1", "w2", "w3", "b"}, std::move(table), conj, n, "zorn");
}

// ---------------------------------------------------------------- similitudes

Simil similitude(const Oct& o, const Mat& t) {
  const std::optional<Fe> mu = similitude_multiplier(o.norm_form(), t);
  if (!mu) throw AlgebraError("not a similitude of the norm form");
  const CliffEngine& eng = o.clifford();
  const Vec img = image_of_xi(eng, t, *mu), xi = xi_full(eng);
  bool proper;
  if (img == xi) proper = true;
  else if (img == Vec(xi + eng.one())) proper = false;
  else throw AlgebraError("similitude moves the centre generator outside {xi, xi + 1}");
  return Simil{t, *mu, proper};
}

Mat class_rep(const Mat& t) {
  for (int i = 0; i < t.rows(); ++i)
    for (int j = 0; j < t.cols(); ++j)
      if (!t(i, j).is_zero()) return Mat(t(i, j).inverse() * t);
  throw AlgebraError("class_rep of the zero matrix");
}

bool same_class(const Mat& s, const Mat& t) { return class_rep(s) == class_rep(t); }

Simil random_similitude(const Oct& o, Rng& rng, bool proper) {
  const Field f = o.field();
  const QForm& n = o.norm_form();
  Mat g = identity(f, 8);
  const int count = (proper ? 0 : 1) + 2 * static_cast<int>(rng.below(3));
  for (int k = 0; k < count; ++k) {
    Vec v;
    do v = o.random_element(rng);
    while (n.value(v).is_zero());
    const Mat tv = identity(f, 8) + Mat(n.value(v).inverse() * v * Mat(v.transpose() * n.polar()));
    g = mat_mul(tv, g);
  }
  Fe lambda;
  do lambda = rng.element(f);
  while (lambda.is_zero());
  return similitude(o, Mat(lambda * g));
}

// ---------------------------------------------------------------- psi_1

Mat psi1(const Oct& o, const Vec& x) {
  Mat m = zeros(o.field(), 16, 16);
  m.topRightCorner(8, 8) = o.left_para(x);
  m.bottomLeftCorner(8, 8) = o.right_para(x);
  return m;
}

EvenPsi psi1_even_iso(const Oct& o) {
  const Field f = o.field();
  EvenPsi out;
  out.c = std::make_shared<const Cliff>(o.norm_form(), Parity::even);
  const Cliff& c = *out.c;
  const CliffEngine& eng = c.engine();
  const Mat& s = eng.symplectic_matrix();
  std::vector<Mat> gens;
  for (int k = 0; k < 8; ++k) gens.push_back(psi1(o, Vec(s.col(k))));
  // Clifford relations for psi_1 on the generators: Psi_1 is then well defined.
  const Mat id16 = identity(f, 16);
  for (int k = 0; k < 8; ++k)
    for (int l = k; l < 8; ++l) {
      const Mat& gk = gens[static_cast<std::size_t>(k)];
      const Mat& gl = gens[static_cast<std::size_t>(l)];
      const Mat expect = k == l ? Mat(o.norm(Vec(s.col(k))) * id16) : Mat(o.polar(Vec(s.col(k)), Vec(s.col(l))) * id16);
      const Mat got = k == l ? mat_mul(gk, gk) : Mat(mat_mul(gk, gl) + mat_mul(gl, gk));
      if (got != expect) throw AlgebraError("psi_1 violates the Clifford relations");
    }
  const int d = c.dim(), m = eng.m();
  out.phi = zeros(f, 128, d);
  for (int k = 0; k < d; ++k) {
    const int mono = c.monomial(k);
    Mat acc = id16;
    for (int i = 0; i < m; ++i) {
      const int code = CliffEngine::code(mono, i, m);
      if (code & 1) acc = mat_mul(acc, gens[static_cast<std::size_t>(2 * i)]);
      if (code & 2) acc = mat_mul(acc, gens[static_cast<std::size_t>(2 * i + 1)]);
    }
    if (!is_zero(Mat(acc.topRightCorner(8, 8))) || !is_zero(Mat(acc.bottomLeftCorner(8, 8))))
      throw AlgebraError("psi_1 of an even element is not block diagonal");
    Vec col(128);
    col << flatten(acc.topLeftCorner(8, 8)), flatten(acc.bottomRightCorner(8, 8));
    out.phi.col(k) = col;
  }
  out.phi_inv = inverse_or_throw(out.phi, "Psi_1");
  out.ad_n = adjoint_pair(o.norm_form());
  out.target = direct_product(out.ad_n.alg, out.ad_n.alg);
  Mat sig = zeros(f, 128, 128);
  sig.topLeftCorner(64, 64) = out.ad_n.inv.matrix();
  sig.bottomRightCorner(64, 64) = out.ad_n.inv.matrix();
  out.target_inv = Inv(out.target, sig);
  Vec ell(128);
  ell << out.ad_n.f.ell(), out.ad_n.f.ell();
  out.target_f = SemiTr(out.target_inv, ell);
  // Psi_1 is multiplicative by construction; check the involution on every basis element.
  if (mat_mul(out.phi, c.involution().matrix()) != mat_mul(sig, out.phi))
    throw AlgebraError("Psi_1 does not intertwine the involutions");
  return out;
}

// ---------------------------------------------------------------- triality

namespace {

// Rows: for each basis x, s0 l_x + l_{t x} s2 (64 rows) and s2 r_x + mu^{-1} r_{t x} s0 (64 rows).
// Unknowns: s0 row-major (0..63), s2 row-major (64..127).
Mat triality_system(const Oct& o, const Simil& t) {
  const Field f = o.field();
  const Fe muinv = t.mu.inverse();
  Mat sys = zeros(f, 8 * 128, 128);
  for (int x = 0; x < 8; ++x) {
    const Vec bx = o.basis(x), tx = mat_vec(t.t, bx);
    const Mat lx = o.left_para(bx), ltx = o.left_para(tx), rx = o.right_para(bx), rtx = o.right_para(tx);
    const int base = x * 128;
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) {
        const int r1 = base + i * 8 + j, r2 = base + 64 + i * 8 + j;
        for (int k = 0; k < 8; ++k) {
          sys(r1, i * 8 + k) += lx(k, j);
          sys(r1, 64 + k * 8 + j) += ltx(i, k);
          sys(r2, 64 + i * 8 + k) += rx(k, j);
          sys(r2, k * 8 + j) += muinv * rtx(i, k);
        }
      }
  }
  return sys;
}

}  // namespace

int triality_nullity(const Oct& o, const Simil& t) { return kernel(triality_system(o, t)).dim(); }

TrialityPair triality_pair(const Oct& o, const Simil& t) {
  if (!t.proper) throw AlgebraError("triality_pair needs a proper similitude");
  const Subspace k = kernel(triality_system(o, t));
  if (k.dim() != 1) throw AlgebraError("triality system has solution space of dimension " + std::to_string(k.dim()));
  const Vec sol = k.vector(0);
  const Mat s0 = unflatten(Vec(sol.head(64)), 8), s2 = unflatten(Vec(sol.tail(64)), 8);
  if (!inverse(s0) || !inverse(s2)) throw AlgebraError("triality solution is not invertible");
  const Simil sim0 = similitude(o, s0);
  // Fix the (lambda^{-1}, lambda) ambiguity so that t- is a class representative.
  Fe lead;
  for (int i = 0; i < 64; ++i)
    if (!s2(i / 8, i % 8).is_zero()) {
      lead = s2(i / 8, i % 8);
      break;
    }
  const Mat plus = (lead * sim0.mu.inverse()) * s0;
  const Mat minus = lead.inverse() * s2;
  TrialityPair out{similitude(o, plus), similitude(o, minus)};
  if (!out.plus.proper || !out.minus.proper) throw AlgebraError("triality produced an improper similitude");
  if (!check_relations(o, t, out).ok()) throw AlgebraError("triality relations fail");
  return out;
}

RelationReport check_relations(const Oct& o, const Simil& t, const TrialityPair& p) {
  RelationReport r;
  const Mat &tp = p.plus.t, &tm = p.minus.t, &tt = t.t;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      const Vec x = o.basis(i), y = o.basis(j), xy = o.para(x, y);
      if (mat_vec(tp, xy) != p.plus.mu * o.para(mat_vec(tt, x), mat_vec(tm, y))) ++r.a;
      if (mat_vec(tt, xy) != t.mu * o.para(mat_vec(tm, x), mat_vec(tp, y))) ++r.b;
      if (mat_vec(tm, xy) != p.minus.mu * o.para(mat_vec(tp, x), mat_vec(tt, y))) ++r.c;
    }
  r.multiplier = (p.plus.mu * t.mu * p.minus.mu).is_one();
  return r;
}

Mat theta(const Oct& o, Sheet s, const Mat& t) {
  const Simil sim = similitude(o, t);
  if (!sim.proper) throw AlgebraError("theta needs a proper similitude");
  const TrialityPair p = triality_pair(o, sim);
  return class_rep(s == Sheet::plus ? p.plus.t : p.minus.t);
}

// ---------------------------------------------------------------- triples

Triple make_triple(const QPair& p) {
  if (p.degree() != 8) throw AlgebraError("trialitarian triples need degree 8");
  const WpClass d = discriminant(p);
  if (!d.decided()) throw AlgebraError("discriminant class is undecided over this field");
  if (*d.bit != 0) throw AlgebraError("nontrivial discriminant");
  Components comp = split_components(p);
  if (!comp.split) throw AlgebraError("Clifford centre is not split: " + comp.report);
  return Triple{p, comp.plus, comp.minus, std::move(comp)};
}

namespace {

bool match_unordered(const PairInvariants& x, const PairInvariants& y, const PairInvariants& p, const PairInvariants& q) {
  return (x == p && y == q) || (x == q && y == p);
}

}  // namespace

TripleReport verify_triple_permutation(const Triple& t) {
  TripleReport rep;
  const PairInvariants ia = pair_invariants(t.a), ib = pair_invariants(t.b), ic = pair_invariants(t.c);
  rep.lines.push_back("A: " + ia.str());
  rep.lines.push_back("B: " + ib.str());
  rep.lines.push_back("C: " + ic.str());
  auto slot = [&](const char* name, const QPair& p, const PairInvariants& x, const PairInvariants& y, const char* expect) {
    const Components comp = split_components(p);
    if (!comp.split) {
      rep.ok = false;
      rep.lines.push_back(std::string("C(") + name + "): centre not split (" + comp.report + ") FAIL");
      return;
    }
    const PairInvariants cp = pair_invariants(comp.plus), cm = pair_invariants(comp.minus);
    const bool ok = match_unordered(cp, cm, x, y);
    rep.ok = rep.ok && ok;
    rep.lines.push_back(std::string("C(") + name + ") = {" + cp.str() + "; " + cm.str() + "} vs " + expect + ": " +
                        (ok ? "ok" : "FAIL"));
  };
  slot("B", t.b, ic, ia, "{C, A}");
  slot("C", t.c, ia, ib, "{A, B}");
  if (t.a.alg->kind() == AlgKind::matrix || t.a.alg->field()->is_finite()) {
    const bool ok = ib == ic;
    rep.ok = rep.ok && ok;
    rep.lines.push_back(std::string("A split, B ~ C: ") + (ok ? "ok" : "FAIL"));
  }
  return rep;
}

}  // namespace cliffpair
