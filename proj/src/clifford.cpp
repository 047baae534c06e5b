#include "cliffpair/clifford.hpp"

#include <algorithm>

namespace cliffpair {

namespace {

using Term = std::pair<int, Fe>;

// Product of two local codes in the pair algebra <e, e'>: e^2 = a, e'^2 = b, e e' + e' e = 1.
int local_product(int x, int y, const Fe& a, const Fe& b, const Fe& one, Term out[2]) {
  if (x == 0) return out[0] = {y, one}, 1;
  if (y == 0) return out[0] = {x, one}, 1;
  switch (x * 4 + y) {
    case 1 * 4 + 1: return out[0] = {0, a}, 1;
    case 1 * 4 + 2: return out[0] = {3, one}, 1;
    case 1 * 4 + 3: return out[0] = {2, a}, 1;
    case 2 * 4 + 1: return out[0] = {3, one}, out[1] = {0, one}, 2;
    case 2 * 4 + 2: return out[0] = {0, b}, 1;
    case 2 * 4 + 3: return out[0] = {1, b}, out[1] = {2, one}, 2;
    case 3 * 4 + 1: return out[0] = {2, a}, out[1] = {1, one}, 2;
    case 3 * 4 + 2: return out[0] = {1, b}, 1;
    default: return out[0] = {0, a * b}, out[1] = {3, one}, 2;
  }
}

Vec unit_vector(Field f, int n, int k) {
  Vec v = Vec::Constant(n, f.zero());
  v[k] = f.one();
  return v;
}

Vec flatten(const Mat& m) {
  Vec v(m.size());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) v[i * m.cols() + j] = m(i, j);
  return v;
}

Mat unflatten(const Vec& v, int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = v[i * n + j];
  return m;
}

AlgPtr pair_algebra(Field f, const Fe& a, const Fe& b) {
  std::vector<SparseVec> t(16);
  Term terms[2];
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y) {
      const int n = local_product(x, y, a, b, f.one(), terms);
      SparseVec s(terms, terms + n);
      std::sort(s.begin(), s.end(), [](const Term& l, const Term& r) { return l.first < r.first; });
      t[static_cast<std::size_t>(x * 4 + y)] = s;
    }
  RowVec trd = RowVec::Constant(4, f.zero());
  trd[3] = f.one();
  return std::make_shared<const Alg>(f, std::vector<std::string>{"1", "e", "e'", "ee'"}, t, unit_vector(f, 4, 0),
                                     trd, Provenance{});
}

// Left inverse of an injective J on its image: y = inv * z(rows).
struct LeftInverse {
  std::vector<int> rows;
  Mat inv;

  Vec apply(const Vec& z) const {
    Vec s(static_cast<Eigen::Index>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) s[static_cast<Eigen::Index>(i)] = z[rows[i]];
    return mat_vec(inv, s);
  }
};

LeftInverse left_inverse(const Mat& j) {
  LeftInverse li;
  li.rows = rref(Mat(j.transpose())).pivots;
  if (static_cast<Eigen::Index>(li.rows.size()) != j.cols()) throw AlgebraError("embedding is not injective");
  Mat sub(j.cols(), j.cols());
  for (std::size_t i = 0; i < li.rows.size(); ++i) sub.row(static_cast<Eigen::Index>(i)) = j.row(li.rows[i]);
  li.inv = inverse_or_throw(sub, "embedding minor");
  return li;
}

}  // namespace

// ---------------------------------------------------------------- engine

CliffEngine::CliffEngine(const QForm& q) : q_(q), m_(q.half_dim()) {
  if (m_ < 1) throw AlgebraError("Clifford algebra needs a nonzero form");
  if (m_ > 6) throw AlgebraError("Clifford algebra: dimension above 12 is out of range");
  s_ = q_.symplectic_matrix();
  sinv_ = inverse_or_throw(s_, "symplectic basis");
  for (int i = 0; i < m_; ++i) {
    a_.push_back(q_.value(Vec(s_.col(2 * i))));
    b_.push_back(q_.value(Vec(s_.col(2 * i + 1))));
  }
}

bool CliffEngine::even(int mono) {
  int odd = 0;
  for (; mono != 0; mono >>= 2) {
    const int c = mono & 3;
    if (c == 1 || c == 2) ++odd;
  }
  return odd % 2 == 0;
}

std::string CliffEngine::label(int mono) const {
  std::string out;
  for (int i = 0; i < m_; ++i) {
    const int c = code(mono, i, m_);
    const std::string k = std::to_string(i + 1);
    if (c & 1) out += "e" + k;
    if (c & 2) out += "e" + k + "'";
  }
  return out.empty() ? "1" : out;
}

SparseVec CliffEngine::monomial_product(int x, int y) const {
  SparseVec acc{{0, field().one()}};
  Term terms[2];
  for (int i = 0; i < m_; ++i) {
    const int n = local_product(code(x, i, m_), code(y, i, m_), a_[static_cast<std::size_t>(i)],
                                b_[static_cast<std::size_t>(i)], field().one(), terms);
    SparseVec next;
    for (const auto& [idx, c] : acc)
      for (int t = 0; t < n; ++t) {
        const Fe v = c * terms[t].second;
        if (!v.is_zero()) next.emplace_back(idx * 4 + terms[t].first, v);
      }
    acc.swap(next);
  }
  std::sort(acc.begin(), acc.end(), [](const Term& l, const Term& r) { return l.first < r.first; });
  return acc;
}

Vec CliffEngine::mul(const Vec& x, const Vec& y) const {
  const int d = full_dim();
  std::vector<int> xs, ys;
  for (int i = 0; i < d; ++i) {
    if (!x[i].is_zero()) xs.push_back(i);
    if (!y[i].is_zero()) ys.push_back(i);
  }
  Vec out = Vec::Constant(d, field().zero());
  for (int i : xs)
    for (int j : ys) {
      const Fe c = x[i] * y[j];
      for (const auto& [t, s] : monomial_product(i, j)) out[t] += c * s;
    }
  return out;
}

Vec CliffEngine::generator(int k) const {
  const int pair = k / 2, c = 1 + k % 2;
  return unit_vector(field(), full_dim(), c << (2 * (m_ - 1 - pair)));
}

Vec CliffEngine::vector(const Vec& v) const {
  const Vec c = mat_vec(sinv_, v);
  Vec out = Vec::Constant(full_dim(), field().zero());
  for (int k = 0; k < 2 * m_; ++k) out += c[k] * generator(k);
  return out;
}

Vec CliffEngine::one() const { return unit_vector(field(), full_dim(), 0); }

Mat CliffEngine::reverse_matrix() const {
  const int d = full_dim();
  Mat r = Mat::Constant(d, d, field().zero());
  for (int x = 0; x < d; ++x) {
    // e e' -> e' e = e e' + 1 in every pair, other codes fixed.
    std::vector<int> acc{0};
    for (int i = 0; i < m_; ++i) {
      const int c = code(x, i, m_);
      std::vector<int> next;
      for (int idx : acc) {
        next.push_back(idx * 4 + c);
        if (c == 3) next.push_back(idx * 4);
      }
      acc.swap(next);
    }
    for (int idx : acc) r(idx, x) += field().one();
  }
  return r;
}

Vec CliffEngine::reverse(const Vec& x) const { return mat_vec(reverse_matrix(), x); }

// ---------------------------------------------------------------- Cliff

Cliff::Cliff(const QForm& q, Parity parity) : eng_(q), parity_(parity) {
  const int fd = eng_.full_dim(), m = eng_.m();
  const Field f = eng_.field();
  pos_.assign(static_cast<std::size_t>(fd), -1);
  for (int x = 0; x < fd; ++x)
    if (parity == Parity::full || CliffEngine::even(x)) {
      pos_[static_cast<std::size_t>(x)] = static_cast<int>(index_.size());
      index_.push_back(x);
    }
  const int d = static_cast<int>(index_.size());
  std::vector<std::string> labels;
  for (int x : index_) labels.push_back(eng_.label(x));
  std::vector<SparseVec> table(static_cast<std::size_t>(d) * static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      SparseVec s;
      for (const auto& [t, c] : eng_.monomial_product(index_[static_cast<std::size_t>(i)], index_[static_cast<std::size_t>(j)]))
        s.emplace_back(pos_[static_cast<std::size_t>(t)], c);
      table[static_cast<std::size_t>(i * d + j)] = std::move(s);
    }
  const Vec unit = unit_vector(f, d, 0);
  RowVec trd = RowVec::Constant(d, f.zero());
  Provenance prov;
  if (parity == Parity::full) {
    // Trd is the product of the pair traces, i.e. the coordinate on prod e_i e_i'.
    trd[pos_[static_cast<std::size_t>(fd - 1)]] = f.one();
    prov.kind = AlgKind::clifford_full;
    if (m >= 2) {
      std::vector<AlgPtr> locals;
      for (int i = 0; i + 1 < m; ++i) locals.push_back(pair_algebra(f, eng_.a(i), eng_.b(i)));
      prov.factors = {tensor_all(locals), pair_algebra(f, eng_.a(m - 1), eng_.b(m - 1))};
    }
  } else {
    // Trd = T_{F[xi]/F} o Trd over the product basis (prod of quaternion basis) x {1, xi};
    // it is the coordinate on (u_1 ... u_{m-1}) xi.
    prov.kind = AlgKind::clifford_even;
    std::vector<Vec> us, vs;
    Vec xi_full = Vec::Constant(fd, f.zero());
    for (int i = 0; i < m; ++i) {
      const Vec u = eng_.mul(eng_.generator(2 * i), eng_.generator(2 * i + 1));
      xi_full += u;
      if (i + 1 < m) {
        us.push_back(u);
        vs.push_back(eng_.mul(eng_.generator(2 * i), eng_.generator(2 * (m - 1))));
      }
    }
    std::vector<Vec> elems{eng_.one()};
    for (int i = 0; i + 1 < m; ++i) {
      const Vec& u = us[static_cast<std::size_t>(i)];
      const Vec& v = vs[static_cast<std::size_t>(i)];
      const Vec q4[4] = {eng_.one(), u, v, eng_.mul(u, v)};
      std::vector<Vec> next;
      for (const Vec& e : elems)
        for (const Vec& g : q4) next.push_back(eng_.mul(e, g));
      elems.swap(next);
    }
    Mat basis(d, d);
    int col = 0;
    for (const Vec& e : elems) {
      for (const Vec& z : {eng_.one(), xi_full}) {
        const Vec p = eng_.mul(e, z);
        for (int k = 0; k < d; ++k) basis(k, col) = p[index_[static_cast<std::size_t>(k)]];
        ++col;
      }
    }
    // Target: all factors u (code 1 in each base-4 digit), times xi.
    int target = 0;
    for (int i = 0; i + 1 < m; ++i) target = target * 4 + 1;
    target = target * 2 + 1;
    const auto t = solve(Mat(basis.transpose()), unit_vector(f, d, target));
    if (!t) throw AlgebraError("even Clifford product basis is degenerate");
    trd = t->transpose();
  }
  alg_ = std::make_shared<const Alg>(f, std::move(labels), std::move(table), unit, trd, prov);

  const Mat rev = eng_.reverse_matrix();
  Mat s(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) s(i, j) = rev(index_[static_cast<std::size_t>(i)], index_[static_cast<std::size_t>(j)]);
  inv_ = Inv(alg_, s);

  if (parity == Parity::even) {
    const int n = 2 * m;
    const Mat b = form().polar();
    const Mat w = mat_mul(inverse_or_throw(b, "polar form"), Mat(eng_.symplectic_inverse().transpose()));
    const Mat& sinv = eng_.symplectic_inverse();
    std::vector<Vec> pp(static_cast<std::size_t>(n * n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) pp[static_cast<std::size_t>(i * n + j)] = from_full(eng_.mul(eng_.generator(i), eng_.generator(j)));
    cmap_ = Mat::Constant(d, n * n, f.zero());
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l)
        for (int i = 0; i < n; ++i) {
          if (sinv(i, k).is_zero()) continue;
          for (int j = 0; j < n; ++j) {
            const Fe c = sinv(i, k) * w(l, j);
            if (!c.is_zero()) cmap_.col(k * n + l) += c * pp[static_cast<std::size_t>(i * n + j)];
          }
        }
  }
}

Vec Cliff::from_full(const Vec& x) const {
  Vec out = Vec::Constant(dim(), field().zero());
  for (int t = 0; t < eng_.full_dim(); ++t) {
    if (x[t].is_zero()) continue;
    const int p = pos_[static_cast<std::size_t>(t)];
    if (p < 0) throw AlgebraError("element is not in the even Clifford algebra");
    out[p] = x[t];
  }
  return out;
}

Vec Cliff::to_full(const Vec& x) const {
  Vec out = Vec::Constant(eng_.full_dim(), field().zero());
  for (int k = 0; k < dim(); ++k) out[index_[static_cast<std::size_t>(k)]] = x[k];
  return out;
}

Vec Cliff::product(const Vec& v, const Vec& w) const { return from_full(eng_.mul(eng_.vector(v), eng_.vector(w))); }

Vec Cliff::xi() const {
  Vec x = Vec::Constant(eng_.full_dim(), field().zero());
  for (int i = 0; i < m(); ++i) x += eng_.mul(eng_.generator(2 * i), eng_.generator(2 * i + 1));
  return from_full(x);
}

const Mat& Cliff::canonical_map_matrix() const {
  if (parity_ != Parity::even) throw AlgebraError("the canonical map lands in the even Clifford algebra");
  return cmap_;
}

Vec Cliff::canonical_map(const Mat& x) const {
  const int n = 2 * m();
  if (x.rows() != n || x.cols() != n) throw AlgebraError("canonical_map: endomorphism of the wrong size");
  return mat_vec(canonical_map_matrix(), flatten(x));
}

// ---------------------------------------------------------------- semi-traces

Mat standard_lambda(const Cliff& c) {
  const Mat& s = c.engine().symplectic_matrix();
  return rank_one(Vec(s.col(0)), Vec(s.col(1)), c.form().polar());
}

SemiTr canonical_semitrace(const Cliff& c, const Mat& lambda) {
  if (c.parity() != Parity::even) throw AlgebraError("canonical semi-trace lives on the even Clifford algebra");
  if (c.m() % 2 != 0 || c.m() < 4) throw AlgebraError("canonical semi-trace needs degree 2m >= 8 with m even");
  if (!(lambda.trace() + c.field().zero()).is_one()) throw AlgebraError("lambda must have reduced trace 1");
  return SemiTr(c.involution(), c.canonical_map(lambda));
}

ImageSubspaces image_subspaces(const Cliff& c) {
  if (c.m() < 3) throw AlgebraError("image_subspaces needs degree at least 6");
  const Mat& cm = c.canonical_map_matrix();
  const SymmetrySubspaces ss = symmetry_subspaces(c.involution());
  ImageSubspaces out;
  out.ca = column_space(cm);
  out.ca_skew = subspace_intersect(out.ca, ss.skew);
  out.ca_alt = subspace_intersect(out.ca, ss.alt);
  return out;
}

// ---------------------------------------------------------------- decompositions

EvenDecomposition decompose_even(const Cliff& c) {
  if (c.parity() != Parity::even) throw AlgebraError("decompose_even needs the even Clifford algebra");
  const int m = c.m();
  if (m < 2) throw AlgebraError("decompose_even needs m >= 2");
  const CliffEngine& eng = c.engine();
  EvenDecomposition d;
  std::vector<AlgPtr> qs;
  std::vector<std::vector<Vec>> images;  // full coordinates of (1,u,v,w) per factor
  for (int i = 0; i + 1 < m; ++i) {
    const Vec u = eng.mul(eng.generator(2 * i), eng.generator(2 * i + 1));
    const Vec v = eng.mul(eng.generator(2 * i), eng.generator(2 * (m - 1)));
    d.u.push_back(c.from_full(u));
    d.v.push_back(c.from_full(v));
    d.params.emplace_back(eng.a(i) * eng.b(i), eng.a(i) * eng.a(m - 1));
    qs.push_back(quaternion(d.params.back().first, d.params.back().second));
    images.push_back({eng.one(), u, v, eng.mul(u, v)});
  }
  d.xi = c.xi();
  d.model = tensor_all(qs);
  const int dm = d.model->dim();
  d.iota = Mat(c.dim(), dm);
  for (int k = 0; k < dm; ++k) {
    Vec x = eng.one();
    int rest = k;
    std::vector<int> digits(static_cast<std::size_t>(m - 1));
    for (int i = m - 2; i >= 0; --i, rest /= 4) digits[static_cast<std::size_t>(i)] = rest % 4;
    for (int i = 0; i + 1 < m; ++i) x = eng.mul(x, images[static_cast<std::size_t>(i)][static_cast<std::size_t>(digits[static_cast<std::size_t>(i)])]);
    d.iota.col(k) = c.from_full(x);
  }
  return d;
}

FullDecomposition decompose_full(const Cliff& c) {
  if (c.parity() != Parity::full) throw AlgebraError("decompose_full needs the full Clifford algebra");
  const CliffEngine& eng = c.engine();
  const Field f = c.field();
  std::vector<AlgPtr> qs;
  Mat iota = Mat::Constant(1, 1, f.one());
  for (int i = 0; i < c.m(); ++i) {
    const Fe a = eng.a(i), b = eng.b(i);
    qs.push_back(quaternion(a * b, a));
    // (1, u, v, w) -> (1, e e', e, e e' e = a e' + e) in local codes.
    Mat l = Mat::Constant(4, 4, f.zero());
    l(0, 0) = f.one();
    l(3, 1) = f.one();
    l(1, 2) = f.one();
    l(2, 3) = a;
    l(1, 3) = f.one();
    iota = kron(iota, l);
  }
  return FullDecomposition{tensor_all(qs), iota};
}

// ---------------------------------------------------------------- components

Components split_components(const Cliff& c, const Mat& lambda_in) {
  if (c.parity() != Parity::even) throw AlgebraError("split_components needs the even Clifford algebra");
  if (c.m() % 2 != 0 || c.m() < 4) throw AlgebraError("split_components needs degree 2m >= 8 with m even");
  const Field f = c.field();
  const Alg& a = *c.alg();
  const int n = 2 * c.m();
  const Mat lambda = lambda_in.size() == 0 ? standard_lambda(c) : lambda_in;
  const QPair src = adjoint_pair(c.form());
  Components out;
  out.centre_gen = c.canonical_map(unflatten(src.f.ell(), n));
  const Vec sq = a.mul(out.centre_gen, out.centre_gen) + out.centre_gen;
  out.delta = sq[0];
  if (sq != out.delta * a.one()) throw AlgebraError("c(l)^2 + c(l) is not a scalar");
  std::optional<Fe> root;
  if (f->is_finite()) {
    root = artin_schreier_solve(out.delta);
  } else if (out.delta.is_zero()) {
    root = f.zero();
  }
  if (!root) {
    out.split = false;
    out.report = f->is_finite() ? "centre is a field" : "centre undecided over an infinite field";
    return out;
  }
  out.split = true;
  out.report = "split";
  out.u = *root;
  out.e_plus = out.centre_gen + out.u * a.one();
  out.e_minus = out.e_plus + a.one();

  const EvenDecomposition dec = decompose_even(c);
  out.model = dec.model;
  const Vec cl = c.canonical_map(lambda);
  const Mat& sigma = c.involution().matrix();
  auto component = [&](const Vec& e, Mat& j) {
    j = Mat(c.dim(), dec.iota.cols());
    for (Eigen::Index k = 0; k < dec.iota.cols(); ++k) j.col(k) = a.mul(Vec(dec.iota.col(k)), e);
    const LeftInverse li = left_inverse(j);
    const Mat sj = mat_mul(sigma, j);
    Mat s(j.cols(), j.cols());
    for (Eigen::Index k = 0; k < j.cols(); ++k) s.col(k) = li.apply(Vec(sj.col(k)));
    if (mat_mul(j, s) != sj) throw AlgebraError("canonical involution does not preserve a component");
    const Vec target = a.mul(cl, e);
    const Vec ell = li.apply(target);
    if (mat_vec(j, ell) != target) throw AlgebraError("c(lambda) e is not in the component");
    return make_pair(Inv(dec.model, s), ell);
  };
  out.plus = component(out.e_plus, out.j_plus);
  out.minus = component(out.e_minus, out.j_minus);
  return out;
}

Components split_components(const QPair& p) {
  const Cliff c(recover_form(p), Parity::even);
  return split_components(c);
}

// ---------------------------------------------------------------- automorphisms

std::optional<Fe> similitude_multiplier(const QForm& q, const Mat& g) {
  const int n = q.dim();
  if (g.rows() != n || g.cols() != n) return std::nullopt;
  if (!inverse(g)) return std::nullopt;
  const Mat b = q.polar();
  const Mat gbg = mat_mul(mat_mul(Mat(g.transpose()), b), g);
  std::optional<Fe> mu;
  for (int i = 0; i < n && !mu; ++i)
    for (int j = 0; j < n && !mu; ++j)
      if (!b(i, j).is_zero()) mu = gbg(i, j) / b(i, j);
  if (!mu || mu->is_zero()) return std::nullopt;
  if (gbg != Mat(*mu * b)) return std::nullopt;
  for (int i = 0; i < n; ++i) {
    const Vec e = unit_vector(q.field(), n, i);
    if (q.value(mat_vec(g, e)) != *mu * q.value(e)) return std::nullopt;
  }
  return mu;
}

Vec image_of_xi(const CliffEngine& eng, const Mat& g, const Fe& mu) {
  const Mat gs = mat_mul(g, eng.symplectic_matrix());
  Vec x = Vec::Constant(eng.full_dim(), eng.field().zero());
  for (int i = 0; i < eng.m(); ++i) x += eng.mul(eng.vector(Vec(gs.col(2 * i))), eng.vector(Vec(gs.col(2 * i + 1))));
  return mu.inverse() * x;
}

Mat induced_automorphism(const Cliff& c, const Mat& g) {
  if (c.parity() != Parity::even) throw AlgebraError("induced_automorphism acts on the even Clifford algebra");
  const auto mu = similitude_multiplier(c.form(), g);
  if (!mu) throw AlgebraError("not a similitude of the form");
  const CliffEngine& eng = c.engine();
  const Mat gs = mat_mul(g, eng.symplectic_matrix());
  std::vector<Vec> img;
  for (int k = 0; k < 2 * c.m(); ++k) img.push_back(eng.vector(Vec(gs.col(k))));
  const Fe muinv = mu->inverse();
  Mat out(c.dim(), c.dim());
  for (int k = 0; k < c.dim(); ++k) {
    const int mono = c.monomial(k);
    std::vector<int> gens;
    for (int i = 0; i < c.m(); ++i) {
      const int cd = CliffEngine::code(mono, i, c.m());
      if (cd & 1) gens.push_back(2 * i);
      if (cd & 2) gens.push_back(2 * i + 1);
    }
    Vec x = eng.one();
    for (std::size_t t = 0; t < gens.size(); ++t) {
      x = eng.mul(x, img[static_cast<std::size_t>(gens[t])]);
      if (t % 2 == 1) x = muinv * x;
    }
    out.col(k) = c.from_full(x);
  }
  return out;
}

// ---------------------------------------------------------------- full algebra

SemiTr full_semitrace(const Cliff& c, const Vec& e, const Vec& e2) {
  if (c.parity() != Parity::full) throw AlgebraError("full_semitrace needs the full Clifford algebra");
  if (c.m() < 3) throw AlgebraError("full_semitrace needs dimension at least 6");
  if (!c.form().polar_value(e, e2).is_one()) throw AlgebraError("b(e, e') must be 1");
  const CliffEngine& eng = c.engine();
  return SemiTr(c.involution(), c.from_full(eng.mul(eng.vector(e), eng.vector(e2))));
}

}  // namespace cliffpair
