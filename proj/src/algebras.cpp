#include "cliffpair/algebras.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace cliffpair {

namespace {

// Dense accumulator for sparse sums; avoids re-zeroing the whole buffer.
class Accum {
 public:
  explicit Accum(int n) : v_(static_cast<std::size_t>(n)), hit_(static_cast<std::size_t>(n), false) {}
  void add(int i, const Fe& c) {
    if (!hit_[static_cast<std::size_t>(i)]) {
      hit_[static_cast<std::size_t>(i)] = true;
      touched_.push_back(i);
      v_[static_cast<std::size_t>(i)] = c;
    } else {
      v_[static_cast<std::size_t>(i)] += c;
    }
  }
  SparseVec take() {
    SparseVec out;
    std::sort(touched_.begin(), touched_.end());
    for (int i : touched_) {
      if (!v_[static_cast<std::size_t>(i)].is_zero()) out.emplace_back(i, v_[static_cast<std::size_t>(i)]);
      hit_[static_cast<std::size_t>(i)] = false;
    }
    touched_.clear();
    return out;
  }

 private:
  std::vector<Fe> v_;
  std::vector<bool> hit_;
  std::vector<int> touched_;
};

int isqrt_exact(int d) {
  int n = 0;
  while ((n + 1) * (n + 1) <= d) ++n;
  return n * n == d ? n : 0;
}

Vec promote(const Vec& v, Field f) {
  Vec out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out[i] = v[i] + f.zero();
  return out;
}

}  // namespace

Alg::Alg(Field field, std::vector<std::string> labels, std::vector<SparseVec> table, Vec unit, RowVec trd,
         Provenance prov)
    : field_(field), dim_(static_cast<int>(labels.size())), labels_(std::move(labels)), table_(std::move(table)),
      prov_(std::move(prov)) {
  if (!field_) throw AlgebraError("algebra needs a field");
  const auto n = static_cast<std::size_t>(dim_);
  if (table_.size() != n * n) throw AlgebraError("structure constant table has the wrong size");
  if (unit.size() != dim_ || trd.size() != dim_) throw AlgebraError("unit or trace functional has the wrong size");
  const Fe z = field_.zero();
  for (auto& sv : table_)
    for (auto& [idx, c] : sv) {
      if (idx < 0 || idx >= dim_) throw AlgebraError("structure constant index out of range");
      c = c + z;
    }
  unit_ = promote(unit, field_);
  trd_ = promote(Vec(trd.transpose()), field_).transpose();

  // Unit law.
  for (int i = 0; i < dim_; ++i) {
    const Vec bi = basis(i);
    if (mul(unit_, bi) != bi || mul(bi, unit_) != bi) throw AlgebraError("unit law fails on basis element " + labels_[i]);
  }
  // Associativity on basis triples.
  Accum left(dim_), right(dim_);
  auto check = [&](int i, int j, int k) {
    for (const auto& [t, c] : basis_product(i, j))
      for (const auto& [s, d] : basis_product(t, k)) left.add(s, c * d);
    for (const auto& [t, c] : basis_product(j, k))
      for (const auto& [s, d] : basis_product(i, t)) right.add(s, c * d);
    if (left.take() != right.take())
      throw AlgebraError("structure constants are not associative at (" + labels_[i] + "," + labels_[j] + "," +
                         labels_[k] + ")");
  };
  if (dim_ <= 64) {
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j)
        for (int k = 0; k < dim_; ++k) check(i, j, k);
  } else {
    Rng rng(0xa55ac1a7e5ull);
    for (int t = 0; t < 10000; ++t)
      check(static_cast<int>(rng.below(n)), static_cast<int>(rng.below(n)), static_cast<int>(rng.below(n)));
  }

  trace_form_.resize(dim_, dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) {
      Fe s = z;
      for (const auto& [t, c] : basis_product(i, j))
        if (!trd_[t].is_zero()) s += c * trd_[t];
      trace_form_(i, j) = s;
    }
}

int Alg::degree() const { return isqrt_exact(dim_); }

Vec Alg::basis(int i) const {
  Vec v = zero();
  v[i] = field_.one();
  return v;
}

Vec Alg::mul(const Vec& x, const Vec& y) const {
  if (x.size() != dim_ || y.size() != dim_) throw AlgebraError("element of the wrong dimension");
  std::vector<int> xs, ys;
  for (int i = 0; i < dim_; ++i) {
    if (!x[i].is_zero()) xs.push_back(i);
    if (!y[i].is_zero()) ys.push_back(i);
  }
  Vec out = zero();
  for (int i : xs)
    for (int j : ys) {
      const Fe c = x[i] * y[j];
      for (const auto& [t, s] : basis_product(i, j)) out[t] += c * s;
    }
  return out;
}

Mat Alg::left_mult(const Vec& x) const {
  Mat m = Mat::Constant(dim_, dim_, field_.zero());
  for (int i = 0; i < dim_; ++i) {
    if (x[i].is_zero()) continue;
    for (int j = 0; j < dim_; ++j)
      for (const auto& [t, s] : basis_product(i, j)) m(t, j) += x[i] * s;
  }
  return m;
}

Mat Alg::right_mult(const Vec& x) const {
  Mat m = Mat::Constant(dim_, dim_, field_.zero());
  for (int i = 0; i < dim_; ++i) {
    if (x[i].is_zero()) continue;
    for (int j = 0; j < dim_; ++j)
      for (const auto& [t, s] : basis_product(j, i)) m(t, j) += x[i] * s;
  }
  return m;
}

Fe Alg::trd(const Vec& x) const {
  Fe s = field_.zero();
  for (int i = 0; i < dim_; ++i)
    if (!x[i].is_zero() && !trd_[i].is_zero()) s += x[i] * trd_[i];
  return s;
}

std::string Alg::element_str(const Vec& x) const {
  std::string out;
  for (int i = 0; i < dim_; ++i) {
    if (x[i].is_zero()) continue;
    if (!out.empty()) out += " + ";
    std::string c = x[i].str();
    if (c.find('+') != std::string::npos) c = "(" + c + ")";
    if (labels_[i] == "1")
      out += c;
    else
      out += (x[i].is_one() ? std::string() : c + "*") + labels_[i];
  }
  return out.empty() ? "0" : out;
}

Vec Alg::random_element(Rng& rng) const {
  Vec v(dim_);
  for (int i = 0; i < dim_; ++i) v[i] = rng.element(field_);
  return v;
}

// ---------------------------------------------------------------- constructors

AlgPtr quaternion(const Fe& a_in, const Fe& b_in) {
  if (b_in.is_zero()) throw AlgebraError("quaternion parameter b must be nonzero");
  Field f = a_in.field() ? a_in.field() : b_in.field();
  if (!f) f = gf2();
  const Fe a = a_in + f.zero(), b = b_in + f.zero(), one = f.one();
  enum { E1, U, V, W };
  std::vector<SparseVec> t(16);
  auto set = [&](int i, int j, SparseVec s) { t[static_cast<std::size_t>(i * 4 + j)] = std::move(s); };
  for (int i = 0; i < 4; ++i) {
    set(E1, i, {{i, one}});
    set(i, E1, {{i, one}});
  }
  auto sv = [](std::initializer_list<std::pair<int, Fe>> l) {
    SparseVec s;
    for (auto& p : l)
      if (!p.second.is_zero()) s.push_back(p);
    return s;
  };
  set(U, U, sv({{E1, a}, {U, one}}));
  set(U, V, sv({{W, one}}));
  set(U, W, sv({{V, a}, {W, one}}));
  set(V, U, sv({{V, one}, {W, one}}));
  set(V, V, sv({{E1, b}}));
  set(V, W, sv({{E1, b}, {U, b}}));
  set(W, U, sv({{V, a}}));
  set(W, V, sv({{U, b}}));
  set(W, W, sv({{E1, a * b}}));
  Vec unit = Vec::Constant(4, f.zero());
  unit[0] = one;
  RowVec trd = RowVec::Constant(4, f.zero());
  trd[1] = one;
  Provenance p;
  p.kind = AlgKind::quaternion;
  p.a = a;
  p.b = b;
  return std::make_shared<const Alg>(f, std::vector<std::string>{"1", "u", "v", "w"}, std::move(t), unit, trd, p);
}

AlgPtr matrix_algebra(Field f, int n) {
  static std::mutex mu;
  static std::map<std::pair<const FieldCtx*, int>, AlgPtr> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({f.get(), n});
    if (it != cache.end()) return it->second;
  }
  if (n < 1) throw AlgebraError("matrix algebra degree must be positive");
  const int d = n * n;
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      labels.push_back(n < 10 ? "E" + std::to_string(i + 1) + std::to_string(j + 1)
                              : "E" + std::to_string(i + 1) + "," + std::to_string(j + 1));
  std::vector<SparseVec> t(static_cast<std::size_t>(d * d));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) t[static_cast<std::size_t>((i * n + j) * d + (j * n + l))] = {{i * n + l, f.one()}};
  Vec unit = Vec::Constant(d, f.zero());
  RowVec trd = RowVec::Constant(d, f.zero());
  for (int i = 0; i < n; ++i) {
    unit[i * n + i] = f.one();
    trd[i * n + i] = f.one();
  }
  Provenance p;
  p.kind = AlgKind::matrix;
  p.n = n;
  auto alg = std::make_shared<const Alg>(f, std::move(labels), std::move(t), unit, trd, p);
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(std::make_pair(f.get(), n), alg).first->second;
}

AlgPtr tensor(const AlgPtr& l, const AlgPtr& r) {
  if (l->field() != r->field()) throw AlgebraError("tensor product across different fields");
  const int dl = l->dim(), dr = r->dim(), d = dl * dr;
  std::vector<std::string> labels;
  for (int i = 0; i < dl; ++i)
    for (int j = 0; j < dr; ++j) {
      const std::string& a = l->labels()[static_cast<std::size_t>(i)];
      const std::string& b = r->labels()[static_cast<std::size_t>(j)];
      labels.push_back(a + "|" + b);
    }
  std::vector<SparseVec> t(static_cast<std::size_t>(d) * static_cast<std::size_t>(d));
  for (int i = 0; i < dl; ++i)
    for (int j = 0; j < dr; ++j)
      for (int k = 0; k < dl; ++k)
        for (int m = 0; m < dr; ++m) {
          SparseVec& s = t[static_cast<std::size_t>((i * dr + j) * d + (k * dr + m))];
          for (const auto& [p, c] : l->basis_product(i, k))
            for (const auto& [q, e] : r->basis_product(j, m)) s.emplace_back(p * dr + q, c * e);
        }
  Vec unit(d);
  RowVec trd(d);
  for (int i = 0; i < dl; ++i)
    for (int j = 0; j < dr; ++j) {
      unit[i * dr + j] = l->one()[i] * r->one()[j];
      trd[i * dr + j] = l->trd_functional()[i] * r->trd_functional()[j];
    }
  Provenance p;
  p.kind = AlgKind::tensor;
  p.factors = {l, r};
  return std::make_shared<const Alg>(l->field(), std::move(labels), std::move(t), unit, trd, p);
}

AlgPtr tensor_all(const std::vector<AlgPtr>& factors) {
  if (factors.empty()) throw AlgebraError("empty tensor product");
  AlgPtr acc = factors[0];
  for (std::size_t i = 1; i < factors.size(); ++i) acc = tensor(acc, factors[i]);
  return acc;
}

AlgPtr direct_product(const AlgPtr& l, const AlgPtr& r) {
  if (l->field() != r->field()) throw AlgebraError("direct product across different fields");
  const int dl = l->dim(), d = dl + r->dim();
  std::vector<std::string> labels;
  for (const auto& s : l->labels()) labels.push_back("(" + s + ",0)");
  for (const auto& s : r->labels()) labels.push_back("(0," + s + ")");
  std::vector<SparseVec> t(static_cast<std::size_t>(d * d));
  for (int i = 0; i < dl; ++i)
    for (int j = 0; j < dl; ++j) t[static_cast<std::size_t>(i * d + j)] = l->basis_product(i, j);
  for (int i = 0; i < r->dim(); ++i)
    for (int j = 0; j < r->dim(); ++j) {
      SparseVec s = r->basis_product(i, j);
      for (auto& e : s) e.first += dl;
      t[static_cast<std::size_t>((i + dl) * d + (j + dl))] = std::move(s);
    }
  Vec unit(d);
  unit << l->one(), r->one();
  RowVec trd(d);
  trd << l->trd_functional(), r->trd_functional();
  Provenance p;
  p.kind = AlgKind::product;
  p.factors = {l, r};
  return std::make_shared<const Alg>(l->field(), std::move(labels), std::move(t), unit, trd, p);
}

Mat quaternion_conjugation(const Alg& q) {
  if (q.kind() != AlgKind::quaternion) throw AlgebraError("not a quaternion algebra");
  const Field f = q.field();
  Mat m = Mat::Identity(4, 4);
  m(0, 1) = f.one();  // u -> 1 + u
  return m + Mat::Constant(4, 4, f.zero());
}

Fe quaternion_nrd(const Alg& q, const Vec& x) {
  const Vec y = q.mul(x, mat_vec(quaternion_conjugation(q), x));
  for (int i = 1; i < 4; ++i)
    if (!y[i].is_zero()) throw AlgebraError("x times its conjugate is not central");
  return y[0];
}

Subspace centre(const Alg& a) {
  const int n = a.dim();
  Mat k = Mat::Identity(n, n) + Mat::Constant(n, n, a.field().zero());
  for (int i = 0; i < n && k.cols() > 1; ++i) {
    // Columns j of D: b_j b_i - b_i b_j.
    Mat d = Mat::Constant(n, n, a.field().zero());
    for (int j = 0; j < n; ++j) {
      for (const auto& [t, c] : a.basis_product(j, i)) d(t, j) += c;
      for (const auto& [t, c] : a.basis_product(i, j)) d(t, j) += c;
    }
    const Subspace z = kernel(mat_mul(d, k));
    k = mat_mul(k, Mat(z.basis().transpose()));
  }
  return column_space(k);
}

// ---------------------------------------------------------------- splitting

Mat SplitIso::apply(const Vec& x) const {
  const Vec flat = mat_vec(coords, x);
  Mat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = flat[i * n + j];
  return m;
}

Vec SplitIso::pull_back(const Mat& m) const {
  Vec flat(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) flat[i * n + j] = m(i, j);
  return mat_vec(inverse_coords, flat);
}

namespace {

Vec flatten(const Mat& m) {
  Vec v(m.size());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) v[i * m.cols() + j] = m(i, j);
  return v;
}

// Roots in F of a polynomial given lowest degree first.
std::vector<Fe> roots_in_field(Field f, const FePoly& p) {
  std::vector<Fe> out;
  for (std::uint32_t b = 0; b < f->size(); ++b) {
    const Fe x = f.from_bits(b);
    Fe s = f.zero();
    for (std::size_t i = p.size(); i-- > 0;) s = s * x + p[i];
    if (s.is_zero()) out.push_back(x);
  }
  return out;
}

SplitIso generic_split(const AlgPtr& ap) {
  const Alg& a = *ap;
  const Field f = a.field();
  if (!f->is_finite()) throw AlgebraError("split_isomorphism: generic splitting needs a finite field");
  const int n = a.degree();
  if (n == 0) throw AlgebraError("split_isomorphism: dimension is not a square, algebra is not central simple");
  const int d = a.dim();
  Rng rng(0x5111ab1eull);
  Vec e = a.one();
  for (;;) {
    std::vector<Vec> corner_gens;
    for (int k = 0; k < d; ++k) corner_gens.push_back(a.mul(a.mul(e, a.basis(k)), e));
    const Subspace corner = Subspace::span(corner_gens, d);
    if (corner.dim() == 1) break;
    // A zero divisor x - lambda e, lambda a root in F of the minimal polynomial of x in eAe.
    std::optional<Vec> zdiv;
    for (int attempt = 0; attempt < 256 && !zdiv; ++attempt) {
      Vec x = a.zero();
      for (int i = 0; i < corner.dim(); ++i) x += rng.element(f) * corner.vector(i);
      std::vector<Vec> powers{e};
      std::optional<Vec> rel;
      while (!rel && static_cast<int>(powers.size()) <= corner.dim()) {
        const Vec next = a.mul(powers.back(), x);
        Mat prev(d, static_cast<Eigen::Index>(powers.size()));
        for (std::size_t i = 0; i < powers.size(); ++i) prev.col(static_cast<Eigen::Index>(i)) = powers[i];
        rel = solve(prev, next);
        if (!rel) powers.push_back(next);
      }
      if (!rel) continue;
      // Minimal polynomial X^k - sum rel_i X^i, k = rel.size().
      FePoly mp(static_cast<std::size_t>(rel->size()) + 1);
      for (Eigen::Index i = 0; i < rel->size(); ++i) mp[static_cast<std::size_t>(i)] = (*rel)[i];
      mp.back() = f.one();
      if (mp.size() < 3) continue;  // x is a scalar multiple of e
      for (const Fe& lam : roots_in_field(f, mp)) {
        const Vec z = x + lam * e;
        if (!is_zero(z)) {
          zdiv = z;
          break;
        }
      }
    }
    if (!zdiv) throw AlgebraError("split_isomorphism: no zero divisor found within the retry cap");
    std::vector<Vec> lgens;
    for (int i = 0; i < corner.dim(); ++i) lgens.push_back(a.mul(corner.vector(i), *zdiv));
    const Subspace l = Subspace::span(lgens, d);
    if (l.dim() == 0 || l.dim() == corner.dim()) throw AlgebraError("split_isomorphism: algebra is not simple");
    // Right identity of the left ideal: f in L with l_i f = l_i for every basis l_i.
    const int k = l.dim();
    Mat sys(static_cast<Eigen::Index>(k) * d, k);
    Vec rhs(static_cast<Eigen::Index>(k) * d);
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) sys.block(static_cast<Eigen::Index>(i) * d, j, d, 1) = a.mul(l.vector(i), l.vector(j));
      rhs.segment(static_cast<Eigen::Index>(i) * d, d) = l.vector(i);
    }
    auto coeffs = solve(sys, rhs);
    if (!coeffs) throw AlgebraError("split_isomorphism: left ideal has no idempotent generator, algebra is not simple");
    Vec idem = a.zero();
    for (int j = 0; j < k; ++j) idem += (*coeffs)[j] * l.vector(j);
    if (a.mul(idem, idem) != idem) throw AlgebraError("split_isomorphism: idempotent check failed");
    e = idem;
  }
  std::vector<Vec> mgens;
  for (int k = 0; k < d; ++k) mgens.push_back(a.mul(a.basis(k), e));
  const Subspace m = Subspace::span(mgens, d);
  if (m.dim() != n) throw AlgebraError("split_isomorphism: simple module has the wrong dimension, algebra is not central simple");
  SplitIso iso;
  iso.n = n;
  iso.coords.resize(d, d);
  for (int k = 0; k < d; ++k) {
    Mat rep(n, n);
    for (int j = 0; j < n; ++j) {
      auto c = m.coordinates(a.mul(a.basis(k), m.vector(j)));
      if (!c) throw AlgebraError("split_isomorphism: module is not stable");
      rep.col(j) = *c;
    }
    iso.coords.col(k) = flatten(rep);
  }
  return iso;
}

SplitIso split_impl(const AlgPtr& a) {
  const Field f = a->field();
  switch (a->kind()) {
    case AlgKind::matrix: {
      SplitIso iso;
      iso.n = a->provenance().n;
      iso.coords = Mat::Identity(a->dim(), a->dim()) + Mat::Constant(a->dim(), a->dim(), f.zero());
      return iso;
    }
    case AlgKind::tensor:
    case AlgKind::clifford_full: {
      if (a->provenance().factors.size() != 2) return generic_split(a);
      const SplitIso l = split_impl(a->provenance().factors[0]);
      const SplitIso r = split_impl(a->provenance().factors[1]);
      const AlgPtr& la = a->provenance().factors[0];
      const AlgPtr& ra = a->provenance().factors[1];
      SplitIso iso;
      iso.n = l.n * r.n;
      iso.coords.resize(a->dim(), a->dim());
      for (int i = 0; i < la->dim(); ++i) {
        const Mat li = l.apply(la->basis(i));
        for (int j = 0; j < ra->dim(); ++j) iso.coords.col(i * ra->dim() + j) = flatten(kron(li, r.apply(ra->basis(j))));
      }
      return iso;
    }
    default:
      return generic_split(a);
  }
}

}  // namespace

void verify_split_iso(const Alg& a, const SplitIso& iso) {
  const int d = a.dim();
  std::vector<Mat> reps;
  for (int k = 0; k < d; ++k) reps.push_back(iso.apply(a.basis(k)));
  for (int k = 0; k < d; ++k) {
    if (a.trd(a.basis(k)) != reps[static_cast<std::size_t>(k)].trace())
      throw AlgebraError("split isomorphism does not carry Trd to the trace at " + a.labels()[static_cast<std::size_t>(k)]);
  }
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Mat lhs = Mat::Constant(iso.n, iso.n, a.field().zero());
      for (const auto& [t, c] : a.basis_product(i, j)) lhs += c * reps[static_cast<std::size_t>(t)];
      if (lhs != mat_mul(reps[static_cast<std::size_t>(i)], reps[static_cast<std::size_t>(j)]))
        throw AlgebraError("split isomorphism is not multiplicative");
    }
}

SplitIso split_isomorphism(const AlgPtr& a) {
  SplitIso iso = split_impl(a);
  auto inv = inverse(iso.coords);
  if (!inv) throw AlgebraError("split_isomorphism: representation is not bijective");
  iso.inverse_coords = *inv;
  iso.target = matrix_algebra(a->field(), iso.n);
  verify_split_iso(*a, iso);
  return iso;
}

FePoly reduced_char_poly(const SplitIso& iso, const Vec& x) { return char_poly(iso.apply(x)); }

Fe reduced_srd(const SplitIso& iso, const Vec& x) {
  if (iso.n < 2) throw AlgebraError("Srd needs degree at least 2");
  return reduced_char_poly(iso, x)[static_cast<std::size_t>(iso.n - 2)];
}

Fe reduced_srd(const AlgPtr& a, const Vec& x) { return reduced_srd(split_isomorphism(a), x); }

}  // namespace cliffpair
