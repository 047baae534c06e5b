#include "cliffpair/exactla.hpp"

#include <utility>

namespace cliffpair {

namespace {

const FieldCtx* ctx_of(const Fe* data, Eigen::Index n) {
  const FieldCtx* c = nullptr;
  for (Eigen::Index i = 0; i < n; ++i) {
    const FieldCtx* d = data[i].ctx();
    if (!d) continue;
    if (!c)
      c = d;
    else if (c != d)
      throw AlgebraError("matrix mixes elements of different fields");
  }
  return c;
}

bool raw_ok(const FieldCtx* c) { return !c || c->is_binary(); }

// Elimination kernels shared by the raw finite-field path and the generic path.
struct RawOps {
  using T = std::uint32_t;
  const FieldCtx* ctx;
  T zero() const { return 0; }
  bool nz(T a) const { return a != 0; }
  T add(T a, T b) const { return a ^ b; }
  T mul(T a, T b) const { return ctx ? ctx->mul(a, b) : (a & b); }
  T inv(T a) const { return ctx ? ctx->inv(a) : a; }
  bool one(T a) const { return a == 1; }
};

struct FeOps {
  using T = Fe;
  T zero() const { return Fe(0); }
  bool nz(const T& a) const { return !a.is_zero(); }
  T add(const T& a, const T& b) const { return a + b; }
  T mul(const T& a, const T& b) const { return a * b; }
  T inv(const T& a) const { return a.inverse(); }
  bool one(const T& a) const { return a.is_one(); }
};

// In-place reduced row echelon form on a row-major buffer; returns pivot columns.
template <class Ops>
std::vector<int> eliminate(const Ops& ops, std::vector<typename Ops::T>& a, int rows, int cols) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = -1;
    for (int i = r; i < rows; ++i)
      if (ops.nz(a[static_cast<std::size_t>(i) * cols + c])) {
        p = i;
        break;
      }
    if (p < 0) continue;
    auto row = [&](int i) { return a.begin() + static_cast<std::ptrdiff_t>(i) * cols; };
    if (p != r) std::swap_ranges(row(p), row(p) + cols, row(r));
    auto pr = row(r);
    if (!ops.one(pr[c])) {
      const auto iv = ops.inv(pr[c]);
      for (int j = c; j < cols; ++j) pr[j] = ops.mul(pr[j], iv);
    }
    for (int i = 0; i < rows; ++i) {
      if (i == r) continue;
      auto ri = row(i);
      if (!ops.nz(ri[c])) continue;
      const auto f = ri[c];
      for (int j = c; j < cols; ++j)
        if (ops.nz(pr[j])) ri[j] = ops.add(ri[j], ops.mul(f, pr[j]));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

Rref rref_impl(const Mat& m) {
  const int rows = static_cast<int>(m.rows()), cols = static_cast<int>(m.cols());
  const FieldCtx* c = ctx_of(m.data(), m.size());
  Rref out;
  if (raw_ok(c)) {
    std::vector<std::uint32_t> a(static_cast<std::size_t>(rows) * cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) a[static_cast<std::size_t>(i) * cols + j] = m(i, j).bits();
    out.pivots = eliminate(RawOps{c}, a, rows, cols);
    const int rk = static_cast<int>(out.pivots.size());
    out.rows.resize(rk, cols);
    for (int i = 0; i < rk; ++i)
      for (int j = 0; j < cols; ++j) out.rows(i, j) = make_fe(c, a[static_cast<std::size_t>(i) * cols + j]);
    return out;
  }
  std::vector<Fe> a(static_cast<std::size_t>(rows) * cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) a[static_cast<std::size_t>(i) * cols + j] = m(i, j);
  out.pivots = eliminate(FeOps{}, a, rows, cols);
  const int rk = static_cast<int>(out.pivots.size());
  out.rows.resize(rk, cols);
  for (int i = 0; i < rk; ++i)
    for (int j = 0; j < cols; ++j) out.rows(i, j) = a[static_cast<std::size_t>(i) * cols + j];
  return out;
}

}  // namespace

Field field_of(const Mat& a) { return Field(ctx_of(a.data(), a.size())); }
Field field_of(const Vec& v) { return Field(ctx_of(v.data(), v.size())); }

Fe make_fe(const FieldCtx* ctx, std::uint32_t bits) {
  if (!ctx) {
    if (bits > 1) throw AlgebraError("prime-field constant out of range");
    return Fe(static_cast<int>(bits));
  }
  return ctx->element(bits);
}

bool is_zero(const Mat& a) {
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (!a.data()[i].is_zero()) return false;
  return true;
}

bool is_zero(const Vec& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) return false;
  return true;
}

Mat mat_mul(const Mat& a, const Mat& b) {
  if (a.cols() != b.rows()) throw AlgebraError("matrix product dimension mismatch");
  const FieldCtx* ca = ctx_of(a.data(), a.size());
  const FieldCtx* cb = ctx_of(b.data(), b.size());
  if (ca && cb && ca != cb) throw AlgebraError("matrix product across different fields");
  const FieldCtx* c = ca ? ca : cb;
  const Eigen::Index n = a.rows(), k = a.cols(), m = b.cols();
  if (!raw_ok(c)) {
    Mat out(n, m);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < m; ++j) {
        Fe s(0);
        for (Eigen::Index l = 0; l < k; ++l)
          if (!a(i, l).is_zero() && !b(l, j).is_zero()) s += a(i, l) * b(l, j);
        out(i, j) = s;
      }
    return out;
  }
  const RawOps ops{c};
  std::vector<std::uint32_t> ra(static_cast<std::size_t>(n * k)), rb(static_cast<std::size_t>(k * m)),
      rc(static_cast<std::size_t>(n * m), 0);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index l = 0; l < k; ++l) ra[i * k + l] = a(i, l).bits();
  for (Eigen::Index l = 0; l < k; ++l)
    for (Eigen::Index j = 0; j < m; ++j) rb[l * m + j] = b(l, j).bits();
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index l = 0; l < k; ++l) {
      const std::uint32_t x = ra[i * k + l];
      if (!x) continue;
      for (Eigen::Index j = 0; j < m; ++j)
        if (rb[l * m + j]) rc[i * m + j] ^= ops.mul(x, rb[l * m + j]);
    }
  Mat out(n, m);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < m; ++j) out(i, j) = make_fe(c, rc[i * m + j]);
  return out;
}

Vec mat_vec(const Mat& a, const Vec& v) {
  Mat vm = v;
  return mat_mul(a, vm).col(0);
}

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index k = 0; k < b.rows(); ++k)
        for (Eigen::Index l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j).is_zero() ? Fe(0) : a(i, j) * b(k, l);
  return out;
}

Mat block_diag(const Mat& a, const Mat& b) {
  Mat out = Mat::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

Rref rref(const Mat& a) { return rref_impl(a); }

int rank(const Mat& a) { return static_cast<int>(rref_impl(a).pivots.size()); }

// ---------------------------------------------------------------- Subspace

Subspace::Subspace(int ambient) : ambient_(ambient), basis_(0, ambient) {}

Subspace Subspace::span(const Mat& rows) {
  Subspace s(static_cast<int>(rows.cols()));
  if (rows.rows() == 0) return s;
  Rref r = rref_impl(rows);
  s.basis_ = std::move(r.rows);
  s.pivots_ = std::move(r.pivots);
  return s;
}

Subspace Subspace::span(const std::vector<Vec>& vectors, int ambient) {
  Mat rows(static_cast<Eigen::Index>(vectors.size()), ambient);
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].size() != ambient) throw AlgebraError("span: vector of wrong length");
    rows.row(static_cast<Eigen::Index>(i)) = vectors[i].transpose();
  }
  return span(rows);
}

Subspace Subspace::full(int ambient) {
  Subspace s(ambient);
  s.basis_ = Mat::Identity(ambient, ambient);
  for (int i = 0; i < ambient; ++i) s.pivots_.push_back(i);
  return s;
}

Vec Subspace::reduce(const Vec& v) const {
  if (v.size() != ambient_) throw AlgebraError("vector length differs from ambient dimension");
  Vec r = v;
  for (int i = 0; i < dim(); ++i) {
    const Fe c = r[pivots_[i]];
    if (c.is_zero()) continue;
    for (int j = 0; j < ambient_; ++j)
      if (!basis_(i, j).is_zero()) r[j] += c * basis_(i, j);
  }
  return r;
}

bool Subspace::contains(const Vec& v) const { return is_zero(reduce(v)); }

bool Subspace::contains(const Subspace& other) const {
  if (other.ambient_ != ambient_) throw AlgebraError("ambient mismatch");
  for (int i = 0; i < other.dim(); ++i)
    if (!contains(other.vector(i))) return false;
  return true;
}

std::optional<Vec> Subspace::coordinates(const Vec& v) const {
  if (!contains(v)) return std::nullopt;
  Vec c(dim());
  for (int i = 0; i < dim(); ++i) c[i] = v[pivots_[i]];
  return c;
}

bool operator==(const Subspace& a, const Subspace& b) {
  if (a.ambient_ != b.ambient_ || a.pivots_ != b.pivots_) return false;
  for (Eigen::Index i = 0; i < a.basis_.size(); ++i)
    if (a.basis_.data()[i] != b.basis_.data()[i]) return false;
  return true;
}

Subspace kernel(const Mat& a) {
  const int cols = static_cast<int>(a.cols());
  Rref r = rref_impl(a);
  std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
  for (int p : r.pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  std::vector<Vec> gens;
  for (int f = 0; f < cols; ++f) {
    if (is_pivot[static_cast<std::size_t>(f)]) continue;
    Vec v = Vec::Zero(cols);
    v[f] = Fe(1);
    for (std::size_t i = 0; i < r.pivots.size(); ++i) v[r.pivots[i]] = r.rows(static_cast<Eigen::Index>(i), f);
    gens.push_back(std::move(v));
  }
  return Subspace::span(gens, cols);
}

Subspace row_space(const Mat& a) { return Subspace::span(a); }
Subspace column_space(const Mat& a) { return Subspace::span(Mat(a.transpose())); }

Subspace subspace_sum(const Subspace& u, const Subspace& v) {
  if (u.ambient() != v.ambient()) throw AlgebraError("subspace sum: ambient mismatch");
  Mat rows(u.dim() + v.dim(), u.ambient());
  rows << u.basis(), v.basis();
  return Subspace::span(rows);
}

Subspace subspace_intersect(const Subspace& u, const Subspace& v) {
  if (u.ambient() != v.ambient()) throw AlgebraError("subspace intersection: ambient mismatch");
  const int n = u.ambient();
  // Zassenhaus: reduce [u | u ; v | 0]; rows with vanishing left half span the intersection.
  Mat z = Mat::Zero(u.dim() + v.dim(), 2 * n);
  z.topLeftCorner(u.dim(), n) = u.basis();
  z.topRightCorner(u.dim(), n) = u.basis();
  z.bottomLeftCorner(v.dim(), n) = v.basis();
  Rref r = rref_impl(z);
  std::vector<Vec> gens;
  for (std::size_t i = 0; i < r.pivots.size(); ++i)
    if (r.pivots[i] >= n) gens.push_back(r.rows.row(static_cast<Eigen::Index>(i)).tail(n).transpose());
  return Subspace::span(gens, n);
}

std::optional<Vec> solve(const Mat& a, const Vec& b) {
  if (a.rows() != b.size()) throw AlgebraError("solve: dimension mismatch");
  const int cols = static_cast<int>(a.cols());
  Mat aug(a.rows(), cols + 1);
  aug << a, b;
  Rref r = rref_impl(aug);
  Vec x = Vec::Zero(cols);
  for (std::size_t i = 0; i < r.pivots.size(); ++i) {
    if (r.pivots[i] == cols) return std::nullopt;
    x[r.pivots[i]] = r.rows(static_cast<Eigen::Index>(i), cols);
  }
  return x;
}

std::optional<Mat> inverse(const Mat& a) {
  if (a.rows() != a.cols()) throw AlgebraError("inverse of a non-square matrix");
  const Eigen::Index n = a.rows();
  Mat aug(n, 2 * n);
  aug << a, Mat::Identity(n, n);
  Rref r = rref_impl(aug);
  if (static_cast<Eigen::Index>(r.pivots.size()) < n || (n > 0 && r.pivots[static_cast<std::size_t>(n - 1)] >= n))
    return std::nullopt;
  return Mat(r.rows.rightCols(n));
}

Mat inverse_or_throw(const Mat& a, const char* what) {
  auto inv = inverse(a);
  if (!inv) throw AlgebraError(std::string(what) + " is not invertible");
  return *inv;
}

FePoly char_poly(const Mat& a) {
  if (a.rows() != a.cols()) throw AlgebraError("characteristic polynomial of a non-square matrix");
  const Eigen::Index n = a.rows();
  // Berkowitz: v_k = T_k v_{k-1} with T_k lower-triangular Toeplitz built from
  // the leading k x k block; v holds coefficients, highest degree first.
  std::vector<Fe> v{Fe(1)};
  for (Eigen::Index k = 1; k <= n; ++k) {
    const Eigen::Index m = k - 1;
    std::vector<Fe> t(static_cast<std::size_t>(k + 1));
    t[0] = Fe(1);
    t[1] = -a(m, m);
    Vec w = a.block(0, m, m, 1);  // M^j R
    for (Eigen::Index j = 2; j <= k; ++j) {
      Fe s(0);
      for (Eigen::Index i = 0; i < m; ++i) s += a(m, i) * w[i];
      t[static_cast<std::size_t>(j)] = -s;
      if (j < k) w = (a.topLeftCorner(m, m) * w).eval();
    }
    std::vector<Fe> nv(static_cast<std::size_t>(k + 1), Fe(0));
    for (Eigen::Index i = 0; i <= k; ++i)
      for (Eigen::Index j = 0; j < k && j <= i; ++j) nv[i] += t[i - j] * v[j];
    v = std::move(nv);
  }
  return FePoly(v.rbegin(), v.rend());
}

std::string poly_str(const FePoly& p, const std::string& var) {
  std::string out;
  for (std::size_t d = p.size(); d-- > 0;) {
    if (p[d].is_zero()) continue;
    if (!out.empty()) out += " + ";
    std::string c = p[d].str();
    if (c.find('+') != std::string::npos) c = "(" + c + ")";
    if (d == 0)
      out += c;
    else
      out += (p[d].is_one() ? std::string() : c + "*") + var + (d > 1 ? "^" + std::to_string(d) : "");
  }
  return out.empty() ? "0" : out;
}

std::string mat_str(const Mat& a) {
  std::string out = "[";
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    out += i ? ",[" : "[";
    for (Eigen::Index j = 0; j < a.cols(); ++j) out += (j ? "," : "") + a(i, j).str();
    out += "]";
  }
  return out + "]";
}

std::string vec_str(const Vec& v) {
  std::string out = "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) out += (i ? "," : "") + v[i].str();
  return out + ")";
}

}  // namespace cliffpair
