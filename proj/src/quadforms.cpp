#include "cliffpair/quadforms.hpp"

#include <sstream>

namespace cliffpair {

namespace {

Mat promote(const Mat& m, Field f) {
  Mat out(m.rows(), m.cols());
  const Fe z = f.zero();
  for (Eigen::Index i = 0; i < m.size(); ++i) out.data()[i] = m.data()[i] + z;
  return out;
}

Fe dot(const Vec& x, const Mat& m, const Vec& y) {
  Fe s(0);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (x[i].is_zero()) continue;
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero() && !y[j].is_zero()) s += x[i] * m(i, j) * y[j];
  }
  return s;
}

Vec unit(Field f, int n, int i) {
  Vec v = Vec::Constant(n, f.zero());
  v[i] = f.one();
  return v;
}

}  // namespace

// ---------------------------------------------------------------- BilForm

BilForm::BilForm(Mat m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) throw AlgebraError("bilinear form matrix must be square");
  if (m_ != Mat(m_.transpose())) throw AlgebraError("bilinear form matrix must be symmetric");
}

BilForm BilForm::diagonal(const std::vector<Fe>& d) {
  Mat m = Mat::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
  for (std::size_t i = 0; i < d.size(); ++i) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = d[i];
  return BilForm(m);
}

BilForm BilForm::pfister(const std::vector<Fe>& b) {
  std::vector<Fe> d{Fe(1)};
  for (const Fe& bi : b) {
    if (bi.is_zero()) throw AlgebraError("Pfister slot must be nonzero");
    std::vector<Fe> next;
    for (const Fe& x : d) {
      next.push_back(x);
      next.push_back(x * bi);
    }
    d = std::move(next);
  }
  return diagonal(d);
}

bool BilForm::nondegenerate() const { return inverse(m_).has_value(); }

Fe BilForm::value(const Vec& x, const Vec& y) const { return dot(x, m_, y); }

// ---------------------------------------------------------------- QForm

QForm::QForm(const Mat& gram, Field field) {
  if (gram.rows() != gram.cols()) throw AlgebraError("Gram matrix must be square");
  field_ = field ? field : field_of(gram);
  if (!field_) field_ = gf2();
  const Eigen::Index n = gram.rows();
  if (n % 2) throw AlgebraError("a nonsingular quadratic form in characteristic 2 has even dimension");
  Mat g = promote(gram, field_);
  u_ = Mat::Constant(n, n, field_.zero());
  for (Eigen::Index i = 0; i < n; ++i) {
    u_(i, i) = g(i, i);
    for (Eigen::Index j = i + 1; j < n; ++j) u_(i, j) = g(i, j) + g(j, i);
  }
  if (!inverse(polar())) throw AlgebraError("quadratic form is singular (polar form is degenerate)");
  build_basis();
}

QForm QForm::from_blocks(const std::vector<std::pair<Fe, Fe>>& blocks) {
  Field f;
  for (auto& [a, b] : blocks) {
    if (!f) f = a.field();
    if (!f) f = b.field();
  }
  const auto n = static_cast<Eigen::Index>(2 * blocks.size());
  Mat g = Mat::Zero(n, n);
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const auto k = static_cast<Eigen::Index>(2 * i);
    g(k, k) = blocks[i].first;
    g(k, k + 1) = Fe(1);
    g(k + 1, k + 1) = blocks[i].second;
  }
  return QForm(g, f);
}

Fe QForm::value(const Vec& x) const { return dot(x, u_, x); }

Fe QForm::polar_value(const Vec& x, const Vec& y) const { return dot(x, u_, y) + dot(y, u_, x); }

// Greedy: v = lowest basis vector with q(v) != 0 (else e_i + e_j for the
// lowest pair with b != 0), w = lowest remaining vector pairing nontrivially
// with v, scaled so b(v,w) = 1; then project the rest onto {v,w}^perp.
void QForm::build_basis() {
  const int n = dim();
  std::vector<Vec> work;
  for (int i = 0; i < n; ++i) work.push_back(unit(field_, n, i));
  basis_.clear();
  while (!work.empty()) {
    Vec v;
    int vi = -1;
    for (std::size_t i = 0; i < work.size(); ++i)
      if (!value(work[i]).is_zero()) {
        vi = static_cast<int>(i);
        break;
      }
    if (vi >= 0) {
      v = work[static_cast<std::size_t>(vi)];
    } else {
      for (std::size_t i = 0; i < work.size() && vi < 0; ++i)
        for (std::size_t j = i + 1; j < work.size(); ++j)
          if (!polar_value(work[i], work[j]).is_zero()) {
            v = work[i] + work[j];
            vi = static_cast<int>(i);
            break;
          }
      if (vi < 0) throw AlgebraError("quadratic form is singular");
    }
    int wi = -1;
    Fe bw;
    for (std::size_t j = 0; j < work.size(); ++j) {
      bw = polar_value(v, work[j]);
      if (!bw.is_zero()) {
        wi = static_cast<int>(j);
        break;
      }
    }
    if (wi < 0) throw AlgebraError("quadratic form is singular");
    const Vec w = work[static_cast<std::size_t>(wi)] * bw.inverse();
    basis_.push_back({v, w, value(v), value(w)});
    std::vector<Vec> rest;
    Mat acc(0, n);
    for (std::size_t j = 0; j < work.size(); ++j) {
      if (static_cast<int>(j) == wi || static_cast<int>(j) == vi) continue;
      Vec x = work[j] + polar_value(work[j], w) * v + polar_value(work[j], v) * w;
      Mat trial(acc.rows() + 1, n);
      trial << acc, x.transpose();
      if (rank(trial) == trial.rows()) {
        acc = trial;
        rest.push_back(x);
      }
    }
    if (static_cast<int>(rest.size()) != static_cast<int>(work.size()) - 2)
      throw AlgebraError("symplectic basis construction lost rank");
    work = std::move(rest);
  }
}

std::vector<std::pair<Fe, Fe>> QForm::blocks() const {
  std::vector<std::pair<Fe, Fe>> out;
  for (const auto& b : basis_) out.emplace_back(b.a, b.b);
  return out;
}

Mat QForm::symplectic_matrix() const {
  Mat m(dim(), dim());
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    m.col(static_cast<Eigen::Index>(2 * i)) = basis_[i].e;
    m.col(static_cast<Eigen::Index>(2 * i + 1)) = basis_[i].f;
  }
  return m;
}

QForm QForm::transformed(const Mat& p) const {
  if (p.rows() != dim()) throw AlgebraError("transformation has the wrong number of rows");
  return QForm(mat_mul(mat_mul(Mat(p.transpose()), u_), p), field_);
}

QForm QForm::scaled(const Fe& lambda) const {
  if (lambda.is_zero()) throw AlgebraError("scaling a form by zero");
  return QForm(Mat(u_ * lambda), field_);
}

QForm binary_block(const Fe& b1, const Fe& b2) { return QForm::from_blocks({{b1, b2}}); }

QForm hyperbolic(Field f, int m) {
  return QForm::from_blocks(std::vector<std::pair<Fe, Fe>>(static_cast<std::size_t>(m), {f.zero(), f.zero()}));
}

QForm orthogonal_sum(const QForm& p, const QForm& q) {
  if (p.dim() && q.dim() && p.field() != q.field()) throw AlgebraError("orthogonal sum across fields");
  return QForm(block_diag(p.gram(), q.gram()), p.dim() ? p.field() : q.field());
}

Fe arf_value(const QForm& q) {
  Fe s = q.field().zero();
  for (const auto& b : q.symplectic_basis()) s += b.a * b.b;
  return s;
}

WpClass arf(const QForm& q) { return wp_class(arf_value(q)); }

QForm tensor_bil_quad(const BilForm& b, const QForm& q) {
  if (!b.nondegenerate()) throw AlgebraError("bilinear factor is degenerate");
  const int n = b.dim(), d = q.dim();
  const Mat polar = kron(b.matrix(), q.polar());
  Mat u = Mat::Zero(n * d, n * d);
  for (int i = 0; i < n * d; ++i) {
    u(i, i) = b.matrix()(i / d, i / d) * q.gram()(i % d, i % d);
    for (int j = i + 1; j < n * d; ++j) u(i, j) = polar(i, j);
  }
  return QForm(u, q.field());
}

QForm pfister_quad(const std::vector<Fe>& b, const Fe& c) {
  Field f = c.field();
  for (const Fe& x : b)
    if (!f) f = x.field();
  if (!f) f = gf2();
  return tensor_bil_quad(BilForm::pfister(b), binary_block(f.one(), c + f.zero()));
}

QForm quaternion_norm_form(const Fe& a, const Fe& b) {
  if (b.is_zero()) throw AlgebraError("quaternion parameter b must be nonzero");
  Field f = a.field() ? a.field() : b.field();
  if (!f) f = gf2();
  // Nrd(x0 + x1 u + x2 v + x3 w) = x0^2 + x0 x1 + a x1^2 + b (x2^2 + x2 x3 + a x3^2)
  Mat g = Mat::Constant(4, 4, f.zero());
  g(0, 0) = f.one();
  g(0, 1) = f.one();
  g(1, 1) = a;
  g(2, 2) = b;
  g(2, 3) = b;
  g(3, 3) = a * b;
  return QForm(g, f);
}

std::optional<Vec> find_isotropic(const QForm& q) {
  const Field f = q.field();
  if (!f->is_finite()) throw AlgebraError("isotropy search is only supported over finite fields");
  const int n = q.dim();
  if (n == 0) return std::nullopt;
  double log_count = n * f->degree();
  if (log_count <= 20) {
    const std::uint64_t qs = f->size();
    std::uint64_t total = 1;
    for (int i = 0; i < n; ++i) total *= qs;
    Vec v(n);
    for (std::uint64_t idx = 1; idx < total; ++idx) {
      std::uint64_t r = idx;
      for (int i = 0; i < n; ++i) {
        v[i] = f.from_bits(static_cast<std::uint32_t>(r % qs));
        r /= qs;
      }
      if (q.value(v).is_zero()) return v;
    }
    return std::nullopt;
  }
  // Fiberwise on the first symplectic block: fix the rest to the first vector
  // of the second block (value a2 != 0) and solve a1 x^2 = a2 in the first.
  const auto& sb = q.symplectic_basis();
  if (sb.size() >= 2) {
    const Fe c = sb[1].a;
    if (c.is_zero()) return Vec(sb[1].e);
    const Fe x = frobenius_sqrt(c / sb[0].a);
    return Vec(x * sb[0].e + sb[1].e);
  }
  // A single block [a,b]: isotropic iff a = 0 or ab lies in wp(F).
  const auto& blk = sb[0];
  if (blk.a.is_zero()) return Vec(blk.e);
  auto z = artin_schreier_solve(blk.a * blk.b);
  if (!z) return std::nullopt;
  // q(x e + f) = a x^2 + x + b; with x = z/a this is (z^2 + z + ab)/a = 0.
  return Vec((*z / blk.a) * blk.e + blk.f);
}

WittDecomposition witt_decompose(const QForm& q) {
  const Field f = q.field();
  if (!f->is_finite()) throw AlgebraError("Witt decomposition is only supported over finite fields");
  const int n = q.dim();
  WittDecomposition out;
  out.basis = Mat(n, 0);
  Mat cur = Mat::Identity(n, n);  // columns span the current complement
  for (int i = 0; i < n; ++i) cur(i, i) = f.one();
  for (;;) {
    const QForm sub = q.transformed(cur);
    auto iso = find_isotropic(sub);
    if (!iso) break;
    const Vec v = mat_vec(cur, *iso);
    int wi = -1;
    Fe bw;
    for (int j = 0; j < cur.cols(); ++j) {
      bw = q.polar_value(v, cur.col(j));
      if (!bw.is_zero()) {
        wi = j;
        break;
      }
    }
    if (wi < 0) throw AlgebraError("isotropic vector lies in the radical");
    Vec w = Vec(cur.col(wi)) * bw.inverse();
    w = w + q.value(w) * v;
    Mat nb(n, out.basis.cols() + 2);
    nb << out.basis, v, w;
    out.basis = nb;
    ++out.witt_index;
    std::vector<Vec> rest;
    Mat acc(0, n);
    for (int j = 0; j < cur.cols(); ++j) {
      const Vec x = Vec(cur.col(j)) + q.polar_value(cur.col(j), w) * v + q.polar_value(cur.col(j), v) * w;
      Mat trial(acc.rows() + 1, n);
      trial << acc, x.transpose();
      if (rank(trial) == trial.rows()) {
        acc = trial;
        rest.push_back(x);
      }
    }
    Mat next(n, static_cast<Eigen::Index>(rest.size()));
    for (std::size_t j = 0; j < rest.size(); ++j) next.col(static_cast<Eigen::Index>(j)) = rest[j];
    cur = next;
    if (cur.cols() == 0) break;
  }
  out.anisotropic = cur.cols() ? q.transformed(cur) : QForm(Mat(0, 0), f);
  Mat nb(n, out.basis.cols() + cur.cols());
  nb << out.basis, cur;
  out.basis = nb;
  return out;
}

bool FormInvariants::operator==(const FormInvariants& o) const {
  return dim == o.dim && arf.bit == o.arf.bit && (arf.decided() || arf.value == o.arf.value) && witt == o.witt;
}

std::string FormInvariants::str() const {
  std::ostringstream os;
  os << "dim=" << dim << " arf=" << arf.str() << " witt=" << (witt ? std::to_string(*witt) : "unsupported");
  return os.str();
}

FormInvariants invariants(const QForm& q) {
  FormInvariants inv;
  inv.dim = q.dim();
  inv.arf = arf(q);
  if (q.field()->is_finite()) inv.witt = witt_decompose(q).witt_index;
  return inv;
}

QForm random_form(Rng& rng, Field f, int m) {
  const int n = 2 * m;
  for (;;) {
    Mat u = Mat::Constant(n, n, f.zero());
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) u(i, j) = rng.element(f);
    if (inverse(Mat(u + u.transpose()))) return QForm(u, f);
  }
}

}  // namespace cliffpair
