#include "cliffpair/quadpairs.hpp"

#include <sstream>

namespace cliffpair {

namespace {

Mat identity(int n, Field f) { return Mat::Identity(n, n) + Mat::Constant(n, n, f.zero()); }

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

Vec image_of(const Alg& a, const Mat& sigma, const SparseVec& x) {
  Vec out = a.zero();
  for (const auto& [t, c] : x) out += c * sigma.col(t);
  return out;
}

bool anti_multiplicative_at(const Alg& a, const Mat& sigma, int i, int j) {
  return image_of(a, sigma, a.basis_product(i, j)) == a.mul(Vec(sigma.col(j)), Vec(sigma.col(i)));
}

void require_matrix(const Alg& a, const char* what) {
  if (a.kind() != AlgKind::matrix) throw AlgebraError(std::string(what) + ": needs an algebra with matrix provenance");
}

}  // namespace

// ---------------------------------------------------------------- involutions

Inv::Inv(AlgPtr alg, Mat m) : alg_(std::move(alg)), m_(std::move(m)) {
  const int d = alg_->dim();
  const Field f = alg_->field();
  if (m_.rows() != d || m_.cols() != d) throw AlgebraError("involution matrix has the wrong size");
  m_ += Mat::Constant(d, d, f.zero());
  if (mat_mul(m_, m_) != identity(d, f)) throw AlgebraError("sigma^2 != id");
  if (d <= 64) {
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        if (!anti_multiplicative_at(*alg_, m_, i, j)) throw AlgebraError("sigma is not an anti-automorphism");
  } else {
    // Too many pairs to check exhaustively: sample basis pairs.
    Rng rng(0x1a7b0c5e);
    for (int it = 0; it < 2000; ++it) {
      const int i = static_cast<int>(rng.below(static_cast<std::uint64_t>(d)));
      const int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(d)));
      if (!anti_multiplicative_at(*alg_, m_, i, j)) throw AlgebraError("sigma is not an anti-automorphism");
    }
  }
  symplectic_ = solve(m_ + identity(d, f), alg_->one()).has_value();
}

SymmetrySubspaces symmetry_subspaces(const Inv& sigma) {
  const int d = sigma.alg()->dim();
  const Mat id = identity(d, sigma.alg()->field());
  SymmetrySubspaces s;
  s.sym = kernel(Mat(sigma.matrix() - id));
  s.skew = kernel(Mat(sigma.matrix() + id));
  s.symd = column_space(Mat(id + sigma.matrix()));
  s.alt = column_space(Mat(id - sigma.matrix()));
  return s;
}

// ---------------------------------------------------------------- semi-traces

SemiTr::SemiTr(Inv sigma, Vec ell) : sigma_(std::move(sigma)), ell_(std::move(ell)) {
  const Alg& a = *sigma_.alg();
  if (ell_.size() != a.dim()) throw AlgebraError("semi-trace element of the wrong dimension");
  ell_ += a.zero();
  if (ell_ + sigma_.apply(ell_) != a.one()) throw AlgebraError("l + sigma(l) != 1");
  const Mat id = identity(a.dim(), a.field());
  sym_ = kernel(Mat(sigma_.matrix() - id));
  const Mat lt = mat_mul(Mat(ell_.transpose()), a.trace_form());
  values_ = RowVec(sym_.dim());
  for (int k = 0; k < sym_.dim(); ++k) values_[k] = (lt.row(0) * sym_.vector(k))(0, 0);
}

Fe SemiTr::operator()(const Vec& s) const {
  const auto c = sym_.coordinates(s);
  if (!c) throw AlgebraError("semi-trace evaluated outside Sym(A, sigma)");
  Fe out = sigma_.alg()->field().zero();
  for (int k = 0; k < sym_.dim(); ++k) out += values_[k] * (*c)[k];
  return out;
}

void SemiTr::check() const {
  const Alg& a = *sigma_.alg();
  for (int i = 0; i < a.dim(); ++i) {
    const Vec x = a.basis(i);
    if ((*this)(x + sigma_.apply(x)) != a.trd(x))
      throw AlgebraError("f(x + sigma(x)) != Trd(x) at " + a.labels()[static_cast<std::size_t>(i)]);
  }
}

bool operator==(const SemiTr& a, const SemiTr& b) {
  return a.sym_ == b.sym_ && a.values_ == b.values_;
}

SemiTr semitrace_from_element(const Inv& sigma, const Vec& ell) { return SemiTr(sigma, ell); }

Vec symplectic_witness(const Inv& sigma) {
  const Alg& a = *sigma.alg();
  auto l = solve(Mat(sigma.matrix() + identity(a.dim(), a.field())), a.one());
  if (!l) throw AlgebraError("involution is not symplectic");
  return *l;
}

QPair make_pair(const Inv& sigma, const Vec& ell) {
  if (sigma.alg()->degree() % 2 != 0) throw AlgebraError("quadratic pair needs even degree");
  return QPair{sigma.alg(), sigma, SemiTr(sigma, ell)};
}

// ---------------------------------------------------------------- split pairs

Inv adjoint_involution(const AlgPtr& matrix_alg, const Mat& b) {
  require_matrix(*matrix_alg, "adjoint_involution");
  const int n = matrix_alg->provenance().n;
  if (b.rows() != n || b.cols() != n) throw AlgebraError("bilinear form has the wrong size");
  const Mat binv = inverse_or_throw(b, "bilinear form");
  Mat s(n * n, n * n);
  // ad_B(E_kl) = B^{-1} E_lk B = (column l of B^{-1}) (row k of B).
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) s.col(k * n + l) = flatten(Mat(binv.col(l) * b.row(k)));
  return Inv(matrix_alg, s);
}

Mat rank_one(const Vec& v, const Vec& w, const Mat& b) { return Mat(v * (w.transpose() * b)); }

QPair adjoint_pair(const QForm& q) {
  const int n = q.dim();
  if (n == 0) throw AlgebraError("adjoint_pair needs a nonzero form");
  const Field f = q.field();
  const Mat b = q.polar();
  const AlgPtr a = matrix_algebra(f, n);
  const Inv sigma = adjoint_involution(a, b);
  const int d = n * n;
  // l + sigma(l) = 1 and Trd(l phi(e_k x e_k)) = q(e_k).
  Mat sys(d + n, d);
  Vec rhs(d + n);
  sys.topRows(d) = sigma.matrix() + identity(d, f);
  rhs.head(d) = a->one();
  for (int k = 0; k < n; ++k) {
    Vec e = Vec::Constant(n, f.zero());
    e[k] = f.one();
    const Vec m = flatten(rank_one(e, e, b));
    sys.row(d + k) = mat_mul(Mat(m.transpose()), a->trace_form()).row(0);
    rhs[d + k] = q.value(e);
  }
  auto ell = solve(sys, rhs);
  if (!ell) throw AlgebraError("adjoint_pair: no semi-trace matches the form");
  return make_pair(sigma, *ell);
}

Mat recover_bilinear(const Inv& sigma) {
  const Alg& a = *sigma.alg();
  require_matrix(a, "recover_bilinear");
  const int n = a.provenance().n;
  const Field f = a.field();
  // B sigma(X) = X^T B on the generators E_{i,i+1}, E_{i+1,i}; both sides are
  // anti-multiplicative in X, so this pins down B up to a scalar.
  std::vector<std::pair<int, int>> gens;
  for (int i = 0; i + 1 < n; ++i) {
    gens.emplace_back(i, i + 1);
    gens.emplace_back(i + 1, i);
  }
  if (n == 1) gens.emplace_back(0, 0);
  Mat sys = Mat::Constant(static_cast<Eigen::Index>(gens.size()) * n * n, n * n, f.zero());
  int row = 0;
  for (const auto& [k, l] : gens) {
    const Mat s = unflatten(Vec(sigma.matrix().col(k * n + l)), n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j, ++row) {
        for (int t = 0; t < n; ++t) sys(row, i * n + t) += s(t, j);  // (B S)_ij
        if (i == l) sys(row, k * n + j) -= f.one();                  // (E_lk B)_ij
      }
  }
  const Subspace sol = kernel(sys);
  if (sol.dim() != 1) throw AlgebraError("involution is not adjoint to a unique bilinear form");
  // The rref basis vector already has its first nonzero entry equal to 1.
  return unflatten(sol.vector(0), n);
}

QPair split_pair(const QPair& p) {
  if (p.alg->kind() == AlgKind::matrix) return p;
  const SplitIso iso = split_isomorphism(p.alg);
  const Mat s = mat_mul(mat_mul(iso.coords, p.inv.matrix()), iso.inverse_coords);
  return make_pair(Inv(iso.target, s), mat_vec(iso.coords, p.f.ell()));
}

QForm recover_form(const QPair& p_in) {
  const QPair p = split_pair(p_in);
  const Mat b = recover_bilinear(p.inv);
  const int n = static_cast<int>(b.rows());
  const Field f = p.alg->field();
  for (int i = 0; i < n; ++i)
    if (!b(i, i).is_zero()) throw AlgebraError("involution is orthogonal: no quadratic form");
  Mat u = Mat::Constant(n, n, f.zero());
  for (int i = 0; i < n; ++i) {
    Vec e = Vec::Constant(n, f.zero());
    e[i] = f.one();
    u(i, i) = p.f(flatten(rank_one(e, e, b)));
    for (int j = i + 1; j < n; ++j) u(i, j) = b(i, j);
  }
  return QForm(u, f);
}

Fe discriminant_value(const QPair& p) {
  const int deg = p.alg->degree();
  if (deg < 2 || deg % 2 != 0) throw AlgebraError("discriminant needs even degree");
  const int m = deg / 2;
  Fe srd;
  if (p.alg->kind() == AlgKind::matrix) {
    srd = char_poly(unflatten(p.f.ell(), deg))[static_cast<std::size_t>(deg - 2)];
  } else {
    srd = reduced_srd(p.alg, p.f.ell());
  }
  if ((m * (m - 1) / 2) % 2 != 0) srd += p.alg->field().one();
  return srd;
}

WpClass discriminant(const QPair& p) { return wp_class(discriminant_value(p)); }

// ---------------------------------------------------------------- tensor semi-traces

QPair tensor_pair(const Inv& tau, const QPair& p) {
  const AlgPtr& b = tau.alg();
  if (b->field() != p.alg->field()) throw AlgebraError("tensor_pair across different fields");
  if (b->dim() > 1 && !tau.symplectic()) throw AlgebraError("tensor_pair needs a symplectic involution on B");
  const AlgPtr a = tensor(b, p.alg);
  const Inv sigma(a, kron(tau.matrix(), p.inv.matrix()));
  return make_pair(sigma, kron(Mat(b->one()), Mat(p.f.ell())).col(0));
}

QPair canonical_otimes(const std::vector<Inv>& factors, int carrier) {
  const int r = static_cast<int>(factors.size());
  if (r < 2) throw AlgebraError("canonical_otimes needs at least two factors");
  if (carrier < 0) carrier = r - 1;
  if (carrier >= r) throw AlgebraError("carrier index out of range");
  std::vector<AlgPtr> algs;
  for (const Inv& s : factors) {
    if (!s.symplectic()) throw AlgebraError("canonical_otimes needs symplectic factors");
    if (s.alg()->field() != factors[0].alg()->field()) throw AlgebraError("canonical_otimes across different fields");
    algs.push_back(s.alg());
  }
  Mat sigma = factors[0].matrix();
  Mat ell = carrier == 0 ? Mat(symplectic_witness(factors[0])) : Mat(algs[0]->one());
  for (int i = 1; i < r; ++i) {
    sigma = kron(sigma, factors[static_cast<std::size_t>(i)].matrix());
    ell = kron(ell, i == carrier ? Mat(symplectic_witness(factors[static_cast<std::size_t>(i)]))
                                 : Mat(algs[static_cast<std::size_t>(i)]->one()));
  }
  const AlgPtr a = tensor_all(algs);
  return make_pair(Inv(a, sigma), ell.col(0));
}

// ---------------------------------------------------------------- orthogonal sums

QPair orthogonal_sum(const QPair& p1_in, const QPair& p2_in, const Fe& mu) {
  if (p1_in.alg->field() != p2_in.alg->field()) throw AlgebraError("orthogonal_sum across different fields");
  const Field f = p1_in.alg->field();
  if ((mu + f.zero()).is_zero()) throw AlgebraError("orthogonal_sum needs a nonzero scalar");
  const QPair p1 = split_pair(p1_in), p2 = split_pair(p2_in);
  const int n1 = p1.alg->provenance().n, n2 = p2.alg->provenance().n;
  const Mat b = block_diag(recover_bilinear(p1.inv), Mat((mu + f.zero()) * recover_bilinear(p2.inv)));
  const AlgPtr a = matrix_algebra(f, n1 + n2);
  const Mat ell = block_diag(unflatten(p1.f.ell(), n1), unflatten(p2.f.ell(), n2));
  return make_pair(adjoint_involution(a, b), flatten(ell));
}

// ---------------------------------------------------------------- invariants

bool PairInvariants::operator==(const PairInvariants& o) const {
  return degree == o.degree && disc.bit == o.disc.bit && (disc.decided() || disc.value == o.disc.value) &&
         form == o.form;
}

std::string PairInvariants::str() const {
  std::ostringstream os;
  os << "deg=" << degree << " disc=" << disc.str() << " form=[" << form.str() << "]";
  return os.str();
}

PairInvariants pair_invariants(const QPair& p) {
  PairInvariants inv;
  inv.degree = p.degree();
  inv.disc = discriminant(p);
  inv.form = invariants(recover_form(p));
  return inv;
}

bool is_hyperbolic(const QPair& p) {
  const FormInvariants inv = invariants(recover_form(p));
  if (!inv.witt) throw AlgebraError("hyperbolicity is decided over finite fields only");
  return *inv.witt == p.degree() / 2;
}

}  // namespace cliffpair
