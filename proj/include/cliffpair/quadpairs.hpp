// Involutions, semi-traces and quadratic pairs on structure-constant algebras.
#ifndef CLIFFPAIR_QUADPAIRS_HPP
#define CLIFFPAIR_QUADPAIRS_HPP

#include <string>
#include <vector>

#include "cliffpair/algebras.hpp"
#include "cliffpair/quadforms.hpp"

namespace cliffpair {

/// F-linear involution of the first kind, as a matrix on the basis of `alg`.
/// Construction checks sigma^2 = id and sigma(xy) = sigma(y) sigma(x) on basis pairs.
class Inv {
 public:
  Inv() = default;
  Inv(AlgPtr alg, Mat m);

  const AlgPtr& alg() const { return alg_; }
  const Mat& matrix() const { return m_; }
  Vec apply(const Vec& x) const { return mat_vec(m_, x); }
  /// In characteristic 2: symplectic iff 1 is a symmetrized element.
  bool symplectic() const { return symplectic_; }
  std::string type() const { return symplectic_ ? "symplectic" : "orthogonal"; }

 private:
  AlgPtr alg_;
  Mat m_;
  bool symplectic_ = false;
};

struct SymmetrySubspaces {
  Subspace sym, skew, symd, alt;
};
SymmetrySubspaces symmetry_subspaces(const Inv& sigma);

/// s -> Trd(l s) on Sym(A, sigma), stored as its values on the canonical basis of Sym.
class SemiTr {
 public:
  SemiTr() = default;
  SemiTr(Inv sigma, Vec ell);

  const Inv& inv() const { return sigma_; }
  const Vec& ell() const { return ell_; }
  const Subspace& sym() const { return sym_; }
  const RowVec& values() const { return values_; }

  /// f(s) for s in Sym(A, sigma); throws otherwise.
  Fe operator()(const Vec& s) const;
  /// Throws unless f(x + sigma(x)) = Trd(x) for every basis element x.
  void check() const;

  /// Functional equality (the representing element is only a witness).
  friend bool operator==(const SemiTr& a, const SemiTr& b);
  friend bool operator!=(const SemiTr& a, const SemiTr& b) { return !(a == b); }

 private:
  Inv sigma_;
  Vec ell_;
  Subspace sym_;
  RowVec values_;
};

SemiTr semitrace_from_element(const Inv& sigma, const Vec& ell);
/// Some l with l + sigma(l) = 1 (sigma symplectic), chosen deterministically.
Vec symplectic_witness(const Inv& sigma);

struct QPair {
  AlgPtr alg;
  Inv inv;
  SemiTr f;

  int degree() const { return alg->degree(); }
};

QPair make_pair(const Inv& sigma, const Vec& ell);

/// ad_B(X) = B^{-1} X^T B on M_n(F).
Inv adjoint_involution(const AlgPtr& matrix_alg, const Mat& b);
/// phi_B(v x w): x -> v B(w, x), i.e. the matrix v w^T B.
Mat rank_one(const Vec& v, const Vec& w, const Mat& b);

/// The adjoint quadratic pair of q on M_{2m}(F), with f(phi(v x v)) = q(v).
QPair adjoint_pair(const QForm& q);

/// The bilinear form B with sigma = ad_B (first nonzero entry normalized to 1);
/// the algebra must have matrix provenance.
Mat recover_bilinear(const Inv& sigma);
/// q(v) = f(phi_B(v x v)) for the normalized B. Pairs on non-matrix algebras
/// are first transported along their split isomorphism.
QForm recover_form(const QPair& p);

/// The pair transported to M_n(F) along split_isomorphism.
QPair split_pair(const QPair& p);

/// Srd(l) + m(m-1)/2 for degree 2m.
WpClass discriminant(const QPair& p);
Fe discriminant_value(const QPair& p);

/// (B,tau) x (A,sigma,f) with l* = 1 x l. tau must be symplectic unless B is the
/// one-dimensional base field.
QPair tensor_pair(const Inv& tau, const QPair& p);
/// Canonical f_x on (A_1 x ... x A_r, sigma_1 x ... x sigma_r), r >= 2, all
/// symplectic; the auxiliary semi-trace sits on factor `carrier`.
QPair canonical_otimes(const std::vector<Inv>& factors, int carrier = -1);

/// Pair on End(V1 + V2) with sigma = ad_{B1 + mu B2} and l = diag(l1, l2).
QPair orthogonal_sum(const QPair& p1, const QPair& p2, const Fe& mu = Fe(1));

struct PairInvariants {
  int degree = 0;
  WpClass disc;
  FormInvariants form;  // of the recovered form

  bool operator==(const PairInvariants& o) const;
  std::string str() const;
};
PairInvariants pair_invariants(const QPair& p);
/// Recovered form has Witt index m (finite fields).
bool is_hyperbolic(const QPair& p);

}  // namespace cliffpair

#endif
