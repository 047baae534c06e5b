// Full and even Clifford algebras of a nonsingular form in characteristic 2.
#ifndef CLIFFPAIR_CLIFFORD_HPP
#define CLIFFPAIR_CLIFFORD_HPP

#include <optional>
#include <string>
#include <vector>

#include "cliffpair/quadpairs.hpp"

namespace cliffpair {

/// Monomial arithmetic in C(q) over the symplectic basis (e_1, e_1', ..., e_m, e_m').
/// A monomial is a word p_1 ... p_m with p_i in {1, e_i, e_i', e_i e_i'} (codes 0..3);
/// its index is sum p_i 4^(m-i), so C(q) is the Kronecker product of the pair algebras.
class CliffEngine {
 public:
  explicit CliffEngine(const QForm& q);

  const QForm& form() const { return q_; }
  Field field() const { return q_.field(); }
  int m() const { return m_; }
  int full_dim() const { return 1 << (2 * m_); }
  /// Columns e_1, e_1', ..., e_m, e_m' in the coordinates of V.
  const Mat& symplectic_matrix() const { return s_; }
  const Mat& symplectic_inverse() const { return sinv_; }
  Fe a(int i) const { return a_[static_cast<std::size_t>(i)]; }
  Fe b(int i) const { return b_[static_cast<std::size_t>(i)]; }

  static int code(int mono, int pair, int m) { return (mono >> (2 * (m - 1 - pair))) & 3; }
  static bool even(int mono);
  std::string label(int mono) const;

  SparseVec monomial_product(int x, int y) const;
  /// Product of elements in full coordinates.
  Vec mul(const Vec& x, const Vec& y) const;
  /// v in V (original coordinates) as a degree-one element.
  Vec vector(const Vec& v) const;
  /// Generator g_k (k = 2i for e_i, 2i+1 for e_i').
  Vec generator(int k) const;
  Vec one() const;
  /// Canonical involution (reverses products, fixes V) on full coordinates.
  Vec reverse(const Vec& x) const;
  Mat reverse_matrix() const;

 private:
  QForm q_;
  int m_ = 0;
  Mat s_, sinv_;
  std::vector<Fe> a_, b_;
};

enum class Parity { full, even };

class Cliff {
 public:
  Cliff(const QForm& q, Parity parity);

  const CliffEngine& engine() const { return eng_; }
  const QForm& form() const { return eng_.form(); }
  Field field() const { return eng_.field(); }
  int m() const { return eng_.m(); }
  Parity parity() const { return parity_; }
  int dim() const { return alg_->dim(); }
  const AlgPtr& alg() const { return alg_; }
  const Inv& involution() const { return inv_; }

  /// Coordinates of a full-Clifford element lying in this algebra.
  Vec from_full(const Vec& x) const;
  Vec to_full(const Vec& x) const;
  /// v w for v, w in V.
  Vec product(const Vec& v, const Vec& w) const;
  /// xi = sum e_i e_i'.
  Vec xi() const;
  /// Full-coordinate index of basis element k.
  int monomial(int k) const { return index_[static_cast<std::size_t>(k)]; }

  /// c on End(V) (even only): column r*2m+s is c(E_rs), using phi(v x w) = v w^T B.
  const Mat& canonical_map_matrix() const;
  Vec canonical_map(const Mat& x) const;

 private:
  CliffEngine eng_;
  Parity parity_;
  std::vector<int> index_;  // basis position -> monomial
  std::vector<int> pos_;    // monomial -> basis position or -1
  AlgPtr alg_;
  Inv inv_;
  Mat cmap_;
};

/// The semi-trace s -> Trd(c(lambda) s) on (C_0(q), canonical involution).
/// Needs m even, 2m >= 8 and Trd(lambda) = 1.
SemiTr canonical_semitrace(const Cliff& c, const Mat& lambda);
/// lambda = phi(e_1 x e_1') for the first symplectic pair; Trd = 1.
Mat standard_lambda(const Cliff& c);

struct ImageSubspaces {
  Subspace ca, ca_skew, ca_alt;
};
/// c(A), c(A) cap Skew and c(A) cap Alt in C_0(q); needs 2m >= 6.
ImageSubspaces image_subspaces(const Cliff& c);

/// u_i = e_i e_i', v_i = e_i e_m (i < m) and xi, with Q_i = [a_i b_i, a_i a_m).
struct EvenDecomposition {
  std::vector<Vec> u, v;  // even coordinates
  Vec xi;
  std::vector<std::pair<Fe, Fe>> params;
  AlgPtr model;  // Q_1 x ... x Q_{m-1}
  Mat iota;      // model -> C_0(q), an injective algebra map
};
EvenDecomposition decompose_even(const Cliff& c);

struct Components {
  bool split = false;
  std::string report;
  Fe delta;           // c(l)^2 + c(l)
  Fe u;               // a root of X^2 + X = delta when split
  Vec centre_gen;     // c(l)
  Vec e_plus, e_minus;
  AlgPtr model;       // each component is modelled on Q_1 x ... x Q_{m-1}
  Mat j_plus, j_minus;
  QPair plus, minus;
};
/// The central idempotents c(l)+u, c(l)+u+1 and the induced pairs on C^+ and C^-,
/// for l giving the adjoint semi-trace of q. Needs m even, 2m >= 8.
Components split_components(const Cliff& c, const Mat& lambda = Mat());
/// Same, starting from a quadratic pair on a split algebra.
Components split_components(const QPair& p);

/// C_0(theta) for theta = Int(g), g a similitude of q with multiplier mu:
/// x y -> mu^{-1} g(x) g(y). Matrix on C_0 coordinates.
Mat induced_automorphism(const Cliff& c, const Mat& g);
/// Multiplier of g, or nullopt if g is not a similitude of q.
std::optional<Fe> similitude_multiplier(const QForm& q, const Mat& g);
/// mu^{-1} sum g(e_i) g(e_i') in full coordinates: xi (proper) or xi + 1 (improper).
Vec image_of_xi(const CliffEngine& eng, const Mat& g, const Fe& mu);

/// x -> Trd(e e' x) on (C(q), canonical involution); needs 2m >= 6, b(e,e') = 1.
SemiTr full_semitrace(const Cliff& c, const Vec& e, const Vec& e2);

/// C(q) as [a_1 b_1, a_1) x ... x [a_m b_m, a_m): the model and its embedding.
struct FullDecomposition {
  AlgPtr model;
  Mat iota;
};
FullDecomposition decompose_full(const Cliff& c);

}  // namespace cliffpair

#endif
