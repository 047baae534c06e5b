// Nonsingular quadratic forms and symmetric bilinear forms in characteristic 2.
#ifndef CLIFFPAIR_QUADFORMS_HPP
#define CLIFFPAIR_QUADFORMS_HPP

#include <optional>
#include <utility>
#include <vector>

#include "cliffpair/exactla.hpp"
#include "cliffpair/rng.hpp"

namespace cliffpair {

class BilForm {
 public:
  BilForm() = default;
  /// m must be symmetric.
  explicit BilForm(Mat m);
  /// Diagonal form <d1,...,dn>.
  static BilForm diagonal(const std::vector<Fe>& d);
  /// Bilinear Pfister form <<b1,...,br>> = <1,b1> x ... x <1,br>.
  static BilForm pfister(const std::vector<Fe>& b);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Mat& matrix() const { return m_; }
  bool nondegenerate() const;
  Fe value(const Vec& x, const Vec& y) const;

 private:
  Mat m_;
};

/// One hyperbolic-style block of a symplectic basis: b(e,f)=1, q(e)=a, q(f)=b.
struct SymplecticBlock {
  Vec e, f;
  Fe a, b;
};

/// q(x) = x^T U x with U upper triangular; the polar form U + U^T must be
/// invertible. A symplectic basis is computed at construction.
class QForm {
 public:
  QForm() = default;
  /// Any square matrix G, read as q(x) = x^T G x. The field defaults to the
  /// field of the entries (GF(2) if they are all prime constants).
  explicit QForm(const Mat& gram, Field field = Field());
  static QForm from_blocks(const std::vector<std::pair<Fe, Fe>>& blocks);

  int dim() const { return static_cast<int>(u_.rows()); }
  int half_dim() const { return dim() / 2; }
  Field field() const { return field_; }
  const Mat& gram() const { return u_; }
  Mat polar() const { return Mat(u_ + u_.transpose()); }

  Fe value(const Vec& x) const;
  Fe polar_value(const Vec& x, const Vec& y) const;

  const std::vector<SymplecticBlock>& symplectic_basis() const { return basis_; }
  std::vector<std::pair<Fe, Fe>> blocks() const;
  /// Columns e1, f1, e2, f2, ... of the symplectic basis.
  Mat symplectic_matrix() const;

  /// x -> q(P x).
  QForm transformed(const Mat& p) const;
  QForm scaled(const Fe& lambda) const;

 private:
  void build_basis();

  Field field_;
  Mat u_;
  std::vector<SymplecticBlock> basis_;
};

QForm binary_block(const Fe& b1, const Fe& b2);
QForm hyperbolic(Field f, int m);
QForm orthogonal_sum(const QForm& p, const QForm& q);

/// Sum of a_i b_i over a symplectic basis, and its class in F/wp(F).
Fe arf_value(const QForm& q);
WpClass arf(const QForm& q);

QForm tensor_bil_quad(const BilForm& b, const QForm& q);
/// <<b1,...,b_{m-1},c]] = <<b1,...,b_{m-1}>> x [1,c].
QForm pfister_quad(const std::vector<Fe>& b, const Fe& c);
/// Norm form of [a,b) on the basis (1,u,v,w).
QForm quaternion_norm_form(const Fe& a, const Fe& b);

/// Some nonzero isotropic vector, or nullopt if q is anisotropic. Finite fields only.
std::optional<Vec> find_isotropic(const QForm& q);

struct WittDecomposition {
  int witt_index = 0;
  QForm anisotropic;
  /// Columns: hyperbolic pairs (e,f) with q(e)=q(f)=0, b(e,f)=1, then a basis
  /// of the anisotropic part.
  Mat basis;
};
WittDecomposition witt_decompose(const QForm& q);

struct FormInvariants {
  int dim = 0;
  WpClass arf;
  std::optional<int> witt;  // finite fields only

  bool operator==(const FormInvariants& o) const;
  std::string str() const;
};
FormInvariants invariants(const QForm& q);

/// Uniformly random nonsingular 2m-dimensional form (rejection sampling on the Gram).
QForm random_form(Rng& rng, Field f, int m);

}  // namespace cliffpair

#endif
