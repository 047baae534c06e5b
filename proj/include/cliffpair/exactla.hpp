// Exact dense linear algebra over Fe, using Eigen as the container.
#ifndef CLIFFPAIR_EXACTLA_HPP
#define CLIFFPAIR_EXACTLA_HPP

#include <Eigen/Core>
#include <optional>
#include <string>
#include <vector>

#include "cliffpair/scalars.hpp"

namespace Eigen {

template <>
struct NumTraits<cliffpair::Fe> : GenericNumTraits<cliffpair::Fe> {
  typedef cliffpair::Fe Real;
  typedef cliffpair::Fe NonInteger;
  typedef cliffpair::Fe Nested;
  typedef cliffpair::Fe Literal;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 0,
    RequireInitialization = 1,
    ReadCost = 2,
    AddCost = 2,
    MulCost = 4
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen

namespace cliffpair {

using Mat = Eigen::Matrix<Fe, Eigen::Dynamic, Eigen::Dynamic>;
using Vec = Eigen::Matrix<Fe, Eigen::Dynamic, 1>;
using RowVec = Eigen::Matrix<Fe, 1, Eigen::Dynamic>;
/// Polynomial with Fe coefficients, lowest degree first.
using FePoly = std::vector<Fe>;

/// Field of the first entry carrying a context; empty handle when every entry
/// is a prime-field constant. Throws if entries from two fields are mixed.
Field field_of(const Mat& a);
Field field_of(const Vec& v);

/// Builds an Fe from raw bits in ctx (or a prime-field constant when ctx is null).
Fe make_fe(const FieldCtx* ctx, std::uint32_t bits);

bool is_zero(const Mat& a);
bool is_zero(const Vec& v);

/// Product with a fast path for finite fields.
Mat mat_mul(const Mat& a, const Mat& b);
Vec mat_vec(const Mat& a, const Vec& v);
Mat kron(const Mat& a, const Mat& b);
Mat block_diag(const Mat& a, const Mat& b);

struct Rref {
  Mat rows;                 // the nonzero rows of the reduced echelon form
  std::vector<int> pivots;  // pivot column per row
};

/// Reduced row echelon form with first-nonzero pivoting.
Rref rref(const Mat& a);
int rank(const Mat& a);

class Subspace {
 public:
  Subspace() = default;
  /// The zero subspace of F^n.
  explicit Subspace(int ambient);

  /// Span of the rows of `rows` inside F^ambient.
  static Subspace span(const Mat& rows);
  static Subspace span(const std::vector<Vec>& vectors, int ambient);
  static Subspace full(int ambient);

  int ambient() const { return ambient_; }
  int dim() const { return static_cast<int>(pivots_.size()); }
  const Mat& basis() const { return basis_; }
  const std::vector<int>& pivots() const { return pivots_; }
  Vec vector(int i) const { return basis_.row(i).transpose(); }

  /// v reduced against the basis; zero iff v lies in the subspace.
  Vec reduce(const Vec& v) const;
  bool contains(const Vec& v) const;
  bool contains(const Subspace& other) const;
  /// Coordinates with respect to basis(), if v lies in the subspace.
  std::optional<Vec> coordinates(const Vec& v) const;

  friend bool operator==(const Subspace& a, const Subspace& b);
  friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

 private:
  int ambient_ = 0;
  Mat basis_;
  std::vector<int> pivots_;
};

Subspace kernel(const Mat& a);
Subspace row_space(const Mat& a);
Subspace column_space(const Mat& a);
Subspace subspace_sum(const Subspace& u, const Subspace& v);
Subspace subspace_intersect(const Subspace& u, const Subspace& v);

/// Some x with a x = b, or nullopt when inconsistent.
std::optional<Vec> solve(const Mat& a, const Vec& b);
std::optional<Mat> inverse(const Mat& a);
/// Inverse or AlgebraError.
Mat inverse_or_throw(const Mat& a, const char* what = "matrix");

/// Characteristic polynomial det(X - A), lowest degree first (Berkowitz).
FePoly char_poly(const Mat& a);
std::string poly_str(const FePoly& p, const std::string& var = "X");

std::string mat_str(const Mat& a);
std::string vec_str(const Vec& v);

}  // namespace cliffpair

#endif  // CLIFFPAIR_EXACTLA_HPP
