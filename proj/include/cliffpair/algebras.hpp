// Finite-dimensional associative algebras given by structure constants.
#ifndef CLIFFPAIR_ALGEBRAS_HPP
#define CLIFFPAIR_ALGEBRAS_HPP

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "cliffpair/exactla.hpp"
#include "cliffpair/rng.hpp"

namespace cliffpair {

using SparseVec = std::vector<std::pair<int, Fe>>;

class Alg;
using AlgPtr = std::shared_ptr<const Alg>;

enum class AlgKind { quaternion, matrix, tensor, clifford_even, clifford_full, component, product, generic };

struct Provenance {
  AlgKind kind = AlgKind::generic;
  Fe a, b;                      // quaternion parameters of [a,b)
  int n = 0;                    // matrix degree
  std::vector<AlgPtr> factors;  // tensor factors (left most significant) or product components
};

class Alg {
 public:
  /// table[i * dim + j] holds b_i b_j. The constructor checks associativity
  /// (all triples up to dimension 64, 10^4 random triples above) and the unit law.
  Alg(Field field, std::vector<std::string> labels, std::vector<SparseVec> table, Vec unit, RowVec trd,
      Provenance prov);

  int dim() const { return dim_; }
  /// sqrt(dim) for central simple algebras; 0 when dim is not a square.
  int degree() const;
  Field field() const { return field_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const Provenance& provenance() const { return prov_; }
  AlgKind kind() const { return prov_.kind; }

  const SparseVec& basis_product(int i, int j) const { return table_[static_cast<std::size_t>(i * dim_ + j)]; }
  Vec basis(int i) const;
  const Vec& one() const { return unit_; }
  Vec zero() const { return Vec::Constant(dim_, field_.zero()); }

  Vec mul(const Vec& x, const Vec& y) const;
  /// Matrices of y -> x y and y -> y x.
  Mat left_mult(const Vec& x) const;
  Mat right_mult(const Vec& x) const;

  const RowVec& trd_functional() const { return trd_; }
  Fe trd(const Vec& x) const;
  /// T(i,j) = Trd(b_i b_j).
  const Mat& trace_form() const { return trace_form_; }

  std::string element_str(const Vec& x) const;
  Vec random_element(Rng& rng) const;

 private:
  Field field_;
  int dim_ = 0;
  std::vector<std::string> labels_;
  std::vector<SparseVec> table_;
  Vec unit_;
  RowVec trd_;
  Mat trace_form_;
  Provenance prov_;
};

/// [a,b) on the basis (1,u,v,w): u^2 = u + a, v^2 = b, w = uv = v(1+u).
AlgPtr quaternion(const Fe& a, const Fe& b);
/// M_n(F) on the basis E_ij (row-major); Trd is the trace.
AlgPtr matrix_algebra(Field f, int n);
AlgPtr tensor(const AlgPtr& l, const AlgPtr& r);
AlgPtr tensor_all(const std::vector<AlgPtr>& factors);
AlgPtr direct_product(const AlgPtr& l, const AlgPtr& r);

/// Canonical involution of a quaternion algebra as a 4x4 matrix.
Mat quaternion_conjugation(const Alg& q);
Fe quaternion_nrd(const Alg& q, const Vec& x);

Subspace centre(const Alg& a);

/// Explicit isomorphism A -> M_n(F): column k of `coords` is phi(b_k) flattened row-major.
struct SplitIso {
  int n = 0;
  Mat coords;
  Mat inverse_coords;
  AlgPtr target;

  Mat apply(const Vec& x) const;
  Vec pull_back(const Mat& m) const;
};

/// Verified isomorphism onto a matrix algebra (finite fields or split provenance).
SplitIso split_isomorphism(const AlgPtr& a);
/// Throws unless phi(b_i b_j) = phi(b_i) phi(b_j) for all basis pairs and Trd = trace o phi.
void verify_split_iso(const Alg& a, const SplitIso& iso);

/// s_2 coefficient of the reduced characteristic polynomial, through a split representation.
Fe reduced_srd(const SplitIso& iso, const Vec& x);
Fe reduced_srd(const AlgPtr& a, const Vec& x);
/// Reduced characteristic polynomial via the split representation.
FePoly reduced_char_poly(const SplitIso& iso, const Vec& x);

}  // namespace cliffpair

#endif
