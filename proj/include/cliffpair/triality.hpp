// Cayley algebras, similitudes of the norm, the triality action and trialitarian triples.
#ifndef CLIFFPAIR_TRIALITY_HPP
#define CLIFFPAIR_TRIALITY_HPP

#include <memory>
#include <string>
#include <vector>

#include "cliffpair/clifford.hpp"

namespace cliffpair {

/// An 8-dimensional composition algebra. Not an Alg: it is only alternative.
/// The constructor checks x xbar = n(x) 1 and left/right alternativity on the basis.
class Oct {
 public:
  Oct(Field field, std::vector<std::string> labels, std::vector<Vec> table, Mat conj, QForm norm, std::string model);

  Field field() const { return field_; }
  int dim() const { return 8; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& model() const { return model_; }
  Vec basis(int i) const;
  Vec one() const { return one_; }

  Vec mul(const Vec& x, const Vec& y) const;
  Vec conj(const Vec& x) const { return mat_vec(conj_, x); }
  const Mat& conj_matrix() const { return conj_; }
  Fe norm(const Vec& x) const { return norm_.value(x); }
  Fe polar(const Vec& x, const Vec& y) const { return norm_.polar_value(x, y); }
  const QForm& norm_form() const { return norm_; }
  /// Clifford arithmetic of the norm form (used for the Dickson criterion).
  const CliffEngine& clifford() const { return *eng_; }

  /// x * y = xbar ybar.
  Vec para(const Vec& x, const Vec& y) const;
  /// Matrices of y -> x * y and y -> y * x.
  Mat left_para(const Vec& x) const;
  Mat right_para(const Vec& x) const;

  Vec random_element(Rng& rng) const;
  std::string element_str(const Vec& x) const;

 private:
  Field field_;
  std::vector<std::string> labels_;
  std::vector<Vec> table_;  // table_[i*8+j] = b_i b_j
  Mat conj_;
  QForm norm_;
  Vec one_;
  std::string model_;
  std::shared_ptr<const CliffEngine> eng_;
};

/// Cayley-Dickson double of [a,b) with parameter c: (p + q l)(r + s l) = (pr + c sbar q) + (s p + q rbar) l.
/// Basis (1,u,v,w,l,ul,vl,wl); n(p + q l) = Nrd(p) + c Nrd(q).
Oct cayley(const Fe& a, const Fe& b, const Fe& c);
/// Zorn vector matrices (alpha, v; w, beta) on the basis (alpha, v1..v3, w1..w3, beta).
Oct zorn(Field f);

struct Simil {
  Mat t;
  Fe mu;
  bool proper = false;
};
/// Verifies n(t x) = mu n(x) on the full polar form and the diagonal; properness by
/// whether t fixes the Clifford centre generator.
Simil similitude(const Oct& o, const Mat& t);
/// Representative of the class of t modulo scalars: first nonzero entry (row-major) is 1.
Mat class_rep(const Mat& t);
bool same_class(const Mat& s, const Mat& t);
/// lambda * (product of transvections): proper iff the count is even.
Simil random_similitude(const Oct& o, Rng& rng, bool proper);

/// psi_1(x) = [[0, l_x], [r_x, 0]] on O + O.
Mat psi1(const Oct& o, const Vec& x);

/// Psi_1 : C_0(n) -> End(O) x End(O), with the target pair ad_n x ad_n.
struct EvenPsi {
  std::shared_ptr<const Cliff> c;
  AlgPtr target;   // M_8 x M_8, blocks flattened row-major
  Mat phi;         // column k = Psi_1(basis k of C_0)
  Mat phi_inv;
  Inv target_inv;  // ad_n x ad_n
  SemiTr target_f; // f_n x f_n
  QPair ad_n;
};
EvenPsi psi1_even_iso(const Oct& o);

/// Dimension of the solution space of s0 l_x = l_{t(x)} s2, s2 r_x = mu^{-1} r_{t(x)} s0.
int triality_nullity(const Oct& o, const Simil& t);

struct TrialityPair {
  Simil plus, minus;
};
/// (t+, t-) with t- a class representative; throws on improper t.
TrialityPair triality_pair(const Oct& o, const Simil& t);

/// Failures of (a), (b), (c) over all basis pairs and of mu(t+) mu(t) mu(t-) = 1.
struct RelationReport {
  int a = 0, b = 0, c = 0;
  bool multiplier = false;
  bool ok() const { return a == 0 && b == 0 && c == 0 && multiplier; }
};
RelationReport check_relations(const Oct& o, const Simil& t, const TrialityPair& p);

enum class Sheet { plus, minus };
/// Class of t+ (resp. t-), as a representative.
Mat theta(const Oct& o, Sheet s, const Mat& t);

struct Triple {
  QPair a, b, c;
  Components alpha;  // C(A) -> B x C through the central idempotents
};
/// (P, C+, C-) for a degree 8 pair with trivial discriminant.
Triple make_triple(const QPair& p);

struct TripleReport {
  bool ok = true;
  std::vector<std::string> lines;
};
/// Checks that the components of C(B) are {C, A} and those of C(C) are {A, B}
/// by pair invariants, and that B and C agree when A is split.
TripleReport verify_triple_permutation(const Triple& t);

}  // namespace cliffpair

#endif
