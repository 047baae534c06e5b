// Exact scalars in characteristic 2: GF(2^k) and rational function fields GF(2^k)(t).
#ifndef CLIFFPAIR_SCALARS_HPP
#define CLIFFPAIR_SCALARS_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cliffpair {

/// Thrown for every violated precondition or malformed input in the library.
class AlgebraError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class FieldKind { binary_extension, rational_function };

/// Polynomial over a binary-extension field; coefficients are raw element bit
/// patterns, lowest degree first, no trailing zeros (the zero polynomial is empty).
using RawPoly = std::vector<std::uint32_t>;

struct Fraction {
  RawPoly num;
  RawPoly den;  // monic, gcd(num, den) = 1
};

class FieldCtx;
class Fe;

/// Lightweight handle to an interned field context. Contexts live for the
/// whole program, so handles compare by identity.
class Field {
 public:
  Field() = default;
  explicit Field(const FieldCtx* ctx) : ctx_(ctx) {}

  const FieldCtx& operator*() const { return *ctx_; }
  const FieldCtx* operator->() const { return ctx_; }
  const FieldCtx* get() const { return ctx_; }
  explicit operator bool() const { return ctx_ != nullptr; }
  friend bool operator==(Field a, Field b) { return a.ctx_ == b.ctx_; }

  Fe zero() const;
  Fe one() const;
  Fe from_bits(std::uint32_t bits) const;
  Fe parse(std::string_view text) const;
  std::string name() const;

 private:
  const FieldCtx* ctx_ = nullptr;
};

/// Field element. A default-constructed or integer-constructed element carries
/// no context; it stands for the prime-field constant 0 or 1, which embeds
/// canonically in every field of characteristic 2. Mixing two different
/// contexts is an error.
class Fe {
 public:
  Fe() = default;
  Fe(int v) : bits_(static_cast<std::uint32_t>(v) & 1u) {}  // NOLINT(google-explicit-constructor)

  const FieldCtx* ctx() const { return ctx_; }
  Field field() const { return Field(ctx_); }
  bool is_zero() const;
  bool is_one() const;

  /// Bit pattern of a binary-extension element (or of a context-free constant).
  std::uint32_t bits() const;
  /// Canonical fraction of a rational-function element.
  const Fraction& fraction() const;

  Fe inverse() const;
  Fe square() const { return *this * *this; }
  std::string str() const;

  Fe& operator+=(const Fe& o) { return *this = *this + o; }
  Fe& operator-=(const Fe& o) { return *this = *this + o; }
  Fe& operator*=(const Fe& o) { return *this = *this * o; }
  Fe& operator/=(const Fe& o) { return *this = *this / o; }
  Fe operator-() const { return *this; }

  friend Fe operator+(const Fe& a, const Fe& b);
  friend Fe operator-(const Fe& a, const Fe& b) { return a + b; }
  friend Fe operator*(const Fe& a, const Fe& b);
  friend Fe operator/(const Fe& a, const Fe& b) { return a * b.inverse(); }
  friend bool operator==(const Fe& a, const Fe& b);
  friend bool operator!=(const Fe& a, const Fe& b) { return !(a == b); }

 private:
  friend class FieldCtx;
  Fe(const FieldCtx* ctx, std::uint32_t bits) : ctx_(ctx), bits_(bits) {}
  Fe(const FieldCtx* ctx, std::shared_ptr<const Fraction> f) : ctx_(ctx), frac_(std::move(f)) {}

  static const FieldCtx* common(const Fe& a, const Fe& b);
  Fe promoted(const FieldCtx* target) const;

  const FieldCtx* ctx_ = nullptr;
  std::uint32_t bits_ = 0;
  std::shared_ptr<const Fraction> frac_;
};

inline std::ostream& operator<<(std::ostream& os, const Fe& x) { return os << x.str(); }

class FieldCtx {
 public:
  FieldKind kind() const { return kind_; }
  bool is_binary() const { return kind_ == FieldKind::binary_extension; }
  bool is_finite() const { return is_binary(); }

  /// Extension degree k of GF(2^k) (of the base for rational-function fields).
  int degree() const { return degree_; }
  /// Modulus bit pattern including the leading term.
  std::uint64_t modulus() const { return modulus_; }
  std::uint32_t size() const { return size_; }
  const FieldCtx* base() const { return base_; }
  const std::string& variable() const { return var_; }
  std::string name() const;

  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  std::uint32_t inv(std::uint32_t a) const;
  /// Root x of x^2+x=a with clear constant bit, or kNoRoot.
  std::uint32_t as_root(std::uint32_t a) const;
  static constexpr std::uint32_t kNoRoot = 0xffffffffu;

  Fe element(std::uint32_t bits) const;
  Fe fraction(RawPoly num, RawPoly den) const;
  Fe zero() const;
  Fe one() const;

  // Polynomial helpers over this (binary) field.
  RawPoly poly_add(const RawPoly& a, const RawPoly& b) const;
  RawPoly poly_mul(const RawPoly& a, const RawPoly& b) const;
  void poly_divmod(const RawPoly& a, const RawPoly& b, RawPoly& q, RawPoly& r) const;
  RawPoly poly_gcd(RawPoly a, RawPoly b) const;
  std::string element_str(std::uint32_t bits) const;

 private:
  friend class FieldRegistry;
  FieldCtx() = default;

  FieldKind kind_ = FieldKind::binary_extension;
  int degree_ = 1;
  std::uint64_t modulus_ = 0b11;
  std::uint32_t size_ = 2;
  std::vector<std::uint32_t> exp_;  // doubled length so log sums need no reduction
  std::vector<std::uint32_t> log_;
  std::vector<std::uint32_t> as_root_;
  const FieldCtx* base_ = nullptr;
  std::string var_;
};

/// GF(2^k) with the given modulus (bit pattern incl. x^k), 1 <= k <= 16.
/// The modulus must be irreducible.
Field binary_field(int k, std::uint64_t modulus);
/// GF(2^k) with a fixed default irreducible modulus.
Field binary_field(int k);
Field gf2();
Field gf4();
/// base(t) for a binary-extension base.
Field rational_function_field(Field base, const std::string& variable = "t");

/// Field headers: "gf2", "gf4", "gf16:g^4+g+1", "gf2(t)", "gf4:g^2+g+1(t)".
Field parse_field(std::string_view header);

bool is_irreducible_gf2(std::uint64_t poly);

/// Absolute trace to GF(2); binary-extension fields only.
int absolute_trace(const Fe& a);

/// Root x of x^2 + x = a, or nullopt. Of the two roots x, x+1 the one with
/// vanishing constant bit is returned.
std::optional<Fe> artin_schreier_solve(const Fe& a);

/// The unique square root in a finite field of characteristic 2.
Fe frobenius_sqrt(const Fe& a);

/// Class of a in F/wp(F): 0 iff a = x^2 + x for some x. Finite fields only.
int artin_schreier_class(const Fe& a);

/// Class in F/wp(F) with an explicit "undecided" state for function fields.
struct WpClass {
  Fe value;
  std::optional<int> bit;  // nullopt: undecided

  bool decided() const { return bit.has_value(); }
  std::string str() const;
};
WpClass wp_class(const Fe& a);

/// num/den over the base of a rational-function field, reduced to canonical form.
Fe fraction_normalize(Field field, const RawPoly& num, const RawPoly& den);

}  // namespace cliffpair

#endif  // CLIFFPAIR_SCALARS_HPP
