#include "cliffpair/scalars.hpp"

#include <cctype>
#include <map>
#include <mutex>
#include <sstream>
#include <tuple>

namespace cliffpair {

namespace {

// Polynomials over GF(2) packed into machine words.
int deg2(std::uint64_t p) {
  int d = -1;
  while (p) {
    ++d;
    p >>= 1;
  }
  return d;
}

std::uint64_t mod2(std::uint64_t a, std::uint64_t m) {
  const int dm = deg2(m);
  for (int d = deg2(a); d >= dm; d = deg2(a)) a ^= m << (d - dm);
  return a;
}

std::uint64_t mulmod2(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  std::uint64_t r = 0;
  a = mod2(a, m);
  const int dm = deg2(m);
  while (b) {
    if (b & 1) r ^= a;
    b >>= 1;
    a <<= 1;
    if (deg2(a) == dm) a ^= m;
  }
  return r;
}

std::uint64_t gcd2(std::uint64_t a, std::uint64_t b) {
  while (b) {
    a = mod2(a, b);
    std::swap(a, b);
  }
  return a;
}

std::uint64_t default_modulus(int k) {
  for (std::uint64_t m = (1ull << k) | 1ull; m < (2ull << k); m += 2)
    if (is_irreducible_gf2(m)) return m;
  throw AlgebraError("no irreducible polynomial found");
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    out.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::uint64_t powmod2(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mulmod2(r, a, m);
    a = mulmod2(a, a, m);
    e >>= 1;
  }
  return r;
}

void trim(RawPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

std::string gf2_poly_str(std::uint64_t bits, char var) {
  if (bits == 0) return "0";
  std::string out;
  for (int d = deg2(bits); d >= 0; --d) {
    if (!((bits >> d) & 1)) continue;
    if (!out.empty()) out += '+';
    if (d == 0)
      out += '1';
    else if (d == 1)
      out += var;
    else
      out += std::string(1, var) + "^" + std::to_string(d);
  }
  return out;
}

}  // namespace

bool is_irreducible_gf2(std::uint64_t f) {
  const int k = deg2(f);
  if (k < 1 || k > 62) return false;
  if (k == 1) return true;
  if (!(f & 1)) return false;
  // Ben-Or: f has no factor of degree d iff gcd(x^(2^d) - x, f) = 1.
  std::uint64_t x = 2, xp = 2;
  for (int d = 1; d <= k / 2; ++d) {
    xp = mulmod2(xp, xp, f);
    if (gcd2(f, xp ^ x) != 1) return false;
  }
  return true;
}

class FieldRegistry {
 public:
  static FieldRegistry& instance() {
    static auto* r = new FieldRegistry();  // immortal: handles outlive static destruction
    return *r;
  }

  const FieldCtx* binary(int k, std::uint64_t modulus) {
    if (k < 1 || k > 16) throw AlgebraError("binary field degree must be in 1..16");
    if (deg2(modulus) != k) throw AlgebraError("modulus degree does not match extension degree");
    if (!is_irreducible_gf2(modulus)) throw AlgebraError("modulus is not irreducible: " + gf2_poly_str(modulus, 'g'));
    std::lock_guard<std::mutex> lock(mu_);
    auto key = std::make_tuple(0, modulus, static_cast<const FieldCtx*>(nullptr), std::string());
    auto it = ctxs_.find(key);
    if (it != ctxs_.end()) return it->second.get();
    std::unique_ptr<FieldCtx> ctx(new FieldCtx());
    ctx->kind_ = FieldKind::binary_extension;
    ctx->degree_ = k;
    ctx->modulus_ = modulus;
    ctx->size_ = 1u << k;
    const std::uint64_t order = ctx->size_ - 1;
    std::uint64_t gen = 1;
    if (order > 1) {
      const auto ps = prime_factors(order);
      for (gen = 2; gen < ctx->size_; ++gen) {
        bool ok = true;
        for (auto p : ps)
          if (powmod2(gen, order / p, modulus) == 1) ok = false;
        if (ok) break;
      }
    }
    ctx->exp_.assign(2 * order + 1, 0);
    ctx->log_.assign(ctx->size_, 0);
    std::uint64_t cur = 1;
    for (std::uint64_t i = 0; i < order; ++i) {
      ctx->exp_[i] = static_cast<std::uint32_t>(cur);
      ctx->exp_[i + order] = static_cast<std::uint32_t>(cur);
      ctx->log_[cur] = static_cast<std::uint32_t>(i);
      cur = mulmod2(cur, gen, modulus);
    }
    ctx->as_root_.assign(ctx->size_, FieldCtx::kNoRoot);
    for (std::uint32_t x = 0; x < ctx->size_; x += 2) {
      const std::uint32_t img = ctx->mul(x, x) ^ x;
      ctx->as_root_[img] = x;
    }
    const FieldCtx* raw = ctx.get();
    ctxs_.emplace(key, std::move(ctx));
    return raw;
  }

  const FieldCtx* rational(const FieldCtx* base, const std::string& var) {
    if (!base || !base->is_binary()) throw AlgebraError("rational function fields need a binary-extension base");
    if (var.empty() || var == "g") throw AlgebraError("invalid indeterminate name");
    std::lock_guard<std::mutex> lock(mu_);
    auto key = std::make_tuple(1, std::uint64_t{0}, base, var);
    auto it = ctxs_.find(key);
    if (it != ctxs_.end()) return it->second.get();
    std::unique_ptr<FieldCtx> ctx(new FieldCtx());
    ctx->kind_ = FieldKind::rational_function;
    ctx->degree_ = base->degree();
    ctx->modulus_ = base->modulus();
    ctx->size_ = 0;
    ctx->base_ = base;
    ctx->var_ = var;
    const FieldCtx* raw = ctx.get();
    ctxs_.emplace(key, std::move(ctx));
    return raw;
  }

 private:
  std::mutex mu_;
  std::map<std::tuple<int, std::uint64_t, const FieldCtx*, std::string>, std::unique_ptr<FieldCtx>> ctxs_;
};

Field binary_field(int k, std::uint64_t modulus) { return Field(FieldRegistry::instance().binary(k, modulus)); }

Field binary_field(int k) {
  if (k < 1 || k > 16) throw AlgebraError("binary field degree must be in 1..16");
  return binary_field(k, default_modulus(k));
}

Field gf2() { return binary_field(1, 0b11); }
Field gf4() { return binary_field(2, 0b111); }

Field rational_function_field(Field base, const std::string& variable) {
  return Field(FieldRegistry::instance().rational(base.get(), variable));
}

// ---------------------------------------------------------------- FieldCtx

std::string FieldCtx::name() const {
  if (kind_ == FieldKind::rational_function) return base_->name() + "(" + var_ + ")";
  if (degree_ == 1) return "gf2";
  return "gf" + std::to_string(size_) + ":" + gf2_poly_str(modulus_, 'g');
}

std::uint32_t FieldCtx::inv(std::uint32_t a) const {
  if (a == 0) throw AlgebraError("division by zero");
  const std::uint32_t order = size_ - 1;
  return exp_[(order - log_[a]) % order];
}

std::uint32_t FieldCtx::as_root(std::uint32_t a) const { return as_root_[a]; }

Fe FieldCtx::element(std::uint32_t bits) const {
  if (!is_binary()) return fraction(RawPoly{bits}, RawPoly{1});
  if (bits >= size_) throw AlgebraError("element bits out of range for " + name());
  return Fe(this, bits);
}

Fe FieldCtx::fraction(RawPoly num, RawPoly den) const {
  if (is_binary()) {
    trim(num);
    trim(den);
    if (num.size() > 1 || den.size() > 1) throw AlgebraError("polynomial in t given for a finite field");
    if (den.empty()) throw AlgebraError("zero denominator");
    const std::uint32_t n = num.empty() ? 0 : num[0];
    return Fe(this, mul(n, inv(den[0])));
  }
  const FieldCtx& b = *base_;
  trim(num);
  trim(den);
  if (den.empty()) throw AlgebraError("zero denominator");
  auto f = std::make_shared<Fraction>();
  if (num.empty()) {
    f->den = {1};
  } else {
    RawPoly g = b.poly_gcd(num, den);
    RawPoly q, r;
    if (g.size() > 1) {
      b.poly_divmod(num, g, q, r);
      num = q;
      b.poly_divmod(den, g, q, r);
      den = q;
    }
    const std::uint32_t li = b.inv(den.back());
    for (auto& c : num) c = b.mul(c, li);
    for (auto& c : den) c = b.mul(c, li);
    f->num = std::move(num);
    f->den = std::move(den);
  }
  return Fe(this, std::shared_ptr<const Fraction>(std::move(f)));
}

Fe FieldCtx::zero() const { return element(0); }
Fe FieldCtx::one() const { return element(1); }

RawPoly FieldCtx::poly_add(const RawPoly& a, const RawPoly& b) const {
  RawPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] ^= a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] ^= b[i];
  trim(r);
  return r;
}

RawPoly FieldCtx::poly_mul(const RawPoly& a, const RawPoly& b) const {
  if (a.empty() || b.empty()) return {};
  RawPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] ^= mul(a[i], b[j]);
  }
  trim(r);
  return r;
}

void FieldCtx::poly_divmod(const RawPoly& a, const RawPoly& b, RawPoly& q, RawPoly& r) const {
  if (b.empty()) throw AlgebraError("polynomial division by zero");
  r = a;
  trim(r);
  q.assign(r.size() >= b.size() ? r.size() - b.size() + 1 : 0, 0);
  const std::uint32_t li = inv(b.back());
  while (r.size() >= b.size()) {
    const std::size_t shift = r.size() - b.size();
    const std::uint32_t c = mul(r.back(), li);
    q[shift] = c;
    for (std::size_t j = 0; j < b.size(); ++j) r[shift + j] ^= mul(c, b[j]);
    trim(r);
  }
  trim(q);
}

RawPoly FieldCtx::poly_gcd(RawPoly a, RawPoly b) const {
  trim(a);
  trim(b);
  while (!b.empty()) {
    RawPoly q, r;
    poly_divmod(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const std::uint32_t li = inv(a.back());
    for (auto& c : a) c = mul(c, li);
  }
  return a;
}

std::string FieldCtx::element_str(std::uint32_t bits) const { return gf2_poly_str(bits, 'g'); }

// ---------------------------------------------------------------- Field

Fe Field::zero() const { return ctx_->zero(); }
Fe Field::one() const { return ctx_->one(); }
Fe Field::from_bits(std::uint32_t bits) const { return ctx_->element(bits); }
std::string Field::name() const { return ctx_ ? ctx_->name() : std::string("prime"); }

// ---------------------------------------------------------------- Fe

const FieldCtx* Fe::common(const Fe& a, const Fe& b) {
  if (a.ctx_ == b.ctx_) return a.ctx_;
  if (!a.ctx_) return b.ctx_;
  if (!b.ctx_) return a.ctx_;
  throw AlgebraError("arithmetic between elements of different fields: " + a.ctx_->name() + " and " +
                     b.ctx_->name());
}

Fe Fe::promoted(const FieldCtx* target) const {
  if (ctx_ == target || !target) return *this;
  return target->element(bits_);
}

bool Fe::is_zero() const {
  if (frac_) return frac_->num.empty();
  return bits_ == 0;
}

bool Fe::is_one() const {
  if (frac_) return frac_->num.size() == 1 && frac_->num[0] == 1 && frac_->den.size() == 1;
  return bits_ == 1;
}

std::uint32_t Fe::bits() const {
  if (frac_) throw AlgebraError("bits() on a rational-function element");
  return bits_;
}

const Fraction& Fe::fraction() const {
  if (!frac_) throw AlgebraError("fraction() on a finite-field element");
  return *frac_;
}

Fe Fe::inverse() const {
  if (is_zero()) throw AlgebraError("division by zero");
  if (!ctx_) return *this;
  if (ctx_->is_binary()) return Fe(ctx_, ctx_->inv(bits_));
  return ctx_->fraction(frac_->den, frac_->num);
}

Fe operator+(const Fe& a, const Fe& b) {
  const FieldCtx* c = Fe::common(a, b);
  if (!c || c->is_binary()) return Fe(c, a.bits_ ^ b.bits_);
  const Fe x = a.promoted(c), y = b.promoted(c);
  if (x.is_zero()) return y;
  if (y.is_zero()) return x;
  const FieldCtx& base = *c->base();
  const Fraction& p = *x.frac_;
  const Fraction& q = *y.frac_;
  if (p.den == q.den) return c->fraction(base.poly_add(p.num, q.num), p.den);
  return c->fraction(base.poly_add(base.poly_mul(p.num, q.den), base.poly_mul(q.num, p.den)),
                     base.poly_mul(p.den, q.den));
}

Fe operator*(const Fe& a, const Fe& b) {
  const FieldCtx* c = Fe::common(a, b);
  if (!c) return Fe(a.bits_ & b.bits_);
  if (c->is_binary()) return Fe(c, c->mul(a.bits_, b.bits_));
  const Fe x = a.promoted(c), y = b.promoted(c);
  if (x.is_zero() || y.is_one()) return x;
  if (y.is_zero() || x.is_one()) return y;
  const FieldCtx& base = *c->base();
  return c->fraction(base.poly_mul(x.frac_->num, y.frac_->num), base.poly_mul(x.frac_->den, y.frac_->den));
}

bool operator==(const Fe& a, const Fe& b) {
  const FieldCtx* c = Fe::common(a, b);
  if (!c || c->is_binary()) return a.bits_ == b.bits_;
  const Fe x = a.promoted(c), y = b.promoted(c);
  return x.frac_->num == y.frac_->num && x.frac_->den == y.frac_->den;
}

namespace {

std::string raw_poly_str(const FieldCtx& base, const RawPoly& p, const std::string& var) {
  if (p.empty()) return "0";
  std::string out;
  for (std::size_t d = p.size(); d-- > 0;) {
    if (!p[d]) continue;
    if (!out.empty()) out += '+';
    std::string coef = base.element_str(p[d]);
    const bool compound = coef.find('+') != std::string::npos;
    if (d == 0) {
      out += compound ? "(" + coef + ")" : coef;
      continue;
    }
    if (p[d] != 1) out += (compound ? "(" + coef + ")" : coef) + "*";
    out += var;
    if (d > 1) out += "^" + std::to_string(d);
  }
  return out;
}

}  // namespace

std::string Fe::str() const {
  if (!ctx_) return bits_ ? "1" : "0";
  if (ctx_->is_binary()) return ctx_->element_str(bits_);
  const FieldCtx& base = *ctx_->base();
  std::string num = raw_poly_str(base, frac_->num, ctx_->variable());
  if (frac_->den.size() == 1) return num;
  std::string den = raw_poly_str(base, frac_->den, ctx_->variable());
  const auto wrap = [](const std::string& s) {
    return s.find_first_of("+*") != std::string::npos ? "(" + s + ")" : s;
  };
  return wrap(num) + "/" + wrap(den);
}

// ---------------------------------------------------------------- parsing

namespace {

// Recursive-descent parser producing fractions over base[var].
// sum := product ('+' product)* ; product := factor ('*'? factor)* ;
// factor := '(' quotient ')' | 'g'['^'n] | var['^'n] | '0' | '1' ;
// quotient := sum ('/' sum)?
class ElementParser {
 public:
  ElementParser(const FieldCtx& base, std::string var, std::string_view text)
      : base_(base), var_(std::move(var)), s_(text) {}

  std::pair<RawPoly, RawPoly> parse() {
    auto r = quotient();
    skip();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return r;
  }

 private:
  using Frac = std::pair<RawPoly, RawPoly>;

  [[noreturn]] void fail(const std::string& what) const {
    throw AlgebraError("cannot parse element '" + std::string(s_) + "': " + what);
  }
  void skip() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  Frac add(const Frac& a, const Frac& b) const {
    return {base_.poly_add(base_.poly_mul(a.first, b.second), base_.poly_mul(b.first, a.second)),
            base_.poly_mul(a.second, b.second)};
  }
  Frac mul(const Frac& a, const Frac& b) const {
    return {base_.poly_mul(a.first, b.first), base_.poly_mul(a.second, b.second)};
  }
  Frac div(const Frac& a, const Frac& b) const {
    RawPoly bn = b.first;
    trim(bn);
    if (bn.empty()) fail("zero denominator");
    return {base_.poly_mul(a.first, b.second), base_.poly_mul(a.second, bn)};
  }
  Frac quotient() {
    Frac r = sum();
    while (eat('/')) r = div(r, sum());
    return r;
  }
  Frac sum() {
    Frac r = product();
    while (eat('+')) r = add(r, product());
    return r;
  }
  bool factor_starts() {
    skip();
    if (pos_ >= s_.size()) return false;
    const char c = s_[pos_];
    return c == '(' || c == 'g' || c == '0' || c == '1' ||
           (!var_.empty() && s_.substr(pos_, var_.size()) == var_);
  }
  Frac product() {
    Frac r = factor();
    for (;;) {
      if (eat('*')) {
        r = mul(r, factor());
      } else if (factor_starts()) {
        r = mul(r, factor());
      } else {
        break;
      }
    }
    return r;
  }
  unsigned exponent() {
    if (!eat('^')) return 1;
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected exponent");
    return static_cast<unsigned>(std::stoul(std::string(s_.substr(start, pos_ - start))));
  }
  Frac factor() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    if (eat('(')) {
      Frac r = quotient();
      if (!eat(')')) fail("expected ')'");
      return r;
    }
    const char c = s_[pos_];
    if (c == '0' || c == '1') {
      ++pos_;
      if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("only 0 and 1 are integer literals");
      return {c == '1' ? RawPoly{1} : RawPoly{}, RawPoly{1}};
    }
    if (c == 'g') {
      ++pos_;
      const unsigned e = exponent();
      const std::uint64_t bits = powmod2(2, e, base_.modulus());
      RawPoly p;
      if (bits) p.push_back(static_cast<std::uint32_t>(bits));
      return {p, RawPoly{1}};
    }
    if (!var_.empty() && s_.substr(pos_, var_.size()) == var_) {
      pos_ += var_.size();
      const unsigned e = exponent();
      RawPoly p(e + 1, 0);
      p[e] = 1;
      return {p, RawPoly{1}};
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  const FieldCtx& base_;
  std::string var_;
  std::string_view s_;
  std::size_t pos_ = 0;
};

std::string strip(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

}  // namespace

Fe Field::parse(std::string_view raw) const {
  if (!ctx_) throw AlgebraError("parse on an empty field handle");
  const std::string text = strip(raw);
  if (text.empty()) throw AlgebraError("empty element literal");
  if (text.front() == '[') {
    if (!ctx_->is_binary()) throw AlgebraError("bit-list literals are only valid in finite fields");
    if (text.back() != ']') throw AlgebraError("unterminated bit list: " + text);
    std::uint32_t bits = 0;
    int idx = 0;
    std::stringstream ss(text.substr(1, text.size() - 2));
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = strip(item);
      if (item == "1") {
        if (idx >= ctx_->degree()) throw AlgebraError("bit list longer than extension degree: " + text);
        bits |= 1u << idx;
      } else if (item != "0") {
        throw AlgebraError("bit list entries must be 0 or 1: " + text);
      }
      ++idx;
    }
    return ctx_->element(bits);
  }
  const FieldCtx& base = ctx_->is_binary() ? *ctx_ : *ctx_->base();
  ElementParser p(base, ctx_->is_binary() ? std::string() : ctx_->variable(), text);
  auto [num, den] = p.parse();
  return ctx_->fraction(std::move(num), std::move(den));
}

Field parse_field(std::string_view raw) {
  std::string h = strip(raw);
  std::string var;
  if (!h.empty() && h.back() == ')') {
    const auto open = h.rfind('(');
    if (open == std::string::npos) throw AlgebraError("malformed field header: " + h);
    var = strip(h.substr(open + 1, h.size() - open - 2));
    h = strip(h.substr(0, open));
    if (var.empty()) throw AlgebraError("missing indeterminate in field header");
  }
  if (h.rfind("gf", 0) != 0) throw AlgebraError("field header must start with gf: " + std::string(raw));
  std::string size_part = h.substr(2), mod_part;
  if (auto colon = size_part.find(':'); colon != std::string::npos) {
    mod_part = strip(size_part.substr(colon + 1));
    size_part = strip(size_part.substr(0, colon));
  }
  if (size_part.empty() || size_part.find_first_not_of("0123456789") != std::string::npos)
    throw AlgebraError("bad field size in header: " + std::string(raw));
  const unsigned long q = std::stoul(size_part);
  int k = 0;
  while ((1ul << k) < q && k < 20) ++k;
  if (q < 2 || (1ul << k) != q || k > 16) throw AlgebraError("field size must be 2^k with 1 <= k <= 16");
  Field f;
  if (mod_part.empty()) {
    f = k == 2 ? gf4() : binary_field(k);
  } else {
    // The modulus is written as a polynomial in g; read its coefficients over GF(2).
    std::uint64_t m = 0;
    std::stringstream ss(mod_part);
    std::string term;
    while (std::getline(ss, term, '+')) {
      term = strip(term);
      int e;
      if (term == "1") {
        e = 0;
      } else if (term == "g") {
        e = 1;
      } else if (term.rfind("g^", 0) == 0 && term.size() > 2 &&
                 term.find_first_not_of("0123456789", 2) == std::string::npos) {
        e = std::stoi(term.substr(2));
      } else {
        throw AlgebraError("bad modulus term '" + term + "'");
      }
      if (e > 32) throw AlgebraError("modulus degree too large");
      m ^= 1ull << e;
    }
    f = binary_field(k, m);
  }
  if (!var.empty()) f = rational_function_field(f, var);
  return f;
}

// ---------------------------------------------------------------- Artin-Schreier

int absolute_trace(const Fe& a) {
  if (!a.ctx()) return static_cast<int>(a.bits());  // the trace of GF(2) is the identity
  const FieldCtx& c = *a.ctx();
  if (!c.is_binary()) throw AlgebraError("absolute trace needs a finite field");
  std::uint32_t t = 0, x = a.bits();
  for (int i = 0; i < c.degree(); ++i) {
    t ^= x;
    x = c.mul(x, x);
  }
  if (t > 1) throw AlgebraError("trace left the prime field");
  return static_cast<int>(t);
}

std::optional<Fe> artin_schreier_solve(const Fe& a) {
  if (!a.ctx()) {
    if (a.bits() == 0) return Fe(0);
    return std::nullopt;
  }
  const FieldCtx& c = *a.ctx();
  if (!c.is_binary()) throw AlgebraError("Artin-Schreier solver is only available over finite fields");
  const std::uint32_t r = c.as_root(a.bits());
  if (r == FieldCtx::kNoRoot) return std::nullopt;
  return c.element(r);
}

Fe frobenius_sqrt(const Fe& a) {
  if (!a.ctx()) return a;
  const FieldCtx& c = *a.ctx();
  if (!c.is_binary()) throw AlgebraError("square roots are only available over finite fields");
  std::uint32_t x = a.bits();
  for (int i = 1; i < c.degree(); ++i) x = c.mul(x, x);
  return c.element(x);
}

int artin_schreier_class(const Fe& a) {
  if (a.ctx() && !a.ctx()->is_binary()) throw AlgebraError("Artin-Schreier class needs a finite field");
  return absolute_trace(a);
}

WpClass wp_class(const Fe& a) {
  WpClass w{a, std::nullopt};
  if (!a.ctx() || a.ctx()->is_binary()) {
    w.bit = absolute_trace(a);
    return w;
  }
  // A constant of the base field lies in wp(F(t)) iff it does in wp(F): the
  // roots of x^2+x-c are algebraic over F, which is algebraically closed in F(t).
  const Fraction& f = a.fraction();
  if (f.den.size() == 1 && f.num.size() <= 1) {
    const Fe c = Field(a.ctx()->base()).from_bits(f.num.empty() ? 0 : f.num[0]);
    w.bit = absolute_trace(c);
  }
  return w;
}

std::string WpClass::str() const {
  if (bit) return std::to_string(*bit);
  return "undecided(" + value.str() + ")";
}

Fe fraction_normalize(Field field, const RawPoly& num, const RawPoly& den) {
  if (!field) throw AlgebraError("fraction_normalize on an empty field handle");
  return field->fraction(num, den);
}

}  // namespace cliffpair
