// Deterministic random source. Bounded sampling is done here rather than with
// std distributions, whose output is not specified across standard libraries.
#ifndef CLIFFPAIR_RNG_HPP
#define CLIFFPAIR_RNG_HPP

#include <cstdint>
#include <random>

#include "cliffpair/scalars.hpp"

namespace cliffpair {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next() { return gen_(); }

  /// Uniform in [0, n).
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) throw AlgebraError("Rng::below(0)");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do x = gen_();
    while (x >= limit);
    return x % n;
  }

  bool coin() { return gen_() & 1; }

  /// Uniform element of a finite field; for function fields a random fraction
  /// of low degree.
  Fe element(Field f) {
    if (f->is_binary()) return f.from_bits(static_cast<std::uint32_t>(below(f->size())));
    const FieldCtx& base = *f->base();
    RawPoly num(3), den(2);
    for (auto& c : num) c = static_cast<std::uint32_t>(below(base.size()));
    den[0] = static_cast<std::uint32_t>(below(base.size()));
    den[1] = coin() ? 1u : 0u;
    if (den[1] == 0 && den[0] == 0) den[0] = 1;
    return f->fraction(num, den);
  }

  Fe nonzero(Field f) {
    for (;;) {
      Fe x = element(f);
      if (!x.is_zero()) return x;
    }
  }

 private:
  std::mt19937_64 gen_;
};

/// Independent per-case seed derived from a suite seed (splitmix64 finalizer).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace cliffpair

#endif
