// Brute-force reference computations used only by the tests. Everything here
// is deliberately naive and independent of the library algorithms.
#ifndef CLIFFPAIR_TESTS_ORACLES_HPP
#define CLIFFPAIR_TESTS_ORACLES_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <vector>

#include "cliffpair/exactla.hpp"
#include "cliffpair/rng.hpp"

namespace oracle {

using cliffpair::Fe;
using cliffpair::Field;
using cliffpair::Mat;
using cliffpair::Vec;

inline std::vector<Fe> elements(Field f) {
  std::vector<Fe> out;
  for (std::uint32_t b = 0; b < f->size(); ++b) out.push_back(f.from_bits(b));
  return out;
}

inline bool in_wp_image(const Fe& a) {
  for (const Fe& x : elements(a.field()))
    if (x * x + x == a) return true;
  return false;
}

/// Leibniz expansion; fine for n <= 6.
inline Fe det(const Mat& a) {
  const int n = static_cast<int>(a.rows());
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  Fe s(0);
  do {
    Fe t(1);
    for (int i = 0; i < n; ++i) t *= a(i, p[i]);
    s += t;  // signs vanish in characteristic 2
  } while (std::next_permutation(p.begin(), p.end()));
  return s;
}

inline Fe eval(const std::vector<Fe>& poly, const Fe& x) {
  Fe s(0);
  for (std::size_t i = poly.size(); i-- > 0;) s = s * x + poly[i];
  return s;
}

/// Every vector of F^n, in lexicographic bit order. Caller keeps |F|^n small.
inline void for_each_vector(Field f, int n, const std::function<void(const Vec&)>& fn) {
  const std::uint64_t q = f->size();
  std::uint64_t total = 1;
  for (int i = 0; i < n; ++i) total *= q;
  Vec v(n);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::uint64_t r = idx;
    for (int i = 0; i < n; ++i) {
      v[i] = f.from_bits(static_cast<std::uint32_t>(r % q));
      r /= q;
    }
    fn(v);
  }
}

inline Fe quad_value(const Mat& gram_upper, const Vec& x) {
  Fe s(0);
  for (int i = 0; i < gram_upper.rows(); ++i)
    for (int j = i; j < gram_upper.cols(); ++j) s += gram_upper(i, j) * x[i] * x[j];
  return s;
}

/// Number of nonzero vectors with q(x) = 0, by enumeration.
inline std::uint64_t count_isotropic(const Mat& gram_upper) {
  std::uint64_t c = 0;
  const Field f = cliffpair::field_of(gram_upper);
  for_each_vector(f, static_cast<int>(gram_upper.rows()), [&](const Vec& v) {
    if (!cliffpair::is_zero(v) && quad_value(gram_upper, v).is_zero()) ++c;
  });
  return c;
}

/// Arf class from the zero count: a nonsingular 2m-dim form over GF(s) has
/// s^(2m-1) + e(s^m - s^(m-1)) - 1 nonzero zeros, e = +1 iff the Arf class is 0.
/// Returns -1 when the count fits neither.
inline int arf_by_counting(const Mat& gram_upper, std::uint64_t s) {
  const int m = static_cast<int>(gram_upper.rows()) / 2;
  auto pw = [](std::uint64_t b, int e) {
    std::uint64_t r = 1;
    while (e-- > 0) r *= b;
    return r;
  };
  const std::uint64_t plus = pw(s, 2 * m - 1) + pw(s, m) - pw(s, m - 1) - 1;
  const std::uint64_t minus = pw(s, 2 * m - 1) - pw(s, m) + pw(s, m - 1) - 1;
  const std::uint64_t c = count_isotropic(gram_upper);
  return c == plus ? 0 : c == minus ? 1 : -1;
}

inline Mat random_mat(cliffpair::Rng& rng, Field f, int r, int c) {
  Mat m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = rng.element(f);
  return m;
}

inline Mat naive_mul(const Mat& a, const Mat& b) {
  Mat out(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) {
      Fe s(0);
      for (int k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
      out(i, j) = s;
    }
  return out;
}

}  // namespace oracle

#endif
