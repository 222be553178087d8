#pragma once

// Brute-force reference implementations used only by the tests. Each one
// enumerates the defining set directly and shares no code with the library.

#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

namespace oracle {

inline std::int64_t ipow(std::int64_t b, int d) {
  std::int64_t r = 1;
  for (int i = 0; i < d; ++i) r *= b;
  return r;
}

/// Σ_{n<=x} d(n) by trial division.
inline std::int64_t divisor_summatory(std::int64_t x) {
  std::int64_t total = 0;
  for (std::int64_t n = 1; n <= x; ++n)
    for (std::int64_t a = 1; a * a <= n; ++a)
      if (n % a == 0) total += (a * a == n) ? 1 : 2;
  return total;
}

/// Running table of D(n) for n <= x via a divisor sieve.
inline std::vector<std::int64_t> divisor_summatory_table(std::int64_t x) {
  std::vector<std::int64_t> d(static_cast<std::size_t>(x + 1), 0);
  for (std::int64_t a = 1; a <= x; ++a)
    for (std::int64_t m = a; m <= x; m += a) ++d[static_cast<std::size_t>(m)];
  for (std::size_t n = 1; n < d.size(); ++n) d[n] += d[n - 1];
  return d;
}

/// Pairs 1 <= j < k with E - D < k^d - j^d < E + D, full double loop.
inline std::int64_t shell_pairs(int d, double E, double D) {
  std::int64_t count = 0;
  for (std::int64_t j = 1;; ++j) {
    if (ipow(j + 1, d) - ipow(j, d) >= E + D) break;
    for (std::int64_t k = j + 1;; ++k) {
      const auto diff = static_cast<double>(ipow(k, d) - ipow(j, d));
      if (diff >= E + D) break;
      if (std::fabs(diff - E) < D) ++count;
    }
  }
  return count;
}

/// #{(j, k) in Z² : 0 < |k|^d - |j|^d <= x} by scanning the box |j|, |k| <= K.
inline std::int64_t hyperbolic(int d, std::int64_t x) {
  std::int64_t K = 1;
  while (ipow(K + 1, d) - ipow(K, d) <= x) ++K;
  K += 1;
  std::int64_t count = 0;
  for (std::int64_t j = -K; j <= K; ++j)
    for (std::int64_t k = -K - 1; k <= K + 1; ++k) {
      const std::int64_t diff = ipow(std::abs(k), d) - ipow(std::abs(j), d);
      if (diff > 0 && diff <= x) ++count;
    }
  return count;
}

/// #{(a, b, c, e) in [1, M]^4 : a^d + b^d = c^d + e^d}.
inline std::int64_t diophantine2(int d, std::int64_t M) {
  std::int64_t count = 0;
  for (std::int64_t a = 1; a <= M; ++a)
    for (std::int64_t b = 1; b <= M; ++b)
      for (std::int64_t c = 1; c <= M; ++c)
        for (std::int64_t e = 1; e <= M; ++e)
          if (ipow(a, d) + ipow(b, d) == ipow(c, d) + ipow(e, d)) ++count;
  return count;
}

/// Ordered n-tuples of term indices with frequency sum m.
inline std::map<std::int64_t, std::int64_t> representations(const std::vector<std::int64_t>& f, int n) {
  std::map<std::int64_t, std::int64_t> out;
  std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
  for (;;) {
    std::int64_t s = 0;
    for (auto i : idx) s += f[i];
    ++out[s];
    std::size_t pos = 0;
    while (pos < idx.size() && ++idx[pos] == f.size()) idx[pos++] = 0;
    if (pos == idx.size()) break;
  }
  return out;
}

/// #{(j, k) in A^{2n} : Σ f_j = Σ f_k} by direct enumeration of 2n-tuples.
inline std::int64_t even_moment(const std::vector<std::int64_t>& f, int n) {
  std::int64_t count = 0;
  const int len = 2 * n;
  std::vector<std::size_t> idx(static_cast<std::size_t>(len), 0);
  for (;;) {
    std::int64_t s = 0;
    for (int i = 0; i < n; ++i) s += f[idx[static_cast<std::size_t>(i)]];
    for (int i = n; i < len; ++i) s -= f[idx[static_cast<std::size_t>(i)]];
    if (s == 0) ++count;
    std::size_t pos = 0;
    while (pos < idx.size() && ++idx[pos] == f.size()) idx[pos++] = 0;
    if (pos == idx.size()) break;
  }
  return count;
}

}  // namespace oracle
