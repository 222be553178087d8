#include "rexp/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace rexp {

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("Rng::below: n must be positive");
  std::uint64_t x = next_u64();
  unsigned __int128 m = static_cast<unsigned __int128>(x) * n;
  auto low = static_cast<std::uint64_t>(m);
  if (low < n) {
    const std::uint64_t threshold = (0 - n) % n;
    while (low < threshold) {
      x = next_u64();
      m = static_cast<unsigned __int128>(x) * n;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

namespace {

// Sequential inversion, used for small means.
std::int64_t poisson_inversion(Rng& rng, double mean) {
  const double u = rng.uniform();
  double p = std::exp(-mean);
  double cdf = p;
  std::int64_t k = 0;
  while (u > cdf) {
    ++k;
    p *= mean / static_cast<double>(k);
    const double next = cdf + p;
    // cdf stopped moving: remaining tail mass is below double resolution
    if (next == cdf) break;
    cdf = next;
  }
  return k;
}

// Hörmann (1993), "The transformed rejection method for generating Poisson
// random variables" (PTRS). Exact for mean >= 10.
std::int64_t poisson_ptrs(Rng& rng, double mean) {
  const double slam = std::sqrt(mean);
  const double loglam = std::log(mean);
  const double b = 0.931 + 2.53 * slam;
  const double a = -0.059 + 0.02483 * b;
  const double invalpha = 1.1239 + 1.1328 / (b - 3.4);
  const double vr = 0.9277 - 3.6224 / (b - 2.0);
  for (;;) {
    const double u = rng.uniform() - 0.5;
    const double v = rng.uniform();
    const double us = 0.5 - std::fabs(u);
    const double kd = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= vr) return static_cast<std::int64_t>(kd);
    if (kd < 0.0 || (us < 0.013 && v > us)) continue;
    const double lhs = std::log(v) + std::log(invalpha) - std::log(a / (us * us) + b);
    const double rhs = -mean + kd * loglam - std::lgamma(kd + 1.0);
    if (lhs <= rhs) return static_cast<std::int64_t>(kd);
  }
}

}  // namespace

std::int64_t Rng::poisson(double mean) {
  if (!(mean >= 0.0)) throw std::invalid_argument("Rng::poisson: mean must be nonnegative");
  if (mean == 0.0) return 0;
  if (mean <= 10.0) return poisson_inversion(*this, mean);
  return poisson_ptrs(*this, mean);
}

}  // namespace rexp
