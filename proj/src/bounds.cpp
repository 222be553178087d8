#include "rexp/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "rexp/moments.hpp"
#include "rexp/processes.hpp"

namespace rexp {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Kahan-compensated accumulator.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double x) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

// Sums pmf terms starting at `start` and moving by `dir` (+1 or -1) until 50
// consecutive terms each fall below 1e-18 of the running mass; the geometric
// remainder beyond the stopping point is added as an analytic bound.
double sum_tail(double mean, std::int64_t start, int dir) {
  CompensatedSum acc;
  int quiet = 0;
  std::int64_t a = start;
  double term = 0.0;
  for (; a >= 0; a += dir) {
    term = std::exp(poisson_log_pmf(mean, a));
    acc.add(term);
    const bool moving_away = dir > 0 ? static_cast<double>(a) > mean : static_cast<double>(a) < mean;
    quiet = (moving_away && term < 1e-18 * acc.sum) ? quiet + 1 : 0;
    if (quiet >= 50 || (moving_away && term == 0.0)) break;
  }
  if (a < 0) return acc.sum;
  // ratio of successive terms beyond a is at most r < 1
  const double r = dir > 0 ? mean / static_cast<double>(a + 1) : static_cast<double>(a) / mean;
  if (r < 1.0) acc.add(term * r / (1.0 - r));
  return acc.sum;
}

double mode_bound(double mean) {
  const double f = std::floor(mean);
  if (f < 1.0) return 1.0;
  return std::min(1.0, 1.0 / std::sqrt(2.0 * std::numbers::pi * f));
}

void check_tol(double tol) {
  if (!(tol > 0.0 && tol <= 1e-3)) throw std::invalid_argument("tol must lie in (0, 1e-3]");
}

// P[Σ d_i N_i = a] with nonnegative coefficients, exact over [0, a].
double nonnegative_combination_pmf(std::span<const double> means, std::span<const std::int64_t> coeffs, std::int64_t a) {
  if (a < 0) return 0.0;
  std::vector<double> dist(static_cast<std::size_t>(a + 1), 0.0);
  dist[0] = 1.0;
  for (std::size_t i = 0; i < means.size(); ++i) {
    const std::int64_t d = coeffs[i];
    std::vector<double> next(dist.size(), 0.0);
    for (std::int64_t x = 0; x * d <= a; ++x) {
      const double w = poisson_pmf(means[i], x);
      if (w == 0.0) continue;
      for (std::int64_t s = 0; s + x * d <= a; ++s)
        next[static_cast<std::size_t>(s + x * d)] += dist[static_cast<std::size_t>(s)] * w;
      if (d == 0) break;
    }
    dist = std::move(next);
  }
  return dist[static_cast<std::size_t>(a)];
}

double log_sqrt_x_log_x(double log_x) {
  // log √(x log x) = (log x + log log x) / 2
  if (log_x <= 0.0) return kNegInf;
  return 0.5 * (log_x + std::log(log_x));
}

NeighborhoodCheck neighborhood(double lx, double ly, double lgap, double C) {
  if (!(C >= 1.0 && C <= 10.0)) throw std::invalid_argument("sqrt_log_neighborhood_check: C must lie in [1, 10]");
  if (!(lx >= 0.0) || !(ly >= 0.0)) throw std::invalid_argument("sqrt_log_neighborhood_check: x and y must be >= 1");
  const double lc = std::log(C);
  const double l2c = std::log(2.0 * C);
  NeighborhoodCheck out;
  if (lx > 50.0 && lgap <= lc + log_sqrt_x_log_x(lx)) out.implication_a = lgap <= l2c + log_sqrt_x_log_x(ly);
  if (ly > 50.0 && lgap >= l2c + log_sqrt_x_log_x(lx)) out.implication_b = lgap >= lc + log_sqrt_x_log_x(ly);
  return out;
}

}  // namespace

BoundCheck BoundCheck::make(double exact, double bound) {
  BoundCheck c;
  c.exact = exact;
  c.bound = bound;
  c.slack = bound - exact;
  c.holds = exact <= bound + 1e-12 * std::max(1.0, bound);
  return c;
}

double poisson_upper_tail(double mean, std::int64_t k) {
  if (k <= 0) return 1.0;
  return sum_tail(mean, k, +1);
}

double poisson_lower_tail(double mean, std::int64_t k) {
  if (k < 0) return 0.0;
  return sum_tail(mean, k, -1);
}

BoundCheck poisson_concentration_check(std::int64_t m, double lam) {
  if (m < 1) throw std::invalid_argument("poisson_concentration_check: m must be >= 1");
  const double root = std::sqrt(static_cast<double>(m));
  if (!(lam > 0.0 && lam <= root)) throw std::invalid_argument("poisson_concentration_check: need 0 < lam <= sqrt(m)");
  const long double radius = static_cast<long double>(lam) * std::sqrt(static_cast<long double>(m));
  const auto mean = static_cast<long double>(m);
  // |a - m| > radius
  const auto upper_start = static_cast<std::int64_t>(std::floor(mean + radius)) + 1;
  const auto lower_end = static_cast<std::int64_t>(std::ceil(mean - radius)) - 1;
  CompensatedSum p;
  p.add(poisson_upper_tail(static_cast<double>(m), upper_start));
  p.add(poisson_lower_tail(static_cast<double>(m), lower_end));
  return BoundCheck::make(std::min(1.0, p.sum), 2.0 * std::exp(-lam * lam / 4.0));
}

double stirling_remainder(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("stirling_remainder: n must be >= 1");
  const auto x = static_cast<long double>(n);
  if (n <= 20) {
    return static_cast<double>(std::lgamma(x + 1.0L) - (x + 0.5L) * std::log(x) + x -
                               0.5L * std::log(2.0L * std::numbers::pi_v<long double>));
  }
  // Stirling series; the truncation error is below the first omitted term 691/(360360 n^11).
  const long double x2 = x * x;
  long double s = 1.0L / 1188.0L;
  s = 1.0L / 1680.0L - s / x2;
  s = 1.0L / 1260.0L - s / x2;
  s = 1.0L / 360.0L - s / x2;
  s = 1.0L / 12.0L - s / x2;
  return static_cast<double>(s / x);
}

BoundCheck pmf_sup_over_t(std::int64_t a) {
  if (a < 1) throw std::invalid_argument("pmf_sup_over_t: a must be >= 1");
  const double log_bound = -0.5 * std::log(2.0 * std::numbers::pi * static_cast<double>(a));
  return BoundCheck::make(std::exp(log_bound - stirling_remainder(a)), std::exp(log_bound));
}

PmfModeCheck pmf_sup_over_a(double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("pmf_sup_over_a: t must be >= 0");
  PmfModeCheck out;
  out.argmax = static_cast<std::int64_t>(std::floor(t));
  out.value = poisson_pmf(t, out.argmax);
  out.bound = mode_bound(t);
  out.scan_confirms = true;
  const auto last = static_cast<std::int64_t>(std::ceil(t + 10.0 * std::sqrt(t) + 10.0));
  for (std::int64_t a = 0; a <= last; ++a)
    if (poisson_pmf(t, a) > out.value * (1.0 + 1e-12)) out.scan_confirms = false;
  return out;
}

std::pair<BoundCheck, BoundCheck> robbins_check(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("robbins_check: n must be >= 1");
  const double mu = stirling_remainder(n);
  const auto x = static_cast<double>(n);
  return {BoundCheck::make(-1.0 / (12.0 * x), -mu), BoundCheck::make(-mu, -1.0 / (12.0 * x + 1.0))};
}

BoundCheck combo_pmf_bound_check(std::span<const double> means, std::span<const std::int64_t> coeffs, std::int64_t a,
                                 double tol) {
  check_tol(tol);
  if (means.empty() || means.size() != coeffs.size())
    throw std::invalid_argument("combo_pmf_bound_check: need equal-length nonempty lists");
  for (std::size_t i = 0; i < means.size(); ++i)
    if (!(means[i] > 0.0) || coeffs[i] < 1) throw std::invalid_argument("combo_pmf_bound_check: means and coeffs must be positive");
  if (a < 0) throw std::invalid_argument("combo_pmf_bound_check: a must be >= 0");
  const double exact = nonnegative_combination_pmf(means, coeffs, a);
  return BoundCheck::make(exact, mode_bound(*std::max_element(means.begin(), means.end())));
}

std::vector<double> combo_distribution(std::span<const double> means, std::span<const std::int64_t> coeffs, double tol) {
  check_tol(tol);
  if (means.empty() || means.size() != coeffs.size())
    throw std::invalid_argument("combo_distribution: need equal-length nonempty lists");
  const double budget = tol / static_cast<double>(means.size());
  std::vector<double> dist{1.0};
  for (std::size_t i = 0; i < means.size(); ++i) {
    const std::int64_t k_max = truncation_point(means[i], budget);
    const std::int64_t d = coeffs[i];
    std::vector<double> next(dist.size() + static_cast<std::size_t>(d * k_max), 0.0);
    for (std::int64_t x = 0; x <= k_max; ++x) {
      const double w = poisson_pmf(means[i], x);
      for (std::size_t s = 0; s < dist.size(); ++s) next[s + static_cast<std::size_t>(x * d)] += dist[s] * w;
    }
    dist = std::move(next);
  }
  return dist;
}

BoundCheck interval_sum_bound_check(std::span<const TimeInterval> intervals, std::int64_t a, double tol) {
  check_tol(tol);
  if (intervals.empty()) throw std::invalid_argument("interval_sum_bound_check: need at least one interval");
  SignedTimeMultiset s;
  double longest = 0.0;
  for (const auto& iv : intervals) {
    if (!(iv.start >= 0.0) || !(iv.end > iv.start))
      throw std::invalid_argument("interval_sum_bound_check: intervals must satisfy 0 <= j < k");
    s.plus.push_back(iv.end);
    s.minus.push_back(iv.start);
    longest = std::max(longest, iv.end - iv.start);
  }
  const PoissonCombination comb = elementary_decomposition(s);
  const double exact = nonnegative_combination_pmf(comb.means, comb.coeffs, a);
  const double n = static_cast<double>(intervals.size());
  return BoundCheck::make(exact, mode_bound(longest / (2.0 * n)));
}

NeighborhoodCheck sqrt_log_neighborhood_check(LogReal x, LogReal y, double C) {
  const double hi = std::max(x.log, y.log);
  const double diff = std::fabs(x.log - y.log);
  const double lgap = diff == 0.0 ? kNegInf : hi + std::log(-std::expm1(-diff));
  return neighborhood(x.log, y.log, lgap, C);
}

NeighborhoodCheck sqrt_log_neighborhood_check_offset(LogReal x, double log_gap, int sign, double C) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("sqrt_log_neighborhood_check_offset: sign must be +1 or -1");
  const double rel = std::exp(log_gap - x.log);
  if (sign < 0 && !(rel < 1.0)) throw std::invalid_argument("sqrt_log_neighborhood_check_offset: y must be positive");
  const double ly = x.log + std::log1p(sign * rel);
  return neighborhood(x.log, ly, log_gap, C);
}

}  // namespace rexp
