#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace rexp {

/// An exactly computed quantity next to the bound it should respect.
struct BoundCheck {
  double exact = 0.0;
  double bound = 0.0;
  bool holds = false;
  double slack = 0.0;  // bound - exact

  static BoundCheck make(double exact, double bound);
};

/// exact = P[|N(m) - m| > lam √m], bound = 2 e^{-lam²/4}; 0 < lam <= √m.
BoundCheck poisson_concentration_check(std::int64_t m, double lam);

/// Upper and lower Poisson tails P[N(mean) >= k] and P[N(mean) <= k], summed
/// term by term in log space with compensated summation.
double poisson_upper_tail(double mean, std::int64_t k);
double poisson_lower_tail(double mean, std::int64_t k);

/// Binet remainder log(n!) - (n + 1/2) log n + n - log(2π)/2 for n >= 1.
double stirling_remainder(std::int64_t n);

/// exact = sup_t P[N(t) = a] = a^a e^{-a} / a!, bound = 1/√(2πa); a >= 1.
BoundCheck pmf_sup_over_t(std::int64_t a);

struct PmfModeCheck {
  std::int64_t argmax = 0;
  double value = 0.0;
  double bound = 0.0;
  bool scan_confirms = false;  // no a in the scanned window beats `value`
};

/// Mode of Poisson(t): argmax ⌊t⌋, its probability, and min{1, 1/√(2π⌊t⌋)}.
PmfModeCheck pmf_sup_over_a(double t);

/// Both sides of 1/√(2πn) e^{-1/(12n)} <= n^n/(n! e^n) <= 1/√(2πn) e^{-1/(12n+1)}.
/// Quantities are reported as logarithms after dividing by 1/√(2πn), i.e.
/// first  = {exact: -1/(12n), bound: -remainder(n)},
/// second = {exact: -remainder(n), bound: -1/(12n+1)}.
std::pair<BoundCheck, BoundCheck> robbins_check(std::int64_t n);

/// exact = P[Σ d_i N_i = a] for independent N_i ~ Poisson(means[i]),
/// bound = min{1, 1/√(2π⌊max mean⌋)}.
BoundCheck combo_pmf_bound_check(std::span<const double> means, std::span<const std::int64_t> coeffs, std::int64_t a,
                                 double tol);

/// Full distribution of Σ d_i N_i on [0, truncation] with each N_i truncated
/// where its tail mass is below tol / (number of terms).
std::vector<double> combo_distribution(std::span<const double> means, std::span<const std::int64_t> coeffs, double tol);

struct TimeInterval {
  double start = 0.0;
  double end = 0.0;
};

/// exact = P[Σ (N(k_i) - N(j_i)) = a], bound = min{1, 1/√(2π⌊(k_m - j_m)/2n⌋)}
/// where interval m is the longest.
BoundCheck interval_sum_bound_check(std::span<const TimeInterval> intervals, std::int64_t a, double tol);

/// Real number >= 1 carried by its natural logarithm.
struct LogReal {
  double log = 0.0;
};

struct NeighborhoodCheck {
  bool implication_a = true;
  bool implication_b = true;
};

/// Both implications for 1 <= C <= 10:
///  a. x > e^50 and |x-y| <= C√(x log x)   =>  |x-y| <= 2C√(y log y)
///  b. y > e^50, x >= 1, |x-y| >= 2C√(x log x)  =>  |x-y| >= C√(y log y)
/// Vacuously true when the antecedent fails.
NeighborhoodCheck sqrt_log_neighborhood_check(LogReal x, LogReal y, double C);

/// Same with y = x + sign·e^{log_gap}, for y too close to x to be resolved
/// from log y alone.
NeighborhoodCheck sqrt_log_neighborhood_check_offset(LogReal x, double log_gap, int sign, double C);

}  // namespace rexp
