#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rexp/processes.hpp"
#include "rexp/rng.hpp"

namespace rexp {

enum class ProcessKind { iid, poisson, walk };

/// Maps an index j of the set A to the time at which the process is observed.
struct TimeMap {
  enum class Kind { identity, power, arithmetic };

  Kind kind = Kind::identity;
  int degree = 1;        // power: t = j^degree
  double exponent = 1;   // arithmetic: t = j * scale^exponent, scale = max A

  static TimeMap identity() { return {}; }
  static TimeMap power(int d) { return {Kind::power, d, 1.0}; }
  static TimeMap arithmetic(double r) { return {Kind::arithmetic, 1, r}; }

  double time(std::int64_t j, std::int64_t scale) const;
};

/// One Monte Carlo experiment: which process, which index set, how indices
/// map to times, the moment order and the sampling budget.
struct ExperimentSpec {
  ProcessKind process = ProcessKind::poisson;
  Pmf pmf;                                // iid only
  std::vector<std::int64_t> index_set;    // A, strictly increasing, positive
  TimeMap map;
  double p = 2.0;
  std::size_t samples = 1;
  SeedSpec seed;
  std::string descriptor;

  /// Throws std::invalid_argument when an invariant is violated.
  void validate() const;

  /// Evaluation times of the process, one per element of A (increasing).
  std::vector<double> times() const;
};

/// Monte Carlo mean with its standard error and provenance.
struct MomentEstimate {
  double mean = 0.0;
  double std_error = 0.0;  // sample standard deviation / √n_samples
  std::size_t n_samples = 0;
  SeedSpec seed;
  double p = 0.0;
  std::string descriptor;
  std::int64_t nodes = 0;  // quadrature nodes per sample; 0 for exact evaluation
};

/// Mean and standard error of `values` accumulated in index order.
MomentEstimate summarize(std::span<const double> values);

/// Realized frequencies X_j for j in A for one sample.
std::vector<std::int64_t> realize_frequencies(const ExperimentSpec& spec, std::uint64_t sample_index);

/// Per-sample exact ‖Σ e(y X_j)‖_p^p for even p, in sample order.
std::vector<double> even_moment_samples(const ExperimentSpec& spec);
/// Per-sample quadrature values; nodes <= 0 selects the default rule per sample.
std::vector<double> general_moment_samples(const ExperimentSpec& spec, std::int64_t nodes = 0);

/// Unbiased estimate of E‖Σ_{j∈A} e(y X_{t(j)})‖_p^p for even p, each sample evaluated exactly.
MomentEstimate mc_even_moment(const ExperimentSpec& spec);
/// Same for any p >= 1, each sample evaluated by quadrature.
MomentEstimate mc_general_moment(const ExperimentSpec& spec, std::int64_t nodes = 0);

/// Σ_{j,k} e^{-|t_j - t_k|} = E‖Σ e(y N(t_j))‖_2².
double exact_second_moment_poisson(std::span<const double> times);

/// size + (size² - size) Σ μ_k², exact for i.i.d. draws from `pmf`.
double exact_second_moment_iid(const Pmf& pmf, std::size_t size);

/// Two multisets of observation times; the event of interest is
/// Σ_{plus} N(t) = Σ_{minus} N(t).
struct SignedTimeMultiset {
  std::vector<double> plus;
  std::vector<double> minus;
};

/// Σ_i c_i X_i with independent X_i ~ Poisson(means[i]) and integer c_i.
struct PoissonCombination {
  std::vector<double> means;
  std::vector<std::int64_t> coeffs;
};

/// Rewrites Σ_{plus} N(t) - Σ_{minus} N(t) as a combination of independent
/// elementary increments; increments with zero net coefficient are dropped.
PoissonCombination elementary_decomposition(const SignedTimeMultiset& s);

/// P[Σ c_i X_i = target] by dynamic programming over the signed sum, each
/// X_i truncated where its tail mass drops below tol / (number of terms).
/// The result is within tol of the exact probability.
double combination_probability(const PoissonCombination& combination, std::int64_t target, double tol);

/// Per-term truncation point mean + max(20, 12√mean), raised until the tail
/// mass above it is below `tail_budget`.
std::int64_t truncation_point(double mean, double tail_budget);

/// P[Σ_{plus} N(t) = Σ_{minus} N(t)] within tol; tol in (0, 1e-3].
double coincidence_probability_poisson(const SignedTimeMultiset& s, double tol);

/// E‖Σ e(y N(t_j))‖_{2n}^{2n} as the sum of coincidence probabilities over
/// all 2n-tuples; requires |times|^{2n} <= 1e7.
double exact_even_moment_poisson(std::span<const double> times, int n, double tol);

/// p - 1 + alpha: the growth exponent of E‖·‖_p^p for a process with
/// X(j) ≈ j^{1-alpha}.
double heuristic_exponent(double p, double alpha);

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // root mean square of the log-space residuals
};

/// Least-squares fit of log(estimate) against log(scale); needs >= 3 points,
/// all coordinates positive.
SlopeFit slope_fit(std::span<const std::pair<double, double>> points);

}  // namespace rexp
