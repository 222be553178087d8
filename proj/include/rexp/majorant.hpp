#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rexp/moments.hpp"
#include "rexp/rng.hpp"

namespace rexp {

/// Best coefficient choice found for one frequency set.
///
/// The sup over |a_j| <= 1 of a convex functional is attained at unimodular
/// coefficients, so only phases a_j = e^{iθ_j} are searched. The search is a
/// local method: best_moment is a lower bound for the true supremum.
struct MajorantResult {
  double base_moment = 0.0;   // ‖Σ e(f_j y)‖_p^p
  double best_moment = 0.0;   // ‖Σ e^{iθ_j} e(f_j y)‖_p^p at best_phases
  double ratio = 1.0;         // (best_moment / base_moment)^{1/p}
  std::vector<double> best_phases;
  int restarts = 0;
  double p = 0.0;
  bool approximate = false;   // objective evaluated by quadrature
};

/// ‖Σ_j e^{iθ_j} e(f_j y)‖_p^p; exact via complex convolution for even p.
double majorant_objective(std::span<const std::int64_t> freqs, std::span<const double> phases, int p);

/// Coordinate-wise phase ascent for even p >= 2: cycle through j, maximize
/// over θ_j with the other phases fixed (grid scan + golden section), stop
/// once a sweep gains less than 1e-10. Restart 0 starts from all-ones, the
/// others from random phases. Restarts are independent; the best one wins,
/// ties going to the lower restart index.
MajorantResult majorant_ratio(std::span<const std::int64_t> freqs, int p, int restarts, const SeedSpec& seed);

/// Same search for arbitrary p >= 1 with a quadrature objective on `nodes`
/// points (0 = default rule). Flagged approximate.
MajorantResult majorant_ratio_quadrature(std::span<const std::int64_t> freqs, double p, int restarts,
                                         const SeedSpec& seed, std::int64_t nodes = 0);

struct GenericityPoint {
  std::size_t size = 0;
  double probability = 0.0;  // fraction of samples with ratio >= size^epsilon
  double std_error = 0.0;    // binomial standard error
  std::size_t samples = 0;
  double max_ratio = 0.0;
};

/// For each size s, realizes the process on A = {1, ..., s} `samples` times
/// and records how often the best ratio found reaches s^epsilon. The
/// optimizer lower-bounds the sup, so the reported probabilities are lower
/// bounds for the event probabilities.
std::vector<GenericityPoint> genericity_experiment(const ExperimentSpec& process, std::span<const std::size_t> sizes,
                                                   double p, double epsilon, std::size_t samples, int restarts,
                                                   const SeedSpec& seed);

}  // namespace rexp
