#include "rexp/majorant.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <stdexcept>

#include <Eigen/Core>

#include "rexp/expsum.hpp"
#include "rexp/parallel.hpp"

namespace rexp {

namespace {

using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kInvPhi = 0.6180339887498949;
constexpr int kScanPoints = 48;
constexpr int kMaxSweeps = 500;
constexpr double kSweepTolerance = 1e-10;
constexpr double kBracketTolerance = 1e-12;

bool is_even(double p) { return p >= 2.0 && std::floor(p) == p && static_cast<std::int64_t>(p) % 2 == 0; }

double wrap_phase(double t) {
  t = std::fmod(t, kTwoPi);
  return t < 0.0 ? t + kTwoPi : t;
}

FrequencySpectrum phased_spectrum(std::span<const std::int64_t> freqs, std::span<const double> phases) {
  FrequencySpectrum s = FrequencySpectrum::unit(freqs);
  for (Eigen::Index j = 0; j < s.size(); ++j) s.coeffs[j] = std::polar(1.0, phases[static_cast<std::size_t>(j)]);
  return s;
}

// Coordinate ascent state on a node grid fine enough that the grid mean of
// |S|^p equals the integral for even p.
class PhaseAscent {
 public:
  PhaseAscent(std::span<const std::int64_t> freqs, double p, std::int64_t nodes)
      : p_(p), even_(is_even(p)), basis_(nodes, static_cast<Eigen::Index>(freqs.size())) {
    if (static_cast<double>(nodes) * static_cast<double>(freqs.size()) > 5e7)
      throw GuardError("majorant: node grid too large for this frequency set");
    for (std::size_t j = 0; j < freqs.size(); ++j) {
      std::int64_t one = freqs[j] % nodes;
      if (one < 0) one += nodes;
      std::int64_t phase = 0;
      for (std::int64_t i = 0; i < nodes; ++i) {
        basis_(i, static_cast<Eigen::Index>(j)) =
            std::polar(1.0, kTwoPi * static_cast<double>(phase) / static_cast<double>(nodes));
        phase += one;
        if (phase >= nodes) phase -= nodes;
      }
    }
  }

  double objective(const ComplexVector& s) const { return s.array().abs2().pow(p_ / 2.0).mean(); }

  /// Runs sweeps from `phases` in place; returns the final grid objective.
  double run(std::vector<double>& phases) const {
    ComplexVector coeffs(static_cast<Eigen::Index>(phases.size()));
    for (std::size_t j = 0; j < phases.size(); ++j) coeffs[static_cast<Eigen::Index>(j)] = std::polar(1.0, phases[j]);
    ComplexVector s = basis_ * coeffs;
    double current = objective(s);
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
      const double before = current;
      for (Eigen::Index j = 0; j < basis_.cols(); ++j) {
        const ComplexVector rest = s - coeffs[j] * basis_.col(j);
        const double theta = best_phase(rest, j, phases[static_cast<std::size_t>(j)]);
        const Complex a = std::polar(1.0, theta);
        const ComplexVector candidate = rest + a * basis_.col(j);
        const double value = objective(candidate);
        if (value > current) {
          current = value;
          s = candidate;
          coeffs[j] = a;
          phases[static_cast<std::size_t>(j)] = theta;
        }
      }
      if (current - before < kSweepTolerance * std::max(1.0, before)) break;
    }
    return current;
  }

 private:
  // Maximizes θ -> mean |rest + e^{iθ} u_j|^p over the circle.
  double best_phase(const ComplexVector& rest, Eigen::Index j, double start) const {
    const auto column = basis_.col(j);
    std::function<double(double)> f;
    std::vector<Complex> harmonics;
    if (even_) {
      // For p = 2n the coordinate objective is a trigonometric polynomial of
      // degree n in θ: recover it from 2n + 1 samples, then evaluate in O(n).
      const int n = static_cast<int>(p_) / 2;
      const int K = 2 * n + 1;
      std::vector<double> samples(static_cast<std::size_t>(K));
      for (int k = 0; k < K; ++k) {
        const Complex a = std::polar(1.0, kTwoPi * k / K);
        samples[static_cast<std::size_t>(k)] = objective(rest + a * column);
      }
      harmonics.assign(static_cast<std::size_t>(n + 1), Complex(0.0));
      for (int h = 0; h <= n; ++h) {
        Complex c(0.0);
        for (int k = 0; k < K; ++k) c += samples[static_cast<std::size_t>(k)] * std::polar(1.0, -kTwoPi * h * k / K);
        harmonics[static_cast<std::size_t>(h)] = c / static_cast<double>(K);
      }
      f = [&harmonics](double theta) {
        double v = harmonics[0].real();
        for (std::size_t h = 1; h < harmonics.size(); ++h)
          v += 2.0 * (harmonics[h] * std::polar(1.0, static_cast<double>(h) * theta)).real();
        return v;
      };
    } else {
      f = [&](double theta) { return objective(rest + std::polar(1.0, theta) * column); };
    }

    double best_theta = wrap_phase(start);
    double best_value = f(best_theta);
    const double h = kTwoPi / kScanPoints;
    for (int k = 0; k < kScanPoints; ++k) {
      const double theta = h * k;
      const double v = f(theta);
      if (v > best_value) {
        best_value = v;
        best_theta = theta;
      }
    }
    // golden-section refinement inside the bracket around the best scan point
    double lo = best_theta - h, hi = best_theta + h;
    double x1 = hi - kInvPhi * (hi - lo), x2 = lo + kInvPhi * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    while (hi - lo > kBracketTolerance) {
      if (f1 < f2) {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + kInvPhi * (hi - lo);
        f2 = f(x2);
      } else {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - kInvPhi * (hi - lo);
        f1 = f(x1);
      }
    }
    const double refined = 0.5 * (lo + hi);
    return f(refined) > best_value ? wrap_phase(refined) : wrap_phase(best_theta);
  }

  double p_;
  bool even_;
  Eigen::MatrixXcd basis_;  // basis_(i, j) = e(f_j i / nodes)
};

std::vector<double> start_phases(std::size_t terms, int restart, const SeedSpec& seed) {
  std::vector<double> phases(terms, 0.0);
  if (restart == 0) return phases;
  Rng rng(seed, static_cast<std::uint64_t>(restart));
  for (auto& t : phases) t = kTwoPi * rng.uniform_closed_open();
  return phases;
}

MajorantResult optimize(std::span<const std::int64_t> freqs, double p, int restarts, const SeedSpec& seed,
                        std::int64_t nodes, bool exact) {
  if (freqs.empty()) throw std::invalid_argument("majorant_ratio: empty frequency set");
  if (restarts < 1) throw std::invalid_argument("majorant_ratio: restarts must be >= 1");
  const FrequencySpectrum unit = FrequencySpectrum::unit(freqs);
  if (nodes <= 0) nodes = default_quadrature_nodes(unit, p);
  const PhaseAscent ascent(freqs, p, nodes);

  auto evaluate = [&](std::span<const double> phases) {
    const FrequencySpectrum s = phased_spectrum(freqs, phases);
    return exact ? even_norm_coeff(s, static_cast<int>(p) / 2) : lp_norm_quadrature(s, p, nodes);
  };

  struct Run {
    std::vector<double> phases;
    double value = 0.0;
  };
  const auto runs = parallel_map<Run>(static_cast<std::size_t>(restarts), [&](std::size_t r) {
    Run run{start_phases(freqs.size(), static_cast<int>(r), seed), 0.0};
    ascent.run(run.phases);
    run.value = evaluate(run.phases);
    return run;
  });

  MajorantResult out;
  out.p = p;
  out.restarts = restarts;
  out.approximate = !exact;
  out.base_moment = evaluate(std::vector<double>(freqs.size(), 0.0));
  std::size_t best = 0;
  for (std::size_t r = 1; r < runs.size(); ++r)
    if (runs[r].value > runs[best].value) best = r;
  out.best_moment = runs[best].value;
  out.best_phases = runs[best].phases;
  out.ratio = std::pow(out.best_moment / out.base_moment, 1.0 / p);
  return out;
}

}  // namespace

double majorant_objective(std::span<const std::int64_t> freqs, std::span<const double> phases, int p) {
  if (!is_even(p)) throw std::invalid_argument("majorant_objective: p must be an even integer >= 2");
  if (freqs.size() != phases.size()) throw std::invalid_argument("majorant_objective: size mismatch");
  return even_norm_coeff(phased_spectrum(freqs, phases), p / 2);
}

MajorantResult majorant_ratio(std::span<const std::int64_t> freqs, int p, int restarts, const SeedSpec& seed) {
  if (!is_even(p)) throw std::invalid_argument("majorant_ratio: exact mode needs an even integer p >= 2");
  return optimize(freqs, p, restarts, seed, 0, true);
}

MajorantResult majorant_ratio_quadrature(std::span<const std::int64_t> freqs, double p, int restarts,
                                         const SeedSpec& seed, std::int64_t nodes) {
  if (!(p >= 1.0)) throw std::invalid_argument("majorant_ratio_quadrature: p must be >= 1");
  return optimize(freqs, p, restarts, seed, nodes, false);
}

std::vector<GenericityPoint> genericity_experiment(const ExperimentSpec& process, std::span<const std::size_t> sizes,
                                                   double p, double epsilon, std::size_t samples, int restarts,
                                                   const SeedSpec& seed) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("genericity_experiment: epsilon must be > 0");
  if (samples < 1) throw std::invalid_argument("genericity_experiment: samples must be >= 1");
  const bool exact = is_even(p);
  std::vector<GenericityPoint> out;
  for (std::size_t size : sizes) {
    if (size < 1) throw std::invalid_argument("genericity_experiment: sizes must be >= 1");
    ExperimentSpec spec = process;
    spec.index_set.resize(size);
    for (std::size_t j = 0; j < size; ++j) spec.index_set[j] = static_cast<std::int64_t>(j + 1);
    spec.samples = samples;
    spec.seed = SeedSpec{seed.master_seed, mix64(seed.stream_index ^ (0x5bd1e995ULL * size))};
    spec.validate();
    const double threshold = std::pow(static_cast<double>(size), epsilon);

    const auto ratios = parallel_map<double>(samples, [&](std::size_t i) {
      const auto freqs = realize_frequencies(spec, i);
      const SeedSpec opt_seed{spec.seed.master_seed, mix64(spec.seed.stream_index + 1 + i)};
      const auto r = exact ? majorant_ratio(freqs, static_cast<int>(p), restarts, opt_seed)
                           : majorant_ratio_quadrature(freqs, p, restarts, opt_seed);
      return r.ratio;
    });
    GenericityPoint pt;
    pt.size = size;
    pt.samples = samples;
    std::size_t hits = 0;
    for (double r : ratios) {
      if (r >= threshold) ++hits;
      pt.max_ratio = std::max(pt.max_ratio, r);
    }
    pt.probability = static_cast<double>(hits) / static_cast<double>(samples);
    pt.std_error = std::sqrt(pt.probability * (1.0 - pt.probability) / static_cast<double>(samples));
    out.push_back(pt);
  }
  return out;
}

}  // namespace rexp
