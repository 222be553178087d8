#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "rexp/rng.hpp"

namespace rexp {

/// Integer-supported probability mass function in canonical form: values
/// strictly increasing, probabilities nonnegative and summing to 1 (1e-12).
class Pmf {
 public:
  struct Entry {
    std::int64_t value;
    double prob;
  };

  Pmf() = default;

  /// Validates and canonicalizes (sorts, merges duplicate values, drops
  /// zero-probability entries). Throws std::invalid_argument on negative
  /// probabilities or a total mass off by more than 1e-12.
  explicit Pmf(std::vector<Entry> entries);

  static Pmf point_mass(std::int64_t value) { return Pmf({{value, 1.0}}); }
  /// Uniform on the given values (duplicates are merged).
  static Pmf uniform(std::span<const std::int64_t> values);

  const std::vector<Entry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

  /// Σ_k μ_k², the probability that two independent draws coincide.
  double collision_probability() const;

 private:
  std::vector<Entry> entries_;
};

/// Strictly increasing nonnegative evaluation times.
class TimeGrid {
 public:
  TimeGrid() = default;
  explicit TimeGrid(std::vector<double> times);

  /// The integer grid 0, 1, ..., n.
  static TimeGrid integers(std::int64_t n);

  const std::vector<double>& times() const { return times_; }
  std::size_t size() const { return times_.size(); }

 private:
  std::vector<double> times_;
};

/// One realization of a process on a finite grid.
struct ProcessPath {
  TimeGrid grid;
  std::vector<std::int64_t> values;
};

/// e^{-mean} mean^a / a!, evaluated in log space. mean = 0 is the point mass at 0.
double poisson_pmf(double mean, std::int64_t a);

/// log of poisson_pmf; -inf where the pmf is 0.
double poisson_log_pmf(double mean, std::int64_t a);

/// `count` independent draws from `pmf` by inverse CDF. The grid of the
/// returned path is 1, ..., count.
ProcessPath sample_iid(const Pmf& pmf, std::size_t count, const SeedSpec& seed, std::uint64_t sample_index = 0);

/// Intensity-1 Poisson process observed on `grid`: independent Poisson(Δt)
/// increments between consecutive grid points (the first increment is
/// measured from time 0).
ProcessPath sample_poisson_path(const TimeGrid& grid, const SeedSpec& seed, std::uint64_t sample_index = 0);

/// Simple random walk R(0..n_max), R(0) = 0, fair ±1 steps.
ProcessPath sample_random_walk(std::int64_t n_max, const SeedSpec& seed, std::uint64_t sample_index = 0);

}  // namespace rexp
