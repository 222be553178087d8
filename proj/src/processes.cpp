#include "rexp/processes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace rexp {

Pmf::Pmf(std::vector<Entry> entries) {
  double total = 0.0;
  for (const auto& e : entries) {
    if (!(e.prob >= 0.0)) throw std::invalid_argument("Pmf: probabilities must be nonnegative");
    total += e.prob;
  }
  if (entries.empty()) return;
  if (std::fabs(total - 1.0) > 1e-12) throw std::invalid_argument("Pmf: probabilities must sum to 1");
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.value < b.value; });
  for (const auto& e : entries) {
    if (e.prob == 0.0) continue;
    if (!entries_.empty() && entries_.back().value == e.value)
      entries_.back().prob += e.prob;
    else
      entries_.push_back(e);
  }
}

Pmf Pmf::uniform(std::span<const std::int64_t> values) {
  if (values.empty()) throw std::invalid_argument("Pmf::uniform: no values");
  std::vector<std::int64_t> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  std::vector<Entry> entries;
  for (auto x : v) entries.push_back({x, 1.0 / static_cast<double>(v.size())});
  return Pmf(std::move(entries));
}

double Pmf::collision_probability() const {
  double s = 0.0;
  for (const auto& e : entries_) s += e.prob * e.prob;
  return s;
}

TimeGrid::TimeGrid(std::vector<double> times) : times_(std::move(times)) {
  for (std::size_t i = 0; i < times_.size(); ++i) {
    if (!(times_[i] >= 0.0) || !std::isfinite(times_[i]))
      throw std::invalid_argument("TimeGrid: times must be finite and nonnegative");
    if (i > 0 && !(times_[i] > times_[i - 1])) throw std::invalid_argument("TimeGrid: times must be strictly increasing");
  }
}

TimeGrid TimeGrid::integers(std::int64_t n) {
  std::vector<double> t(static_cast<std::size_t>(n + 1));
  std::iota(t.begin(), t.end(), 0.0);
  return TimeGrid(std::move(t));
}

double poisson_log_pmf(double mean, std::int64_t a) {
  if (!(mean >= 0.0)) throw std::invalid_argument("poisson_pmf: mean must be nonnegative");
  if (a < 0) return -std::numeric_limits<double>::infinity();
  if (mean == 0.0) return a == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
  const auto ad = static_cast<double>(a);
  return -mean + ad * std::log(mean) - std::lgamma(ad + 1.0);
}

double poisson_pmf(double mean, std::int64_t a) {
  return std::min(1.0, std::exp(poisson_log_pmf(mean, a)));
}

ProcessPath sample_iid(const Pmf& pmf, std::size_t count, const SeedSpec& seed, std::uint64_t sample_index) {
  if (pmf.empty()) throw std::invalid_argument("sample_iid: empty pmf");
  const auto& entries = pmf.entries();
  std::vector<double> cdf(entries.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < entries.size(); ++i) cdf[i] = (acc += entries[i].prob);

  Rng rng(seed, sample_index);
  ProcessPath path;
  std::vector<double> times(count);
  path.values.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    times[i] = static_cast<double>(i + 1);
    const double u = rng.uniform() * acc;
    auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) --it;
    path.values[i] = entries[static_cast<std::size_t>(it - cdf.begin())].value;
  }
  path.grid = TimeGrid(std::move(times));
  return path;
}

ProcessPath sample_poisson_path(const TimeGrid& grid, const SeedSpec& seed, std::uint64_t sample_index) {
  Rng rng(seed, sample_index);
  ProcessPath path{grid, std::vector<std::int64_t>(grid.size())};
  double prev_t = 0.0;
  std::int64_t value = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double t = grid.times()[i];
    value += rng.poisson(t - prev_t);
    path.values[i] = value;
    prev_t = t;
  }
  return path;
}

ProcessPath sample_random_walk(std::int64_t n_max, const SeedSpec& seed, std::uint64_t sample_index) {
  if (n_max < 1) throw std::invalid_argument("sample_random_walk: n_max must be >= 1");
  Rng rng(seed, sample_index);
  ProcessPath path{TimeGrid::integers(n_max), std::vector<std::int64_t>(static_cast<std::size_t>(n_max + 1))};
  std::uint64_t bits = 0;
  int left = 0;
  for (std::int64_t n = 1; n <= n_max; ++n) {
    if (left == 0) {
      bits = rng.next_u64();
      left = 64;
    }
    const std::int64_t step = (bits & 1U) ? 1 : -1;
    bits >>= 1;
    --left;
    path.values[static_cast<std::size_t>(n)] = path.values[static_cast<std::size_t>(n - 1)] + step;
  }
  return path;
}

}  // namespace rexp
