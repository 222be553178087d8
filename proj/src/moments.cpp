#include "rexp/moments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "rexp/exact_int.hpp"
#include "rexp/expsum.hpp"
#include "rexp/parallel.hpp"

namespace rexp {

namespace {

constexpr double kMaxWalkTime = 1e8;

bool is_even_integer(double p) { return p >= 2.0 && std::floor(p) == p && static_cast<std::int64_t>(p) % 2 == 0; }

}  // namespace

double TimeMap::time(std::int64_t j, std::int64_t scale) const {
  switch (kind) {
    case Kind::identity:
      return static_cast<double>(j);
    case Kind::power:
      return std::pow(static_cast<double>(j), degree);
    case Kind::arithmetic:
      return static_cast<double>(j) * std::pow(static_cast<double>(scale), exponent);
  }
  return 0.0;
}

void ExperimentSpec::validate() const {
  if (index_set.empty()) throw std::invalid_argument("ExperimentSpec: index set must be nonempty");
  for (std::size_t i = 0; i < index_set.size(); ++i) {
    if (index_set[i] < 1) throw std::invalid_argument("ExperimentSpec: indices must be positive");
    if (i > 0 && index_set[i] <= index_set[i - 1])
      throw std::invalid_argument("ExperimentSpec: index set must be strictly increasing");
  }
  if (map.kind == TimeMap::Kind::power && map.degree < 1) throw std::invalid_argument("ExperimentSpec: d must be >= 1");
  if (map.kind == TimeMap::Kind::arithmetic && !(map.exponent > 0.0))
    throw std::invalid_argument("ExperimentSpec: r must be > 0");
  if (!(p >= 1.0)) throw std::invalid_argument("ExperimentSpec: p must be >= 1");
  if (samples < 1) throw std::invalid_argument("ExperimentSpec: samples must be >= 1");
  if (process == ProcessKind::iid && pmf.empty()) throw std::invalid_argument("ExperimentSpec: iid process needs a pmf");
}

std::vector<double> ExperimentSpec::times() const {
  const std::int64_t scale = index_set.back();
  std::vector<double> t;
  t.reserve(index_set.size());
  for (auto j : index_set) t.push_back(map.time(j, scale));
  return t;
}

MomentEstimate summarize(std::span<const double> values) {
  MomentEstimate e;
  e.n_samples = values.size();
  if (values.empty()) return e;
  double sum = 0.0;
  for (double v : values) sum += v;
  e.mean = sum / static_cast<double>(values.size());
  if (values.size() < 2) {
    e.std_error = std::numeric_limits<double>::infinity();
    return e;
  }
  double ss = 0.0;
  for (double v : values) ss += (v - e.mean) * (v - e.mean);
  e.std_error = std::sqrt(ss / static_cast<double>(values.size() - 1) / static_cast<double>(values.size()));
  return e;
}

std::vector<std::int64_t> realize_frequencies(const ExperimentSpec& spec, std::uint64_t sample_index) {
  switch (spec.process) {
    case ProcessKind::iid:
      return sample_iid(spec.pmf, spec.index_set.size(), spec.seed, sample_index).values;
    case ProcessKind::poisson:
      return sample_poisson_path(TimeGrid(spec.times()), spec.seed, sample_index).values;
    case ProcessKind::walk: {
      const auto times = spec.times();
      for (double t : times)
        if (std::floor(t) != t) throw std::invalid_argument("random walk needs integer observation times");
      if (times.back() > kMaxWalkTime) throw GuardError("random walk horizon exceeds 1e8 steps");
      const auto path = sample_random_walk(static_cast<std::int64_t>(times.back()), spec.seed, sample_index);
      std::vector<std::int64_t> out;
      out.reserve(times.size());
      for (double t : times) out.push_back(path.values[static_cast<std::size_t>(t)]);
      return out;
    }
  }
  return {};
}

std::vector<double> even_moment_samples(const ExperimentSpec& spec) {
  spec.validate();
  if (!is_even_integer(spec.p)) throw std::invalid_argument("mc_even_moment: p must be an even integer >= 2");
  const int n = static_cast<int>(spec.p) / 2;
  return parallel_map<double>(spec.samples, [&](std::size_t i) {
    const auto freqs = realize_frequencies(spec, i);
    return to_double(even_moment(freqs, n));
  });
}

std::vector<double> general_moment_samples(const ExperimentSpec& spec, std::int64_t nodes) {
  spec.validate();
  return parallel_map<double>(spec.samples, [&](std::size_t i) {
    const auto spectrum = FrequencySpectrum::unit(realize_frequencies(spec, i));
    const std::int64_t k = nodes > 0 ? nodes : default_quadrature_nodes(spectrum, spec.p);
    return lp_norm_quadrature(spectrum, spec.p, k);
  });
}

namespace {

MomentEstimate finish(MomentEstimate e, const ExperimentSpec& spec, std::int64_t nodes) {
  e.seed = spec.seed;
  e.p = spec.p;
  e.descriptor = spec.descriptor;
  e.nodes = nodes;
  return e;
}

}  // namespace

MomentEstimate mc_even_moment(const ExperimentSpec& spec) {
  const auto values = even_moment_samples(spec);
  return finish(summarize(values), spec, 0);
}

MomentEstimate mc_general_moment(const ExperimentSpec& spec, std::int64_t nodes) {
  const auto values = general_moment_samples(spec, nodes);
  return finish(summarize(values), spec, nodes > 0 ? nodes : -1);
}

double exact_second_moment_poisson(std::span<const double> times) {
  double s = 0.0;
  for (double a : times)
    for (double b : times) s += std::exp(-std::fabs(a - b));
  return s;
}

double exact_second_moment_iid(const Pmf& pmf, std::size_t size) {
  if (pmf.empty()) throw std::invalid_argument("exact_second_moment_iid: empty pmf");
  const auto m = static_cast<double>(size);
  return m + (m * m - m) * pmf.collision_probability();
}

PoissonCombination elementary_decomposition(const SignedTimeMultiset& s) {
  std::vector<double> cuts{0.0};
  for (double t : s.plus) cuts.push_back(t);
  for (double t : s.minus) cuts.push_back(t);
  for (double t : cuts)
    if (!(t >= 0.0) || !std::isfinite(t)) throw std::invalid_argument("elementary_decomposition: times must be >= 0");
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  // N(t) = Σ of the increments of all elementary intervals ending at or before t.
  PoissonCombination out;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double right = cuts[i + 1];
    std::int64_t c = 0;
    for (double t : s.plus) c += (t >= right) ? 1 : 0;
    for (double t : s.minus) c -= (t >= right) ? 1 : 0;
    if (c == 0) continue;
    out.means.push_back(right - cuts[i]);
    out.coeffs.push_back(c);
  }
  return out;
}

std::int64_t truncation_point(double mean, double tail_budget) {
  auto k = static_cast<std::int64_t>(std::ceil(mean + std::max(20.0, 12.0 * std::sqrt(mean))));
  for (;;) {
    // tail mass P[X > k]; terms decrease geometrically beyond the mean
    double tail = 0.0;
    double term = poisson_pmf(mean, k + 1);
    for (std::int64_t a = k + 1; term > 0.0; ++a) {
      tail += term;
      const double ratio = mean / static_cast<double>(a + 1);
      if (term < 1e-300 || term * ratio / (1.0 - ratio) < 1e-17 * tail) {
        tail += term * ratio / (1.0 - ratio);
        break;
      }
      term *= ratio;
    }
    if (tail < tail_budget) return k;
    k += std::max<std::int64_t>(8, static_cast<std::int64_t>(std::sqrt(mean)));
  }
}

double combination_probability(const PoissonCombination& combination, std::int64_t target, double tol) {
  if (!(tol > 0.0 && tol <= 1e-3)) throw std::invalid_argument("tol must lie in (0, 1e-3]");
  if (combination.means.size() != combination.coeffs.size())
    throw std::invalid_argument("combination_probability: size mismatch");
  const std::size_t terms = combination.means.size();
  if (terms == 0) return target == 0 ? 1.0 : 0.0;

  const double budget = tol / static_cast<double>(terms);
  // distribution of the partial signed sum over [lo, lo + dist.size())
  std::vector<double> dist{1.0};
  std::int64_t lo = 0;
  for (std::size_t i = 0; i < terms; ++i) {
    const double mean = combination.means[i];
    const std::int64_t c = combination.coeffs[i];
    if (mean == 0.0 || c == 0) continue;
    const std::int64_t k_max = truncation_point(mean, budget);
    const std::int64_t reach = c * k_max;
    const std::int64_t new_lo = lo + std::min<std::int64_t>(0, reach);
    const auto new_size = static_cast<std::size_t>(static_cast<std::int64_t>(dist.size()) + std::abs(reach));
    if (new_size > (std::size_t{1} << 28)) throw GuardError("combination_probability: support too large for the DP");
    std::vector<double> next(new_size, 0.0);
    std::vector<double> pmf(static_cast<std::size_t>(k_max + 1));
    for (std::int64_t x = 0; x <= k_max; ++x) pmf[static_cast<std::size_t>(x)] = poisson_pmf(mean, x);
    for (std::size_t s = 0; s < dist.size(); ++s) {
      const double w = dist[s];
      if (w == 0.0) continue;
      const std::int64_t value = lo + static_cast<std::int64_t>(s);
      for (std::int64_t x = 0; x <= k_max; ++x)
        next[static_cast<std::size_t>(value + c * x - new_lo)] += w * pmf[static_cast<std::size_t>(x)];
    }
    dist = std::move(next);
    lo = new_lo;
  }
  const std::int64_t slot = target - lo;
  if (slot < 0 || slot >= static_cast<std::int64_t>(dist.size())) return 0.0;
  return std::clamp(dist[static_cast<std::size_t>(slot)], 0.0, 1.0);
}

double coincidence_probability_poisson(const SignedTimeMultiset& s, double tol) {
  if (!(tol > 0.0 && tol <= 1e-3)) throw std::invalid_argument("coincidence_probability_poisson: tol must lie in (0, 1e-3]");
  return combination_probability(elementary_decomposition(s), 0, tol);
}

double exact_even_moment_poisson(std::span<const double> times, int n, double tol) {
  if (n < 1) throw std::invalid_argument("exact_even_moment_poisson: n must be >= 1");
  if (times.empty()) throw std::invalid_argument("exact_even_moment_poisson: empty time list");
  const double tuples = std::pow(static_cast<double>(times.size()), 2 * n);
  if (tuples > 1e7) throw GuardError("exact_even_moment_poisson: |times|^{2n} exceeds 1e7");

  const std::size_t m = times.size();
  const auto total = static_cast<std::size_t>(tuples);
  // Probabilities depend only on the pair of sorted index multisets; the
  // sorted pair is also symmetric under swapping the two sides.
  std::map<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>, double> cache;
  double sum = 0.0;
  std::vector<std::size_t> idx(static_cast<std::size_t>(2 * n));
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t c = code;
    for (auto& v : idx) {
      v = c % m;
      c /= m;
    }
    std::vector<std::size_t> plus(idx.begin(), idx.begin() + n);
    std::vector<std::size_t> minus(idx.begin() + n, idx.end());
    std::sort(plus.begin(), plus.end());
    std::sort(minus.begin(), minus.end());
    if (minus < plus) std::swap(plus, minus);
    auto key = std::make_pair(plus, minus);
    auto it = cache.find(key);
    if (it == cache.end()) {
      SignedTimeMultiset s;
      for (auto i : plus) s.plus.push_back(times[i]);
      for (auto i : minus) s.minus.push_back(times[i]);
      it = cache.emplace(std::move(key), coincidence_probability_poisson(s, tol)).first;
    }
    sum += it->second;
  }
  return sum;
}

double heuristic_exponent(double p, double alpha) {
  if (!(p >= 1.0)) throw std::invalid_argument("heuristic_exponent: p must be >= 1");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("heuristic_exponent: alpha must lie in [0, 1]");
  return p - 1.0 + alpha;
}

SlopeFit slope_fit(std::span<const std::pair<double, double>> points) {
  if (points.size() < 3) throw std::invalid_argument("slope_fit: need at least 3 points");
  const auto n = static_cast<double>(points.size());
  double sx = 0, sy = 0;
  for (const auto& [x, y] : points) {
    if (!(x > 0.0) || !(y > 0.0)) throw std::invalid_argument("slope_fit: inputs must be positive");
    sx += std::log(x);
    sy += std::log(y);
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (const auto& [x, y] : points) {
    const double dx = std::log(x) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(y) - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("slope_fit: scales must not all coincide");
  SlopeFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double rss = 0.0;
  for (const auto& [x, y] : points) {
    const double r = std::log(y) - (fit.intercept + fit.slope * std::log(x));
    rss += r * r;
  }
  fit.residual = std::sqrt(rss / n);
  return fit;
}

}  // namespace rexp
