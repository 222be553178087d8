#include "verify.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>

#include "rexp/bounds.hpp"
#include "rexp/expsum.hpp"
#include "rexp/lattice.hpp"
#include "rexp/moments.hpp"
#include "rexp/parallel.hpp"
#include "rexp/rng.hpp"

namespace expsum_cli {

namespace {

using namespace rexp;

struct Outcome {
  bool ok = true;
  double slack = std::numeric_limits<double>::infinity();
};

Outcome from(const BoundCheck& c) { return {c.holds, c.slack}; }

Outcome both(const Outcome& a, const Outcome& b) { return {a.ok && b.ok, std::min(a.slack, b.slack)}; }

Outcome agreement(double x, double y, double tol) {
  const double err = std::fabs(x - y);
  return {err <= tol, -err};
}

CheckSummary run_grid(std::string id, std::size_t cases, const std::function<Outcome(std::size_t)>& one) {
  const auto results = parallel_map<Outcome>(cases, one);
  CheckSummary s{std::move(id), cases, 0, std::numeric_limits<double>::infinity()};
  for (const auto& r : results) {
    if (!r.ok) ++s.failures;
    s.min_slack = std::min(s.min_slack, r.slack);
  }
  return s;
}

}  // namespace

std::vector<CheckSummary> run_verification(std::uint64_t seed, double tol) {
  std::vector<CheckSummary> out;

  std::vector<std::pair<std::int64_t, double>> concentration;
  for (std::int64_t m = 1; m <= 200; ++m) {
    const auto top = static_cast<std::int64_t>(std::floor(10.0 * std::sqrt(static_cast<double>(m))));
    for (std::int64_t k = 1; k <= top; ++k) concentration.emplace_back(m, static_cast<double>(k) / 10.0);
  }
  out.push_back(run_grid("bounds.concentration", concentration.size(), [&](std::size_t i) {
    return from(poisson_concentration_check(concentration[i].first, concentration[i].second));
  }));

  out.push_back(run_grid("bounds.pmf_sup_over_t", 10000,
                         [](std::size_t i) { return from(pmf_sup_over_t(static_cast<std::int64_t>(i) + 1)); }));

  out.push_back(run_grid("bounds.robbins", 10000, [](std::size_t i) {
    const auto [lower, upper] = robbins_check(static_cast<std::int64_t>(i) + 1);
    return both(from(lower), from(upper));
  }));

  out.push_back(run_grid("bounds.pmf_sup_over_a", 1001, [](std::size_t k) {
    const auto m = pmf_sup_over_a(0.1 * static_cast<double>(k));
    return Outcome{m.scan_confirms && m.value <= m.bound * (1.0 + 1e-12), m.bound - m.value};
  }));

  out.push_back(run_grid("bounds.combination_mass", 100, [&](std::size_t i) {
    Rng rng(SeedSpec{seed, 101}, i);
    std::vector<double> means;
    std::vector<std::int64_t> coeffs;
    const auto terms = 1 + rng.below(3);
    for (std::uint64_t t = 0; t < terms; ++t) {
      means.push_back(0.1 + 20.0 * rng.uniform());
      coeffs.push_back(1 + static_cast<std::int64_t>(rng.below(4)));
    }
    const auto dist = combo_distribution(means, coeffs, tol);
    double total = 0.0;
    Outcome o;
    for (std::size_t a = 0; a < dist.size(); ++a) {
      total += dist[a];
      if (a < 40) o = both(o, from(combo_pmf_bound_check(means, coeffs, static_cast<std::int64_t>(a), tol)));
    }
    return both(o, agreement(total, 1.0, tol));
  }));

  out.push_back(run_grid("bounds.interval_sum", 100, [&](std::size_t i) {
    Rng rng(SeedSpec{seed, 102}, i);
    std::vector<TimeInterval> iv;
    SignedTimeMultiset s;
    const auto n = 1 + rng.below(3);
    for (std::uint64_t t = 0; t < n; ++t) {
      const double x = 10.0 * rng.uniform();
      const double y = x + 0.05 + 10.0 * rng.uniform();
      iv.push_back({x, y});
      s.plus.push_back(y);
      s.minus.push_back(x);
    }
    const auto check = interval_sum_bound_check(iv, 0, tol);
    return both(from(check), agreement(check.exact, coincidence_probability_poisson(s, tol), 2.0 * tol));
  }));

  out.push_back(run_grid("bounds.sqrt_log_neighborhood", 10000, [&](std::size_t i) {
    Rng rng(SeedSpec{seed, 103}, i);
    const double lx = 50.0 + 30.0 * rng.uniform();
    const double ly = 50.0 + 30.0 * rng.uniform();
    const double C = 1.0 + 9.0 * rng.uniform();
    const auto r = sqrt_log_neighborhood_check(LogReal{lx}, LogReal{ly}, C);
    // also probe gaps within a factor e of both thresholds
    const double gap = std::log(C) + 0.5 * (lx + std::log(lx)) + (2.0 * rng.uniform() - 0.5);
    const auto near = sqrt_log_neighborhood_check_offset(LogReal{lx}, gap, rng.below(2) ? 1 : -1, C);
    const bool ok = r.implication_a && r.implication_b && near.implication_a && near.implication_b;
    return Outcome{ok, ok ? 0.0 : -1.0};
  }));

  out.push_back(run_grid("oracle.divisor", 1, [](std::size_t) {
    constexpr std::int64_t kMax = 20000;
    std::vector<std::int64_t> d(kMax + 1, 0);
    for (std::int64_t a = 1; a <= kMax; ++a)
      for (std::int64_t m = a; m <= kMax; m += a) ++d[static_cast<std::size_t>(m)];
    std::int64_t running = 0;
    Outcome o{true, 0.0};
    for (std::int64_t x = 1; x <= kMax; ++x) {
      running += d[static_cast<std::size_t>(x)];
      if (divisor_summatory(static_cast<double>(x)) != static_cast<Count>(running)) o = {false, -1.0};
    }
    return o;
  }));

  std::vector<ShellQuery> shells;
  for (int deg = 2; deg <= 5; ++deg)
    for (int D = 1; D <= 12; ++D)
      for (int E = D; E <= D * D; ++E) shells.push_back({deg, static_cast<double>(E), static_cast<double>(D)});
  out.push_back(run_grid("oracle.shell_fast_vs_brute", shells.size(), [&](std::size_t i) {
    const bool ok = shell_count_fast(shells[i]).count == shell_count_brute(shells[i]).count;
    return Outcome{ok, ok ? 0.0 : -1.0};
  }));

  out.push_back(run_grid("oracle.quadrature_even_p", 60, [&](std::size_t i) {
    Rng rng(SeedSpec{seed, 104}, i);
    const auto terms = 1 + rng.below(10);
    std::vector<std::pair<std::int64_t, std::complex<double>>> t;
    for (std::uint64_t j = 0; j < terms; ++j)
      t.emplace_back(static_cast<std::int64_t>(rng.below(61)) - 30,
                     std::polar(rng.uniform(), 2.0 * std::numbers::pi * rng.uniform()));
    const auto s = FrequencySpectrum::from_terms(t);
    const int n = 1 + static_cast<int>(i % 3);
    const double exact = even_norm_coeff(s, n);
    const double quad = lp_norm_quadrature(s, 2.0 * n);
    const double rel = std::fabs(quad - exact) / exact;
    return Outcome{rel < 1e-9, -rel};
  }));

  return out;
}

}  // namespace expsum_cli
