// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "oracles.hpp"
#include "rexp/bounds.hpp"
#include "rexp/expsum.hpp"
#include "rexp/lattice.hpp"
#include "rexp/majorant.hpp"
#include "rexp/moments.hpp"
#include "rexp/parallel.hpp"

using namespace rexp;

namespace {

// Largest shell supremum ratio observed against the brute-force counts for
// d = 3, D <= 1000 was 0.96; the threshold doubles it.
constexpr double kShellConstant = 2.0;

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

ExperimentSpec interval_spec(ProcessKind kind, std::int64_t M, std::size_t samples, std::uint64_t seed) {
  ExperimentSpec spec;
  spec.process = kind;
  spec.index_set.resize(static_cast<std::size_t>(M));
  std::iota(spec.index_set.begin(), spec.index_set.end(), std::int64_t{1});
  spec.p = 4.0;
  spec.samples = samples;
  spec.seed = SeedSpec{seed, static_cast<std::uint64_t>(M)};
  return spec;
}

Verdict shell_oracle_equivalence() {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<ShellQuery> queries;
  for (int d = 2; d <= 5; ++d)
    for (int D = 1; D <= 50; ++D)
      for (int E = D; E <= std::min(D * D, 5000); ++E) queries.push_back({d, double(E), double(D)});
  const auto same = parallel_map<char>(queries.size(), [&](std::size_t i) {
    return static_cast<char>(shell_count_fast(queries[i]).count == shell_count_brute(queries[i]).count);
  });
  const auto mismatches = static_cast<std::size_t>(std::count(same.begin(), same.end(), 0));
  const double secs = seconds_since(t0);
  return {mismatches == 0 && secs < 120.0,
          fmt("%zu queries, %zu mismatches, %.1f s (limit 120 s)", queries.size(), mismatches, secs)};
}

Verdict shell_supremum_shape() {
  const std::vector<double> Ds{10, 20, 50, 100, 200};
  std::vector<std::pair<double, double>> pts;
  double worst = 0.0;
  bool oracle_ok = true;
  for (double D : Ds) {
    const auto sup = shell_sup_ratio(3, D, 50000);  // every integer level in [D, D^2]
    // the same supremum from brute-force counts
    Count brute_sup = 0;
    for (double E = D; E <= D * D; E += 1.0) brute_sup = std::max(brute_sup, shell_count_brute({3, E, D}).count);
    oracle_ok = oracle_ok && brute_sup == sup.sup_count;
    pts.emplace_back(D, to_double(sup.sup_count));
    worst = std::max(worst, sup.ratio);
  }
  const auto fit = slope_fit(pts);
  const double lo = 2.0 / 3.0 - 0.15, hi = 2.0 / 3.0 + 0.15;
  const bool pass = oracle_ok && fit.slope >= lo && fit.slope <= hi && worst < kShellConstant;
  return {pass, fmt("slope %.4f in [%.4f, %.4f]; max ratio %.4f < C = %.1f; brute sup %s", fit.slope, lo, hi, worst,
                    kShellConstant, oracle_ok ? "agrees" : "DISAGREES")};
}

Verdict growth_exponent(ProcessKind kind, double lo, double hi, double limit_s) {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<std::pair<double, double>> pts;
  for (std::int64_t M : {16, 32, 64, 128, 256})
    pts.emplace_back(double(M), mc_even_moment(interval_spec(kind, M, 1000, 20240601)).mean);
  const auto fit = slope_fit(pts);
  const double secs = seconds_since(t0);
  return {fit.slope >= lo && fit.slope <= hi && secs < limit_s,
          fmt("slope %.4f in [%.1f, %.1f], 1000 samples per M, %.1f s", fit.slope, lo, hi, secs)};
}

Verdict squares_on_average() {
  std::vector<std::vector<std::int64_t>> sets;
  std::vector<std::int64_t> first(64);
  std::iota(first.begin(), first.end(), std::int64_t{1});
  sets.push_back(first);
  std::mt19937_64 gen(77);
  std::vector<std::int64_t> pool(256);
  std::iota(pool.begin(), pool.end(), std::int64_t{1});
  for (int s = 0; s < 20; ++s) {
    std::shuffle(pool.begin(), pool.end(), gen);
    std::vector<std::int64_t> A(pool.begin(), pool.begin() + 64);
    std::sort(A.begin(), A.end());
    sets.push_back(A);
  }
  const double size = 64.0;
  const double lower = size * size;
  const double scale = size * size * std::pow(std::log(1.0 + size), 1.5);
  bool pass = true;
  double fitted = 0.0;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    ExperimentSpec spec;
    spec.process = ProcessKind::poisson;
    spec.index_set = sets[i];
    spec.map = TimeMap::power(2);
    spec.p = 4.0;
    spec.samples = 400;
    spec.seed = SeedSpec{4, i};
    const auto e = mc_even_moment(spec);
    pass = pass && lower <= e.mean + 5.0 * e.std_error && e.mean <= 10.0 * scale;
    fitted = std::max(fitted, e.mean / scale);
  }
  return {pass, fmt("21 sets of size 64; |A|^2 <= est + 5 SE on all; fitted constant est/(|A|^2 log^1.5(1+|A|)) <= %.4f (limit 10)",
                    fitted)};
}

Verdict equally_spaced_powers() {
  const double r = 2.0;
  bool pass = true;
  std::string detail;
  for (std::int64_t M : {16, 32, 64, 128, 256}) {
    auto spec = interval_spec(ProcessKind::poisson, M, 200, 5);
    spec.map = TimeMap::arithmetic(r);
    const auto e = mc_even_moment(spec);
    const double m = double(M);
    const double lower = 0.5 * m * m;
    const double upper = 10.0 * (m * m * std::log(m) + std::pow(m, 3.0 - r));
    const bool ok = lower <= e.mean + 5.0 * e.std_error && e.mean - 5.0 * e.std_error <= upper;
    pass = pass && ok;
    detail += fmt("%sM=%lld: %.4g/M^2", detail.empty() ? "" : ", ", static_cast<long long>(M), e.mean / (m * m));
  }
  return {pass, detail};
}

Verdict exact_vs_monte_carlo() {
  const std::vector<double> times{1, 2, 3};
  const double exact = exact_even_moment_poisson(times, 2, 1e-8);
  const auto e = mc_even_moment(interval_spec(ProcessKind::poisson, 3, 100000, 99));
  const double z = std::fabs(e.mean - exact) / e.std_error;
  return {z < 5.0, fmt("exact %.6f, MC %.6f +- %.6f (%.2f SE)", exact, e.mean, e.std_error, z)};
}

Verdict bound_grids() {
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t checks = 0, failures = 0;
  const auto tally = [&](bool ok) {
    ++checks;
    failures += ok ? 0 : 1;
  };
  // concentration
  for (std::int64_t m = 1; m <= 200; ++m) {
    const auto top = static_cast<std::int64_t>(std::floor(10.0 * std::sqrt(double(m))));
    for (std::int64_t k = 1; k <= top; ++k) tally(poisson_concentration_check(m, double(k) / 10.0).holds);
  }
  // supremum over t, Stirling/Robbins
  for (std::int64_t a = 1; a <= 10000; ++a) {
    tally(pmf_sup_over_t(a).holds);
    const auto [lower, upper] = robbins_check(a);
    tally(lower.holds);
    tally(upper.holds);
  }
  // supremum over a
  for (int k = 0; k <= 1000; ++k) {
    const auto m = pmf_sup_over_a(0.1 * k);
    tally(m.scan_confirms && m.value <= m.bound * (1.0 + 1e-12));
  }
  // linear combinations and interval sums on random instances
  std::mt19937_64 gen(8);
  std::uniform_real_distribution<double> mean(0.1, 20.0), t(0.0, 10.0);
  std::uniform_int_distribution<std::int64_t> coeff(1, 4), terms(1, 3);
  for (int i = 0; i < 100; ++i) {
    std::vector<double> means;
    std::vector<std::int64_t> coeffs;
    for (auto n = terms(gen); n > 0; --n) {
      means.push_back(mean(gen));
      coeffs.push_back(coeff(gen));
    }
    for (std::int64_t a = 0; a < 40; ++a) tally(combo_pmf_bound_check(means, coeffs, a, 1e-10).holds);
    std::vector<TimeInterval> iv;
    for (auto n = terms(gen); n > 0; --n) {
      const double x = t(gen);
      iv.push_back({x, x + 0.05 + t(gen)});
    }
    for (std::int64_t a = 0; a < 10; ++a) tally(interval_sum_bound_check(iv, a, 1e-10).holds);
  }
  // square-root neighbourhoods
  std::uniform_real_distribution<double> logs(50.0, 80.0), cs(1.0, 10.0);
  for (int i = 0; i < 10000; ++i) {
    const auto r = sqrt_log_neighborhood_check(LogReal{logs(gen)}, LogReal{logs(gen)}, cs(gen));
    tally(r.implication_a && r.implication_b);
  }
  const double secs = seconds_since(t0);
  return {failures == 0 && secs < 60.0, fmt("%zu checks, %zu failures, %.1f s (limit 60 s)", checks, failures, secs)};
}

Verdict divisor_problem() {
  const auto table = oracle::divisor_summatory_table(1'000'000);
  std::size_t mismatches = 0;
  for (std::int64_t x = 1; x <= 100000; ++x)
    if (divisor_summatory(double(x)) != static_cast<Count>(table[static_cast<std::size_t>(x)])) ++mismatches;
  // On [n, n+1) D is constant and x ln x + (2γ-1)x increases, so |Δ| peaks at an endpoint.
  const auto main_term = [](double x) { return x * std::log(x) + (2.0 * kEulerGamma - 1.0) * x; };
  double worst = 0.0;
  std::size_t violations = 0;
  for (std::int64_t n = 1; n <= 1'000'000; ++n) {
    const double Dn = double(table[static_cast<std::size_t>(n)]);
    const double x = double(n), next = double(n + 1);
    const double at = std::fabs(Dn - main_term(x)) / std::sqrt(x);
    const double before_next = n < 1'000'000 ? std::fabs(Dn - main_term(next)) / std::sqrt(next) : 0.0;
    worst = std::max({worst, at, before_next});
    if (at > 2.0 || before_next > 2.0) ++violations;
  }
  const double lib = std::fabs(divisor_error(1e6) - (double(table[1'000'000]) - main_term(1e6)));
  return {mismatches == 0 && violations == 0 && lib < 1e-6,
          fmt("D(x) mismatches for x <= 1e5: %zu; max |Δ(x)|/√x over x <= 1e6: %.4f (limit 2)", mismatches, worst)};
}

Verdict quadrature_exactness() {
  std::mt19937_64 gen(10);
  std::uniform_int_distribution<std::int64_t> freq(-200, 200), terms(1, 24);
  std::normal_distribution<double> g;
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    std::vector<std::pair<std::int64_t, std::complex<double>>> t;
    for (auto n = terms(gen); n > 0; --n) t.emplace_back(freq(gen), std::complex<double>(g(gen), g(gen)));
    const auto s = FrequencySpectrum::from_terms(t);
    for (int n : {1, 2, 3}) {
      const double exact = even_norm_coeff(s, n);
      worst = std::max(worst, std::fabs(lp_norm_quadrature(s, 2.0 * n) - exact) / exact);
    }
  }
  return {worst < 1e-9, fmt("200 spectra x p in {2,4,6}: max relative error %.3g (limit 1e-9)", worst)};
}

Verdict greenruzsa_sparsity() {
  std::size_t windows = 0, violations = 0;
  std::mt19937_64 gen(11);
  for (std::int64_t base : {5, 7, 10})
    for (int k = 1; k <= 8; ++k) {
      const auto set = greenruzsa_generate({base, k});
      const auto top = std::max<std::int64_t>(1, set.back());
      std::uniform_int_distribution<std::int64_t> center(-top / 4, top + top / 4);
      std::uniform_real_distribution<double> logr(0.0, std::log(double(top) + 1.0));
      for (int i = 0; i < 1000; ++i) {
        const auto radius = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::exp(logr(gen))));
        ++windows;
        if (double(sparsity_count(set, center(gen), radius)) > greenruzsa_sparsity_bound(base, radius)) ++violations;
      }
    }
  return {violations == 0, fmt("%zu windows over D in {5,7,10}, k <= 8: %zu violations", windows, violations)};
}

Verdict majorant_property() {
  std::mt19937_64 gen(12);
  std::uniform_int_distribution<std::int64_t> freq(0, 60), terms(2, 10);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    std::vector<std::int64_t> f;
    for (auto n = terms(gen); n > 0; --n) f.push_back(freq(gen));
    const int p = 2 * (1 + i % 3);
    const auto r = majorant_ratio(f, p, 4, SeedSpec{12, static_cast<std::uint64_t>(i)});
    worst = std::max(worst, std::fabs(r.ratio - 1.0));
  }
  ExperimentSpec process;
  process.process = ProcessKind::poisson;
  const std::vector<std::size_t> sizes{8, 16, 32, 64};
  const auto pts = genericity_experiment(process, sizes, 4.0, 0.2, 20, 2, SeedSpec{13, 0});
  bool trend = true;
  std::string probs;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    probs += fmt("%s%.3f", i ? "," : "", pts[i].probability);
    if (i == 0) continue;
    const double slack = 2.0 * std::hypot(pts[i].std_error, pts[i - 1].std_error);
    trend = trend && pts[i].probability <= pts[i - 1].probability + slack;
  }
  return {worst <= 1e-6 && trend,
          fmt("max |ratio - 1| over 50 sets %.2g (limit 1e-6); exceedance by size 8..64: %s", worst, probs.c_str())};
}

}  // namespace

int main() {
  set_worker_count(std::max(1u, std::thread::hardware_concurrency()));
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
      {"shell counts: fast equals brute force", shell_oracle_equivalence},
      {"shell supremum grows like D^(2/3)", shell_supremum_shape},
      {"Poisson L4 moment exponent", [] { return growth_exponent(ProcessKind::poisson, 2.8, 3.2, 300.0); }},
      {"random walk L4 moment exponent", [] { return growth_exponent(ProcessKind::walk, 3.3, 3.7, 300.0); }},
      {"squares: L4 moment between |A|^2 and |A|^2 log^1.5", squares_on_average},
      {"equally spaced powers r = 2", equally_spaced_powers},
      {"exact L4 moment vs Monte Carlo", exact_vs_monte_carlo},
      {"probability bound grids", bound_grids},
      {"divisor problem", divisor_problem},
      {"quadrature exactness", quadrature_exactness},
      {"Green-Ruzsa sparsity", greenruzsa_sparsity},
      {"majorant property at even p", majorant_property},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failed += v.pass ? 0 : 1;
    std::printf("AC%-2zu %s  %s: %s\n", i + 1, v.pass ? "PASS" : "FAIL", criteria[i].first, v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - static_cast<std::size_t>(failed), criteria.size());
  return failed == 0 ? 0 : 1;
}
