#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <complex>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "rexp/expsum.hpp"

using namespace rexp;
using Complex = std::complex<double>;

namespace {

std::vector<std::int64_t> random_freqs(std::mt19937_64& gen, std::size_t size, std::int64_t lo, std::int64_t hi) {
  std::uniform_int_distribution<std::int64_t> pick(lo, hi);
  std::vector<std::int64_t> f(size);
  for (auto& x : f) x = pick(gen);
  return f;
}

FrequencySpectrum random_spectrum(std::mt19937_64& gen, std::size_t size, std::int64_t lo, std::int64_t hi) {
  const auto f = random_freqs(gen, size, lo, hi);
  std::normal_distribution<double> g;
  std::vector<std::pair<std::int64_t, Complex>> terms;
  for (auto x : f) terms.emplace_back(x, Complex(g(gen), g(gen)));
  return FrequencySpectrum::from_terms(terms);
}

}  // namespace

TEST_CASE("small even moments") {
  const std::vector<std::int64_t> one{1, 2};
  CHECK(even_moment(one, 2) == 6);
  const std::vector<std::int64_t> single{5};
  CHECK(even_moment(single, 3) == 1);
  const std::vector<std::int64_t> repeated{3, 3, 3};
  // |3 e(3y)|^4 integrates to 81
  CHECK(even_moment(repeated, 2) == 81);
  // second moment of distinct frequencies is the count
  const std::vector<std::int64_t> distinct{1, 4, 9, 16};
  CHECK(even_moment(distinct, 1) == 4);
}

TEST_CASE("representation table matches enumeration") {
  std::mt19937_64 gen(1);
  for (int trial = 0; trial < 30; ++trial) {
    const auto f = random_freqs(gen, 1 + trial % 6, -8, 20);
    const int n = 1 + trial % 3;
    const auto table = representation_table(f, n);
    const auto ref = oracle::representations(f, n);
    CHECK(table.size() == ref.size());
    for (const auto& [m, c] : ref) CHECK(table.at(m) == static_cast<Count>(c));
    CHECK(table.at(1'000'000) == 0);
    Count total = 1;
    for (int i = 0; i < n; ++i) total *= f.size();
    CHECK(table.total() == total);
    CHECK(even_moment(f, n) == static_cast<Count>(oracle::even_moment(f, n)));
  }
}

TEST_CASE("representation table requires unit coefficients") {
  const std::vector<std::pair<std::int64_t, Complex>> terms{{1, Complex(2.0)}};
  CHECK_THROWS_AS(representation_table(FrequencySpectrum::from_terms(terms), 2), std::invalid_argument);
}

TEST_CASE("sparse path agrees with dense path") {
  // frequencies far apart force the hashed convolution
  const std::vector<std::int64_t> wide{0, 1, 3, 2'000'000, 5'000'001};
  const std::vector<std::int64_t> wide_dense_equiv{0, 1, 3, 20, 51};
  CHECK(even_moment(wide, 2) == oracle::even_moment(wide, 2));
  CHECK(even_moment(wide, 3) == oracle::even_moment(wide, 3));
  CHECK(even_moment(wide_dense_equiv, 2) == oracle::even_moment(wide_dense_equiv, 2));
}

TEST_CASE("complex coefficients") {
  // (1, -1) on frequencies 0, 1: |1 - e(y)|^2 integrates to 2
  const std::vector<std::pair<std::int64_t, Complex>> terms{{0, Complex(1.0)}, {1, Complex(-1.0)}};
  const auto s = FrequencySpectrum::from_terms(terms);
  CHECK(even_norm_coeff(s, 1) == doctest::Approx(2.0));
  // |1 - e(y)|^4: 1 + 4 + 1 = 6
  CHECK(even_norm_coeff(s, 2) == doctest::Approx(6.0));
  CHECK(sup_norm_upper(s) == doctest::Approx(2.0));
  const auto grid = evaluate_on_grid(s, 2);
  CHECK(std::abs(grid[1]) == doctest::Approx(2.0));
  // equal frequencies merge
  const std::vector<std::pair<std::int64_t, Complex>> cancel{{4, Complex(1.0)}, {4, Complex(-1.0)}, {5, Complex(0, 1)}};
  CHECK(even_norm_coeff(FrequencySpectrum::from_terms(cancel), 2) == doctest::Approx(1.0));
}

TEST_CASE("quadrature is exact for even p on enough nodes") {
  std::mt19937_64 gen(2);
  for (int trial = 0; trial < 40; ++trial) {
    const auto s = random_spectrum(gen, 1 + trial % 9, -30, 30);
    for (int n : {1, 2, 3}) {
      const double exact = even_norm_coeff(s, n);
      const double quad = lp_norm_quadrature(s, 2.0 * n);
      CHECK(std::fabs(quad - exact) <= 1e-10 * exact);
      // 2n·span + 1 nodes is the threshold
      const double tight = lp_norm_quadrature(s, 2.0 * n, 2 * n * s.span() + 1);
      CHECK(std::fabs(tight - exact) <= 1e-10 * exact);
    }
  }
}

TEST_CASE("norms are nondecreasing in p") {
  std::mt19937_64 gen(3);
  for (int trial = 0; trial < 20; ++trial) {
    const auto s = random_spectrum(gen, 2 + trial % 7, 0, 40);
    double prev = 0.0;
    for (double p : {1.0, 1.5, 2.0, 3.0, 4.0, 5.5, 6.0}) {
      const double norm = std::pow(lp_norm_quadrature(s, p), 1.0 / p);
      CHECK(norm >= prev * (1.0 - 1e-12));
      prev = norm;
    }
    CHECK(prev <= sup_norm_upper(s) * (1.0 + 1e-12));
  }
}

TEST_CASE("p = 3 sits between the p = 2 and p = 4 values") {
  // log-convexity of p -> ‖S‖_p^p gives ‖S‖_3^3 <= sqrt(‖S‖_2^2 ‖S‖_4^4)
  std::mt19937_64 gen(4);
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = random_freqs(gen, 3 + trial % 10, 0, 60);
    const auto s = FrequencySpectrum::unit(f);
    const double m2 = to_double(even_moment(f, 1));
    const double m4 = to_double(even_moment(f, 2));
    const double m3 = lp_norm_quadrature(s, 3.0);
    CHECK(m3 <= std::sqrt(m2 * m4) * (1.0 + 1e-9));
    CHECK(std::pow(m3, 1.0 / 3.0) >= std::sqrt(m2) * (1.0 - 1e-9));
  }
}

TEST_CASE("even moment lower bound n! T^n for distinct frequencies") {
  // every permutation of an n-tuple with distinct entries has the same sum
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 10; ++trial) {
    auto f = random_freqs(gen, 12, 0, 500);
    std::sort(f.begin(), f.end());
    f.erase(std::unique(f.begin(), f.end()), f.end());
    const double T = static_cast<double>(f.size());
    CHECK(to_double(even_moment(f, 2)) >= 2.0 * T * T - T);
    CHECK(to_double(even_moment(f, 3)) >= 6.0 * T * (T - 1) * (T - 2));
  }
}

TEST_CASE("phase shift and translation leave norms unchanged") {
  std::mt19937_64 gen(6);
  const auto s = random_spectrum(gen, 6, -10, 10);
  auto shifted = s;
  shifted.freqs.array() += 1000;
  auto rotated = s;
  rotated.coeffs *= std::polar(1.0, 0.7);
  const double base = even_norm_coeff(s, 2);
  CHECK(even_norm_coeff(shifted, 2) == doctest::Approx(base).epsilon(1e-12));
  CHECK(even_norm_coeff(rotated, 2) == doctest::Approx(base).epsilon(1e-12));
  CHECK(lp_norm_quadrature(shifted, 3.0) == doctest::Approx(lp_norm_quadrature(s, 3.0)).epsilon(1e-10));
}

TEST_CASE("argument checks") {
  const std::vector<std::int64_t> f{1, 2};
  const auto s = FrequencySpectrum::unit(f);
  CHECK_THROWS_AS(lp_norm_quadrature(s, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(even_norm_coeff(s, 0), std::invalid_argument);
  CHECK_THROWS_AS(evaluate_on_grid(s, 0), std::invalid_argument);
  CHECK_THROWS_AS(even_norm_coeff(FrequencySpectrum{}, 1), std::invalid_argument);
}

TEST_CASE("long double instantiation") {
  using LongSpectrum = BasicFrequencySpectrum<long double>;
  const std::vector<std::int64_t> f{0, 3, 7};
  const auto s = LongSpectrum::unit(f);
  CHECK(static_cast<double>(even_norm_coeff(s, 2)) == doctest::Approx(to_double(even_moment(f, 2))));
}
