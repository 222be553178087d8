#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "rexp/exact_int.hpp"
#include "rexp/expsum.hpp"

namespace rexp {

inline constexpr double kEulerGamma = 0.5772156649015329;

/// Thin shell |k^d - j^d - E| < D around the level set k^d - j^d = E.
struct ShellQuery {
  int d = 2;
  double E = 1.0;
  double D = 1.0;

  void validate() const;
};

enum class CountMethod { brute, fast };

struct CountResult {
  Count count = 0;
  CountMethod method = CountMethod::fast;
  std::uint64_t work = 0;  // inner-loop iterations
};

/// Closed integer range [lo, hi]; empty when lo > hi.
struct IntegerRange {
  i128 lo = 1;
  i128 hi = 0;

  bool empty() const { return lo > hi; }
};

/// Integers v with E - D < v < E + D, decided exactly on the binary values
/// of E and D (no rounding of E ± D).
IntegerRange open_window_integers(double E, double D);

/// D(x) = Σ_{n<=x} d(n) by the hyperbola identity 2 Σ_{a<=√x} ⌊x/a⌋ - ⌊√x⌋².
Count divisor_summatory(double x);

/// Δ(x) = D(x) - x ln x - (2γ - 1) x.
double divisor_error(double x);

/// #{(j, k) : 1 <= j < k, lo <= k^d - j^d <= hi}, enumerating b = k - j.
/// Adds the number of outer iterations to *work when given.
Count count_power_differences(int d, i128 lo, i128 hi, std::uint64_t* work = nullptr);

/// Pairs 1 <= j < k with |k^d - j^d - E| < D, one j at a time with a binary
/// search for the admissible k-range.
CountResult shell_count_brute(const ShellQuery& q);

/// Same count, enumerating the gap b = k - j and binary-searching on the
/// increasing map j -> (j + b)^d - j^d - b^d.
CountResult shell_count_fast(const ShellQuery& q);

struct ShellSupremum {
  Count sup_count = 0;
  double ratio = 0.0;   // sup_count / D^{2/d}
  double argmax_E = 0.0;
  std::size_t grid_size = 0;
};

/// Largest shell count over a grid of levels E in [D, D²]: every integer
/// when there are at most E_samples of them, otherwise a geometric grid of
/// E_samples points plus the endpoints plus every difference k^d - j^d in
/// range with j <= 2 D^{1/d}. Ties resolve to the smaller E.
ShellSupremum shell_sup_ratio(int d, double D, std::size_t E_samples);

/// Shape of the shell bound at level E = D^s (constant 1):
/// D^{1 + s(2/d - 1)} for s <= d²/(d²-d-1), else D^{(s/d)(1 - 1/d)}.
/// Requires d >= 3, 1 < s <= 2, D >= 1.
double power_level_shell_bound(int d, double D, double s);

/// R_d(x) = #{(j, k) in Z² : 0 < |k|^d - |j|^d <= x}.
Count hyperbolic_count(int d, double x);

/// Table of R_{n,d,M}(m): ordered n-tuples from {1^d, ..., M^d} summing to m.
/// Guard: n·M^d <= 2^40.
RepresentationTable representation_count(int n, int d, std::int64_t M);

/// Σ_m R_{n,d,M}(m)²: solutions of j_1^d + ... + j_n^d = k_1^d + ... + k_n^d in [1, M].
Count diophantine_count(int n, int d, std::int64_t M);

struct GreenRuzsaSpec {
  std::int64_t base = 5;
  int digits = 1;
};

/// All Σ_{j<k} d_j base^j with d_j in {0, 1, 3}, sorted; exactly 3^k values.
/// Guard: 3^k <= 2^24.
std::vector<std::int64_t> greenruzsa_generate(const GreenRuzsaSpec& spec);

/// |set ∩ [center - radius, center + radius]| for a sorted set; radius >= 1.
std::size_t sparsity_count(std::span<const std::int64_t> set, std::int64_t center, std::int64_t radius);

/// 24 M^{ln 3 / ln base}.
double greenruzsa_sparsity_bound(std::int64_t base, std::int64_t radius);

struct DominationResult {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

/// Compares Σ_{j<k in A} φ(k^d - j^d) with the same sum over the interval
/// {b, ..., b + |A| - 1}. A sorted strictly increasing, 0 < b <= min A, d >= 2;
/// φ positive and decreasing.
DominationResult domination_check(const std::function<double(double)>& phi, std::span<const std::int64_t> A,
                                  std::int64_t b, int d);

}  // namespace rexp
