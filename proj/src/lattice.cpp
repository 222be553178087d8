#include "rexp/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rexp/parallel.hpp"

namespace rexp {

namespace {

constexpr double kTwo63 = 9223372036854775808.0;

// x = mant * 2^exp exactly, mant odd or zero.
struct Dyadic {
  i128 mant = 0;
  int exp = 0;
};

Dyadic to_dyadic(double x) {
  int e = 0;
  const double f = std::frexp(x, &e);
  Dyadic d{static_cast<i128>(std::ldexp(f, 53)), e - 53};
  if (d.mant == 0) return {0, 0};
  while ((d.mant & 1) == 0) {
    d.mant >>= 1;
    ++d.exp;
  }
  return d;
}

// floor(x / 2^s), s >= 0; >> on signed __int128 rounds toward -inf.
i128 floor_shift(i128 x, int s) { return x >> s; }
i128 ceil_shift(i128 x, int s) { return -((-x) >> s); }

i128 power_gap(i128 j, i128 b, int d) {
  // (j + b)^d - j^d - b^d
  return saturating_pow(j + b, d) - saturating_pow(j, d) - saturating_pow(b, d);
}

// Smallest j in [1, j_hi + 1] with g(j) >= target (g increasing).
i128 first_gap_at_least(i128 b, int d, i128 target, i128 j_hi) {
  i128 lo = 1, hi = j_hi + 1;
  while (lo < hi) {
    const i128 mid = lo + (hi - lo) / 2;
    if (power_gap(mid, b, d) >= target)
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo;
}

}  // namespace

void ShellQuery::validate() const {
  if (d < 2) throw std::invalid_argument("ShellQuery: d must be >= 2");
  if (!(E >= 1.0) || !(D >= 1.0)) throw std::invalid_argument("ShellQuery: E and D must be >= 1");
  if (!(E + D <= kTwo63)) throw GuardError("ShellQuery: E + D must not exceed 2^63");
}

IntegerRange open_window_integers(double E, double D) {
  const Dyadic e = to_dyadic(E);
  const Dyadic w = to_dyadic(D);
  const int q = std::min(e.exp, w.exp);
  const i128 es = e.mant << (e.exp - q);
  const i128 ws = w.mant << (w.exp - q);
  const i128 lo_s = es - ws;
  const i128 hi_s = es + ws;
  if (q >= 0) return {(lo_s << q) + 1, (hi_s << q) - 1};
  const int s = -q;
  return {floor_shift(lo_s, s) + 1, ceil_shift(hi_s, s) - 1};
}

Count divisor_summatory(double x) {
  if (!(x >= 1.0)) throw std::invalid_argument("divisor_summatory: x must be >= 1");
  if (!(x < kTwo63)) throw GuardError("divisor_summatory: x must be below 2^63");
  const auto n = static_cast<std::int64_t>(std::floor(x));
  const std::int64_t s = integer_root(n, 2);
  Count sum = 0;
  for (std::int64_t a = 1; a <= s; ++a) sum = checked_add(sum, static_cast<Count>(n / a));
  return checked_add(sum, sum) - static_cast<Count>(s) * static_cast<Count>(s);
}

double divisor_error(double x) {
  return to_double(divisor_summatory(x)) - x * std::log(x) - (2.0 * kEulerGamma - 1.0) * x;
}

Count count_power_differences(int d, i128 lo, i128 hi, std::uint64_t* work) {
  if (d < 2) throw std::invalid_argument("count_power_differences: d must be >= 2");
  lo = std::max<i128>(lo, 1);
  if (lo > hi) return 0;
  Count total = 0;
  std::uint64_t iterations = 0;
  for (i128 b = 1;; ++b) {
    const i128 bd = saturating_pow(b, d);
    if (power_gap(1, b, d) + bd > hi) break;  // smallest difference with this gap is (1+b)^d - 1
    ++iterations;
    const i128 j_hi = static_cast<i128>(integer_root(hi / (d * b), d - 1)) + 1;
    const i128 first = first_gap_at_least(b, d, lo - bd, j_hi);
    const i128 past = first_gap_at_least(b, d, hi - bd + 1, j_hi);
    if (past > first) total = checked_add(total, static_cast<Count>(past - first));
  }
  if (work) *work += iterations;
  return total;
}

CountResult shell_count_brute(const ShellQuery& q) {
  q.validate();
  const IntegerRange r = open_window_integers(q.E, q.D);
  CountResult out{0, CountMethod::brute, 0};
  const i128 lo = std::max<i128>(r.lo, 1);
  const i128 hi = r.hi;
  if (lo > hi) return out;
  for (i128 j = 1; checked_mul(static_cast<i128>(q.d), saturating_pow(j, q.d - 1)) < hi; ++j) {
    ++out.work;
    const i128 jd = checked_pow(j, q.d);
    const i128 k_max = integer_root(jd + hi, q.d);
    const i128 k_min = std::max<i128>(j + 1, static_cast<i128>(integer_root(jd + lo - 1, q.d)) + 1);
    if (k_max >= k_min) out.count = checked_add(out.count, static_cast<Count>(k_max - k_min + 1));
  }
  return out;
}

CountResult shell_count_fast(const ShellQuery& q) {
  q.validate();
  const IntegerRange r = open_window_integers(q.E, q.D);
  CountResult out{0, CountMethod::fast, 0};
  out.count = count_power_differences(q.d, r.lo, r.hi, &out.work);
  return out;
}

ShellSupremum shell_sup_ratio(int d, double D, std::size_t E_samples) {
  if (E_samples < 1) throw std::invalid_argument("shell_sup_ratio: E_samples must be >= 1");
  if (!(D >= 1.0)) throw std::invalid_argument("shell_sup_ratio: D must be >= 1");
  const double top = D * D;
  const double first_int = std::ceil(D);
  const double last_int = std::floor(top);
  std::vector<double> grid;
  if (last_int - first_int + 1.0 <= static_cast<double>(E_samples)) {
    for (double e = first_int; e <= last_int; e += 1.0) grid.push_back(e);
  } else {
    grid.push_back(D);
    grid.push_back(top);
    const double step = std::log(top / D) / static_cast<double>(std::max<std::size_t>(E_samples - 1, 1));
    for (std::size_t i = 0; i < E_samples; ++i) grid.push_back(std::min(top, D * std::exp(step * static_cast<double>(i))));
    const auto j_max = static_cast<std::int64_t>(2.0 * std::pow(D, 1.0 / d));
    for (std::int64_t j = 1; j <= j_max; ++j) {
      const i128 jd = checked_pow(j, d);
      for (i128 k = j + 1;; ++k) {
        const i128 diff = checked_pow(k, d) - jd;
        if (static_cast<double>(diff) > top) break;
        if (static_cast<double>(diff) >= D) grid.push_back(static_cast<double>(diff));
      }
    }
  }
  if (grid.empty()) grid.push_back(D);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  const auto counts = parallel_map<Count>(grid.size(), [&](std::size_t i) {
    return shell_count_fast(ShellQuery{d, grid[i], D}).count;
  });
  ShellSupremum out;
  out.grid_size = grid.size();
  out.argmax_E = grid.front();
  for (std::size_t i = 0; i < grid.size(); ++i)
    if (counts[i] > out.sup_count) {
      out.sup_count = counts[i];
      out.argmax_E = grid[i];
    }
  out.ratio = to_double(out.sup_count) / std::pow(D, 2.0 / d);
  return out;
}

double power_level_shell_bound(int d, double D, double s) {
  if (d < 3) throw std::invalid_argument("power_level_shell_bound: d must be >= 3");
  if (!(s > 1.0 && s <= 2.0)) throw std::invalid_argument("power_level_shell_bound: s must lie in (1, 2]");
  if (!(D >= 1.0)) throw std::invalid_argument("power_level_shell_bound: D must be >= 1");
  const double dd = d;
  const double split = dd * dd / (dd * dd - dd - 1.0);
  if (s <= split) return std::pow(D, 1.0 + s * (2.0 / dd - 1.0));
  return std::pow(D, (s / dd) * (1.0 - 1.0 / dd));
}

Count hyperbolic_count(int d, double x) {
  if (d < 2) throw std::invalid_argument("hyperbolic_count: d must be >= 2");
  if (!(x >= 1.0)) throw std::invalid_argument("hyperbolic_count: x must be >= 1");
  if (!(x < kTwo63)) throw GuardError("hyperbolic_count: x must be below 2^63");
  const auto top = static_cast<i128>(std::floor(x));
  const Count quadrant = count_power_differences(d, 1, top);
  // j = 0 contributes (0, ±k) for 1 <= k <= x^{1/d}; j != 0 needs |k| > |j| >= 1 in four sign patterns
  return checked_add(checked_mul(Count{4}, quadrant), Count{2} * static_cast<Count>(integer_root(top, d)));
}

RepresentationTable representation_count(int n, int d, std::int64_t M) {
  if (n < 1 || d < 1 || M < 1) throw std::invalid_argument("representation_count: n, d, M must be >= 1");
  const i128 top = checked_mul(static_cast<i128>(n), saturating_pow(M, d));
  if (top > (i128{1} << 40)) throw GuardError("representation_count: n * M^d exceeds 2^40");
  std::vector<std::int64_t> powers;
  powers.reserve(static_cast<std::size_t>(M));
  for (std::int64_t j = 1; j <= M; ++j) powers.push_back(static_cast<std::int64_t>(checked_pow(j, d)));
  return representation_table(powers, n);
}

Count diophantine_count(int n, int d, std::int64_t M) { return representation_count(n, d, M).sum_of_squares(); }

std::vector<std::int64_t> greenruzsa_generate(const GreenRuzsaSpec& spec) {
  if (spec.base < 5) throw std::invalid_argument("greenruzsa_generate: base must be >= 5");
  if (spec.digits < 1) throw std::invalid_argument("greenruzsa_generate: digits must be >= 1");
  if (spec.digits > 15) throw GuardError("greenruzsa_generate: 3^k exceeds 2^24");  // 3^15 < 2^24 < 3^16
  std::vector<std::int64_t> out{0};
  i128 place = 1;
  for (int j = 0; j < spec.digits; ++j) {
    if (checked_mul(place, i128{3}) > INT64_MAX) throw OverflowError("greenruzsa_generate: values exceed 64 bits");
    const auto p = static_cast<std::int64_t>(place);
    const std::size_t n = out.size();
    for (std::int64_t digit : {1, 3})
      for (std::size_t i = 0; i < n; ++i) out.push_back(out[i] + digit * p);
    place = checked_mul(place, static_cast<i128>(spec.base));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t sparsity_count(std::span<const std::int64_t> set, std::int64_t center, std::int64_t radius) {
  if (radius < 1) throw std::invalid_argument("sparsity_count: radius must be >= 1");
  const auto first = std::lower_bound(set.begin(), set.end(), center - radius);
  const auto last = std::upper_bound(set.begin(), set.end(), center + radius);
  return last > first ? static_cast<std::size_t>(last - first) : 0;
}

double greenruzsa_sparsity_bound(std::int64_t base, std::int64_t radius) {
  return 24.0 * std::pow(static_cast<double>(radius), std::log(3.0) / std::log(static_cast<double>(base)));
}

DominationResult domination_check(const std::function<double(double)>& phi, std::span<const std::int64_t> A,
                                  std::int64_t b, int d) {
  if (d < 2) throw std::invalid_argument("domination_check: d must be >= 2");
  if (A.empty()) throw std::invalid_argument("domination_check: empty set");
  for (std::size_t i = 1; i < A.size(); ++i)
    if (A[i] <= A[i - 1]) throw std::invalid_argument("domination_check: A must be strictly increasing");
  if (!(b > 0 && b <= A.front())) throw std::invalid_argument("domination_check: need 0 < b <= min A");

  auto pair_sum = [&](auto element) {
    double s = 0.0;
    for (std::size_t k = 1; k < A.size(); ++k)
      for (std::size_t j = 0; j < k; ++j) {
        const i128 diff = checked_pow(element(k), d) - checked_pow(element(j), d);
        s += phi(static_cast<double>(diff));
      }
    return s;
  };
  DominationResult r;
  r.lhs = pair_sum([&](std::size_t i) { return static_cast<i128>(A[i]); });
  r.rhs = pair_sum([&](std::size_t i) { return static_cast<i128>(b) + static_cast<i128>(i); });
  r.holds = r.lhs <= r.rhs + 1e-12 * r.rhs;
  return r;
}

}  // namespace rexp
