#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "rexp/exact_int.hpp"

namespace rexp {

/// Output ranges up to this many slots are convolved into a dense buffer;
/// wider ranges go through a hash map.
inline constexpr std::int64_t kDenseConvolutionSpan = std::int64_t{1} << 20;

/// Sparse series over the integers: (index, value) pairs sorted by index,
/// no duplicate indices.
template <typename T>
using SparseSeries = std::vector<std::pair<std::int64_t, T>>;

namespace detail {

template <typename T>
void accumulate(T& acc, const T& a, const T& b) {
  if constexpr (std::is_same_v<T, Count>)
    acc = checked_add(acc, checked_mul(a, b));
  else
    acc += a * b;
}

}  // namespace detail

/// Exact convolution of two sorted sparse series. Contributions are summed in
/// (left index, right index) order whichever storage is used, so floating
/// results are reproducible bit for bit.
template <typename T>
SparseSeries<T> convolve(const SparseSeries<T>& lhs, const SparseSeries<T>& rhs) {
  if (lhs.empty() || rhs.empty()) return {};
  const i128 lo = static_cast<i128>(lhs.front().first) + rhs.front().first;
  const i128 hi = static_cast<i128>(lhs.back().first) + rhs.back().first;
  if (lo < INT64_MIN || hi > INT64_MAX) throw OverflowError("convolve: frequency sum exceeds 64 bits");
  const auto base = static_cast<std::int64_t>(lo);
  SparseSeries<T> out;
  if (hi - lo < kDenseConvolutionSpan) {
    std::vector<T> dense(static_cast<std::size_t>(hi - lo + 1), T{});
    std::vector<char> touched(dense.size(), 0);
    for (const auto& [i, a] : lhs)
      for (const auto& [j, b] : rhs) {
        const auto slot = static_cast<std::size_t>(i + j - base);
        detail::accumulate(dense[slot], a, b);
        touched[slot] = 1;
      }
    for (std::size_t s = 0; s < dense.size(); ++s)
      if (touched[s]) out.emplace_back(base + static_cast<std::int64_t>(s), dense[s]);
    return out;
  }
  std::unordered_map<std::int64_t, T> acc;
  acc.reserve(lhs.size() * rhs.size());
  for (const auto& [i, a] : lhs)
    for (const auto& [j, b] : rhs) detail::accumulate(acc[i + j], a, b);
  out.assign(acc.begin(), acc.end());
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return out;
}

/// n-fold self convolution computed as n-1 successive convolutions.
template <typename T>
SparseSeries<T> convolution_power(const SparseSeries<T>& base, int n) {
  if (n < 1) throw std::invalid_argument("convolution_power: n must be >= 1");
  SparseSeries<T> acc = base;
  for (int k = 1; k < n; ++k) acc = convolve(acc, base);
  return acc;
}

/// Exponential sum Σ_j a_j e(f_j y) with integer frequencies. The raw term
/// list is kept (equal frequencies are not merged) so multiplicities survive
/// for counting; merged() gives the canonical form.
template <typename Scalar>
struct BasicFrequencySpectrum {
  using Complex = std::complex<Scalar>;
  using FreqVector = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;
  using CoeffVector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;

  FreqVector freqs;
  CoeffVector coeffs;

  BasicFrequencySpectrum() = default;
  BasicFrequencySpectrum(FreqVector f, CoeffVector c) : freqs(std::move(f)), coeffs(std::move(c)) {
    if (freqs.size() != coeffs.size()) throw std::invalid_argument("FrequencySpectrum: size mismatch");
  }

  /// All coefficients exactly 1.
  static BasicFrequencySpectrum unit(std::span<const std::int64_t> f) {
    FreqVector fv(static_cast<Eigen::Index>(f.size()));
    for (std::size_t i = 0; i < f.size(); ++i) fv[static_cast<Eigen::Index>(i)] = f[i];
    return {fv, CoeffVector::Ones(fv.size())};
  }

  static BasicFrequencySpectrum from_terms(std::span<const std::pair<std::int64_t, Complex>> terms) {
    FreqVector fv(static_cast<Eigen::Index>(terms.size()));
    CoeffVector cv(static_cast<Eigen::Index>(terms.size()));
    for (std::size_t i = 0; i < terms.size(); ++i) {
      fv[static_cast<Eigen::Index>(i)] = terms[i].first;
      cv[static_cast<Eigen::Index>(i)] = terms[i].second;
    }
    return {fv, cv};
  }

  Eigen::Index size() const { return freqs.size(); }
  bool empty() const { return freqs.size() == 0; }

  bool is_unit() const { return (coeffs.array() == Complex(1)).all(); }

  std::int64_t min_freq() const { return freqs.minCoeff(); }
  std::int64_t max_freq() const { return freqs.maxCoeff(); }
  std::int64_t span() const { return empty() ? 0 : max_freq() - min_freq(); }

  /// Coefficients summed per distinct frequency, sorted by frequency.
  SparseSeries<Complex> merged() const {
    SparseSeries<Complex> terms;
    terms.reserve(static_cast<std::size_t>(size()));
    for (Eigen::Index i = 0; i < size(); ++i) terms.emplace_back(freqs[i], coeffs[i]);
    std::stable_sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    SparseSeries<Complex> out;
    for (const auto& t : terms) {
      if (!out.empty() && out.back().first == t.first)
        out.back().second += t.second;
      else
        out.push_back(t);
    }
    return out;
  }

  /// Multiplicity of each distinct frequency.
  SparseSeries<Count> multiplicities() const {
    std::vector<std::int64_t> f(freqs.data(), freqs.data() + freqs.size());
    std::sort(f.begin(), f.end());
    SparseSeries<Count> out;
    for (auto x : f) {
      if (!out.empty() && out.back().first == x)
        ++out.back().second;
      else
        out.emplace_back(x, Count{1});
    }
    return out;
  }
};

using FrequencySpectrum = BasicFrequencySpectrum<double>;

/// Exact n-fold representation counts R(m) of a unit spectrum.
class RepresentationTable {
 public:
  RepresentationTable() = default;
  explicit RepresentationTable(SparseSeries<Count> entries) : entries_(std::move(entries)) {}

  const SparseSeries<Count>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  /// R(m); 0 outside the support.
  Count at(std::int64_t m) const;
  /// Σ_m R(m).
  Count total() const;
  /// Σ_m R(m)², overflow-checked.
  Count sum_of_squares() const;

 private:
  SparseSeries<Count> entries_;
};

/// R(m) = #{ordered n-tuples of term indices with frequency sum m}.
/// Requires a unit spectrum and n >= 1.
RepresentationTable representation_table(const FrequencySpectrum& spectrum, int n);
RepresentationTable representation_table(std::span<const std::int64_t> freqs, int n);

/// ‖Σ e(f_j y)‖_{2n}^{2n} = Σ_m R(m)², exact.
Count even_moment(const FrequencySpectrum& spectrum, int n);
Count even_moment(std::span<const std::int64_t> freqs, int n);

/// ‖Σ a_j e(f_j y)‖_{2n}^{2n} for arbitrary complex coefficients, via the
/// n-fold complex convolution of the merged coefficients.
template <typename Scalar>
Scalar even_norm_coeff(const BasicFrequencySpectrum<Scalar>& spectrum, int n) {
  if (n < 1) throw std::invalid_argument("even_norm_coeff: n must be >= 1");
  if (spectrum.empty()) throw std::invalid_argument("even_norm_coeff: empty spectrum");
  const auto power = convolution_power(spectrum.merged(), n);
  Scalar s = 0;
  for (const auto& [m, c] : power) s += std::norm(c);
  return s;
}

/// Node count used when the caller does not choose one: 4·n·span + 7 with
/// n = ceil(p/2), comfortably above the exactness threshold for even p.
template <typename Scalar>
std::int64_t default_quadrature_nodes(const BasicFrequencySpectrum<Scalar>& spectrum, double p) {
  const auto n = static_cast<std::int64_t>(std::ceil(p / 2.0));
  return 4 * n * spectrum.span() + 7;
}

/// S(i/nodes) for i = 0, ..., nodes-1. Phases are reduced exactly modulo
/// `nodes` before the table lookup.
template <typename Scalar>
Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1> evaluate_on_grid(const BasicFrequencySpectrum<Scalar>& spectrum,
                                                                       std::int64_t nodes) {
  using Complex = std::complex<Scalar>;
  if (nodes < 1) throw std::invalid_argument("evaluate_on_grid: nodes must be >= 1");
  Eigen::Matrix<Complex, Eigen::Dynamic, 1> roots(nodes);
  for (std::int64_t r = 0; r < nodes; ++r)
    roots[r] = std::polar(Scalar(1), static_cast<Scalar>(2 * std::numbers::pi_v<long double> * static_cast<long double>(r) /
                                                           static_cast<long double>(nodes)));
  Eigen::Matrix<Complex, Eigen::Dynamic, 1> values = Eigen::Matrix<Complex, Eigen::Dynamic, 1>::Zero(nodes);
  for (const auto& [f, a] : spectrum.merged()) {
    std::int64_t step = f % nodes;
    if (step < 0) step += nodes;
    std::int64_t phase = 0;
    for (std::int64_t i = 0; i < nodes; ++i) {
      values[i] += a * roots[phase];
      phase += step;
      if (phase >= nodes) phase -= nodes;
    }
  }
  return values;
}

/// (1/nodes) Σ_i |S(i/nodes)|^p, the rectangle-rule value of ∫_T |S|^p.
/// Exact for even p = 2n once nodes > 2n·span.
template <typename Scalar>
Scalar lp_norm_quadrature(const BasicFrequencySpectrum<Scalar>& spectrum, double p, std::int64_t nodes) {
  if (!(p >= 1.0)) throw std::invalid_argument("lp_norm_quadrature: p must be >= 1");
  if (spectrum.empty()) throw std::invalid_argument("lp_norm_quadrature: empty spectrum");
  const auto values = evaluate_on_grid(spectrum, nodes);
  return values.array().abs2().pow(static_cast<Scalar>(p / 2.0)).mean();
}

template <typename Scalar>
Scalar lp_norm_quadrature(const BasicFrequencySpectrum<Scalar>& spectrum, double p) {
  return lp_norm_quadrature(spectrum, p, default_quadrature_nodes(spectrum, p));
}

/// Σ_j |a_j|, an upper bound for sup_y |S(y)| that is attained at y = 0 for
/// unit coefficients.
template <typename Scalar>
Scalar sup_norm_upper(const BasicFrequencySpectrum<Scalar>& spectrum) {
  return spectrum.coeffs.cwiseAbs().sum();
}

}  // namespace rexp
