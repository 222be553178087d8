#include "rexp/expsum.hpp"

namespace rexp {

Count RepresentationTable::at(std::int64_t m) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), m,
                             [](const auto& e, std::int64_t key) { return e.first < key; });
  return (it != entries_.end() && it->first == m) ? it->second : Count{0};
}

Count RepresentationTable::total() const {
  Count s = 0;
  for (const auto& [m, r] : entries_) s = checked_add(s, r);
  return s;
}

Count RepresentationTable::sum_of_squares() const {
  Count s = 0;
  for (const auto& [m, r] : entries_) s = checked_add(s, checked_mul(r, r));
  return s;
}

RepresentationTable representation_table(const FrequencySpectrum& spectrum, int n) {
  if (!spectrum.is_unit()) throw std::invalid_argument("representation_table: spectrum must have unit coefficients");
  if (n < 1) throw std::invalid_argument("representation_table: n must be >= 1");
  if (spectrum.empty()) throw std::invalid_argument("representation_table: empty spectrum");
  return RepresentationTable(convolution_power(spectrum.multiplicities(), n));
}

RepresentationTable representation_table(std::span<const std::int64_t> freqs, int n) {
  return representation_table(FrequencySpectrum::unit(freqs), n);
}

Count even_moment(const FrequencySpectrum& spectrum, int n) {
  return representation_table(spectrum, n).sum_of_squares();
}

Count even_moment(std::span<const std::int64_t> freqs, int n) {
  return representation_table(freqs, n).sum_of_squares();
}

}  // namespace rexp
