#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace expsum_cli {

struct CheckSummary {
  std::string id;
  std::size_t cases = 0;
  std::size_t failures = 0;
  double min_slack = 0.0;  // smallest bound - exact seen (or -max error for agreement checks)
};

/// Grids over the Poisson probability inequalities plus cheap oracle cross-checks.
std::vector<CheckSummary> run_verification(std::uint64_t seed, double tol);

}  // namespace expsum_cli
