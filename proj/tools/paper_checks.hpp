// The reproducible computations behind verify-paper, grouped by acceptance criterion.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace wcilink {

struct PaperCheck {
  int criterion = 0;
  std::string name;
  bool passed = false;
  std::string detail;
};

struct PaperCheckOptions {
  std::uint64_t seed = 7;
  std::size_t samples = 100;
  int trials = 20;
  bool parallel = false;
};

/// Criteria 1-8 on seeded random members over F_p, both with lambda != 0 and lambda = 0.
/// Exceptions from the pipeline are caught and recorded as failed checks.
std::vector<PaperCheck> paper_checks(const PaperCheckOptions& opt);

}  // namespace wcilink
