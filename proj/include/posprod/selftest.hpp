#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace posprod::selftest {

enum class Level { quick, full };

struct CriterionResult {
  int number = 0;
  std::string name;
  bool passed = false;
  double elapsed_s = 0.0;
  double budget_s = 0.0;  // enforced at full level
  std::string detail;     // first failure, or summary counts
};

using LineSink = std::function<void(const std::string&)>;

// Runs the bundled property suites. At full level every suite runs at its
// documented instance counts and must finish inside its runtime budget; the
// quick level runs reduced counts with no budget enforcement. One line per
// suite goes to the sink (when provided). Returns the number of failures.
int run(Level level, std::uint64_t seed, const LineSink& sink,
        std::vector<CriterionResult>* results = nullptr);

}  // namespace posprod::selftest
