#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sri/core_model.hpp"
#include "sri/io.hpp"
#include "sri/report.hpp"

namespace sri {

enum class Bound {
  Within,   // |actual - target| <= tolerance; tolerance 0 means exact
  AtLeast,  // actual >= target
  AtMost,   // actual <= target
  Above,    // actual > target
};

struct Expectation {
  int criterion = 0;
  std::string key;
  double target = 0.0;
  double tolerance = 0.0;
  Bound bound = Bound::Within;

  bool accepts(double actual) const noexcept;
  std::string describe() const;
};

/// Every numeric target of the acceptance suite, in criterion order.
const std::vector<Expectation>& acceptance_expectations();
const Expectation& expectation(std::string_view key);

struct Check {
  std::string label;
  std::string expected;
  std::string actual;
  bool passed = false;
};

struct CriterionResult {
  int number = 0;
  std::string title;
  std::vector<Check> checks;
  bool passed() const noexcept;
};

struct AcceptanceReport {
  std::vector<CriterionResult> criteria;
  double elapsed_seconds = 0.0;
  double time_limit_seconds = 10.0;
  bool within_time_limit() const noexcept { return elapsed_seconds <= time_limit_seconds; }
  bool passed() const noexcept;
};

inline constexpr int kCriterionCount = 14;

/// Runs criteria 1..14 (or only `only`) against `matrix`, which must be the
/// bundled reference dataset. Analysis errors are recorded as failed checks.
AcceptanceReport run_acceptance(const ScoreMatrix& matrix, const AnalysisConfig& config,
                                std::optional<int> only = std::nullopt);

/// One "PASS"/"FAIL" line per criterion followed by indented check lines.
/// Contains no timing figures, so output is reproducible.
std::string render_acceptance(const AcceptanceReport& report, TableFormat format);

}  // namespace sri
