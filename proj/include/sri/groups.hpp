#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sri/core_model.hpp"
#include "sri/inference.hpp"

namespace sri {

struct NamedValue {
  std::string jurisdiction;
  double value = 0.0;
};

struct GapAnalysis {
  std::string category_a;
  std::string category_b;
  std::vector<NamedValue> gaps;  // a - b, matrix order
  double mean_gap = 0.0;
  double median_gap = 0.0;
  std::size_t positive_count = 0;
  double min_gap = 0.0;
  double max_gap = 0.0;
  std::vector<std::string> min_jurisdictions;
  std::vector<std::string> max_jurisdictions;
  std::optional<PairedTestResult> test;
  /// Set when the paired test is undefined (identical columns, zero-spread gaps).
  std::optional<ErrorKind> degenerate;
};

GapAnalysis gap_analysis(const ScoreMatrix& matrix, const std::string& category_a, const std::string& category_b);

struct GroupSummary {
  std::string label;
  std::size_t size = 0;
  double mean_overall = 0.0;
  std::map<std::string, double> category_means;
  std::vector<std::string> members;
};

struct GroupBreakdown {
  std::string dimension;
  /// Two-group dimensions: largest group first (ties by label). Otherwise by label.
  std::vector<GroupSummary> groups;
  std::vector<std::string> untagged;
  GroupTestResult test;
  /// Two-group dimensions only: first group's category mean minus the second's.
  std::vector<std::pair<std::string, double>> category_differentials;
};

/// `overall` is aligned with matrix.jurisdictions. Two labels run
/// Mann-Whitney with U and the rank-biserial oriented to the first group;
/// three or more run Kruskal-Wallis.
GroupBreakdown group_breakdown(const ScoreMatrix& matrix, const std::string& dimension,
                               const std::vector<double>& overall);

struct CategoryGroupDifferential {
  double mean_a = 0.0;
  double mean_b = 0.0;
  double differential = 0.0;  // mean_b - mean_a
};

CategoryGroupDifferential category_group_differential(const ScoreMatrix& matrix,
                                                      const std::vector<std::string>& set_a,
                                                      const std::vector<std::string>& set_b);

struct ImbalanceProfile {
  double mean = 0.0;
  double sample_sd = 0.0;
  double cv = 0.0;
  double spread = 0.0;
};

ImbalanceProfile imbalance_profile(const JurisdictionRecord& record);

}  // namespace sri
