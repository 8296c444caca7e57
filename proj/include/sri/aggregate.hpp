#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "sri/core_model.hpp"

namespace sri {

enum class AggregationMethod { WeightedArithmetic, WeightedGeometric };

std::string_view to_string(AggregationMethod method) noexcept;
/// Accepts "arithmetic" / "geometric"; throws ParseError otherwise.
AggregationMethod parse_aggregation_method(std::string_view text);

struct RankingEntry {
  int rank = 0;
  std::string jurisdiction;
  double overall = 0.0;
  std::string tier;
  std::map<std::string, double> category_scores;
};

/// Weighted arithmetic mean or weighted geometric mean of the record's
/// category scores. Geometric aggregation over a zero score throws
/// GeometricZeroScore; no epsilon flooring is applied.
double aggregate_overall(const JurisdictionRecord& record, const WeightScheme& weights,
                         AggregationMethod method);

/// Overall score per jurisdiction, in matrix order.
std::vector<double> overall_scores(const ScoreMatrix& matrix, const WeightScheme& weights,
                                   AggregationMethod method, bool use_reported);

/// Display ranking: descending overall score, ties broken by name ascending.
std::vector<RankingEntry> rank_matrix(const ScoreMatrix& matrix, const WeightScheme& weights,
                                      AggregationMethod method, const TierScheme& tiers,
                                      bool use_reported);

/// Rank of each jurisdiction (matrix order) under the display ranking rule.
std::vector<int> display_ranks(const ScoreMatrix& matrix, const std::vector<double>& overall);

const std::string& tier_of(double score, const TierScheme& tiers);

}  // namespace sri
