#include "sri/aggregate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

namespace sri {

std::string_view to_string(AggregationMethod method) noexcept {
  return method == AggregationMethod::WeightedArithmetic ? "arithmetic" : "geometric";
}

AggregationMethod parse_aggregation_method(std::string_view text) {
  if (text == "arithmetic") return AggregationMethod::WeightedArithmetic;
  if (text == "geometric") return AggregationMethod::WeightedGeometric;
  throw Error(ErrorKind::ParseError,
              fmt::format("aggregation must be 'arithmetic' or 'geometric', got '{}'", text));
}

double aggregate_overall(const JurisdictionRecord& record, const WeightScheme& weights,
                         AggregationMethod method) {
  if (weights.weights.empty()) throw Error(ErrorKind::InvalidWeights, "empty weight scheme");

  if (method == AggregationMethod::WeightedArithmetic) {
    double total = 0.0;
    for (const auto& [id, w] : weights.weights) total += w * record.score(id);
    return total;
  }

  // Log-space product; w_i * log(c_i) with w_i = 0 contributes nothing.
  double log_total = 0.0;
  for (const auto& [id, w] : weights.weights) {
    const double c = record.score(id);
    if (c <= 0.0) {
      throw Error(ErrorKind::GeometricZeroScore,
                  fmt::format("geometric aggregation undefined: '{}' scores {} on '{}'",
                              record.name, c, id));
    }
    if (w > 0.0) log_total += w * std::log(c);
  }
  return std::exp(log_total);
}

std::vector<double> overall_scores(const ScoreMatrix& matrix, const WeightScheme& weights,
                                   AggregationMethod method, bool use_reported) {
  std::vector<double> out;
  out.reserve(matrix.size());
  for (const auto& j : matrix.jurisdictions) {
    if (use_reported) {
      if (!j.reported_overall) {
        throw Error(ErrorKind::MissingReportedOverall,
                    fmt::format("'{}' has no reported overall score", j.name));
      }
      out.push_back(*j.reported_overall);
    } else {
      out.push_back(aggregate_overall(j, weights, method));
    }
  }
  return out;
}

namespace {

// Aggregates equal up to floating-point noise count as ties.
constexpr double kTieTolerance = 1e-9;

std::vector<std::size_t> display_order(const ScoreMatrix& matrix, const std::vector<double>& overall) {
  std::vector<std::size_t> order(matrix.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (std::abs(overall[a] - overall[b]) > kTieTolerance) return overall[a] > overall[b];
    return matrix.jurisdictions[a].name < matrix.jurisdictions[b].name;
  });
  return order;
}

}  // namespace

std::vector<int> display_ranks(const ScoreMatrix& matrix, const std::vector<double>& overall) {
  if (overall.size() != matrix.size()) {
    throw Error(ErrorKind::PreconditionViolation, "overall score count does not match matrix");
  }
  const auto order = display_order(matrix, overall);
  std::vector<int> ranks(order.size());
  for (std::size_t pos = 0; pos < order.size(); ++pos) ranks[order[pos]] = static_cast<int>(pos) + 1;
  return ranks;
}

std::vector<RankingEntry> rank_matrix(const ScoreMatrix& matrix, const WeightScheme& weights,
                                      AggregationMethod method, const TierScheme& tiers,
                                      bool use_reported) {
  const auto overall = overall_scores(matrix, weights, method, use_reported);
  const auto order = display_order(matrix, overall);

  std::vector<RankingEntry> out;
  out.reserve(order.size());
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    const auto& j = matrix.jurisdictions[order[pos]];
    const double score = overall[order[pos]];
    out.push_back({static_cast<int>(pos) + 1, j.name, score, tier_of(score, tiers), j.category_scores});
  }
  return out;
}

const std::string& tier_of(double score, const TierScheme& tiers) { return tiers.name_of(score); }

}  // namespace sri
