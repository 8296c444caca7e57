#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sri/aggregate.hpp"
#include "sri/core_model.hpp"

namespace sri {

/// How the offset from shifting target weights is absorbed by the
/// remaining (non-target) categories.
enum class RedistributionPolicy {
  EqualSpread,   // each non-target category absorbs the same amount
  Proportional,  // absorbed in proportion to the non-target weights
};

std::string_view to_string(RedistributionPolicy policy) noexcept;

struct RankMove {
  std::string jurisdiction;
  int old_rank = 0;
  int new_rank = 0;

  int change() const noexcept { return new_rank - old_rank; }
};

struct SchemeComparison {
  std::string scheme_name;
  double spearman_vs_baseline = 1.0;
  double kendall_vs_baseline = 1.0;
  double spearman_p = 0.0;
  double kendall_p = 0.0;
  std::size_t tier_changes = 0;
  double mean_abs_rank_change = 0.0;
  double max_abs_rank_change = 0.0;
  /// Every jurisdiction whose rank moved, by |change| descending then name.
  std::vector<RankMove> movers;
  std::vector<std::string> tier_changed;
};

/// Single-target shifts (+delta, -delta) per target, followed, when there are
/// two or more targets, by every joint sign combination across all targets.
/// Two targets give 4 + 4 = 8 schemes.
std::vector<WeightScheme> perturbation_family(const WeightScheme& base, const std::vector<std::string>& targets,
                                              double delta,
                                              RedistributionPolicy policy = RedistributionPolicy::EqualSpread);

WeightScheme equal_weights(const std::vector<std::string>& category_ids, std::string name = "equal");

/// Re-aggregates from category scores for every scheme; reported overall
/// scores are never used here.
std::vector<SchemeComparison> compare_schemes(const ScoreMatrix& matrix, const WeightScheme& baseline,
                                              const std::vector<WeightScheme>& alternatives,
                                              AggregationMethod method, const TierScheme& tiers);

/// Arithmetic ranking as baseline, geometric ranking as the alternative.
SchemeComparison compare_aggregation(const ScoreMatrix& matrix, const WeightScheme& weights, const TierScheme& tiers);

struct JurisdictionStability {
  std::string jurisdiction;
  std::size_t run_count = 0;
  double mean = 0.0;
  std::optional<double> sd;  // undefined for a single run
  double min = 0.0;
  double max = 0.0;
  double range = 0.0;
  std::vector<std::string> tiers;  // in tier-scheme order
  bool qualifies = false;          // run_count >= threshold
};

struct StabilityReport {
  std::vector<JurisdictionStability> jurisdictions;
  std::size_t runs_threshold = 3;
  std::size_t qualifying = 0;
  std::optional<double> mean_within_sd;
};

StabilityReport stability(const std::vector<MultiRunRecord>& runs, std::size_t runs_threshold,
                          const TierScheme& tiers);

}  // namespace sri
