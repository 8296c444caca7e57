#include "sri/robustness.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "sri/stats.hpp"

namespace sri {

std::string_view to_string(RedistributionPolicy policy) noexcept {
  return policy == RedistributionPolicy::EqualSpread ? "equal_spread" : "proportional";
}

namespace {

std::string signed_pp(double delta, int sign) {
  return fmt::format("{}{:g}pp", sign > 0 ? '+' : '-', delta * 100.0);
}

// Applies per-target signed shifts and spreads the opposite of their sum
// over the non-target categories.
WeightScheme shifted(const WeightScheme& base, const std::vector<std::string>& targets,
                     const std::vector<int>& signs, double delta, RedistributionPolicy policy) {
  WeightScheme out = base;
  std::vector<std::string> label_parts;
  double net = 0.0;
  for (std::size_t t = 0; t < targets.size(); ++t) {
    if (signs[t] == 0) continue;
    for (auto& [id, w] : out.weights) {
      if (id == targets[t]) w += signs[t] * delta;
    }
    net += signs[t] * delta;
    label_parts.push_back(targets[t] + signed_pp(delta, signs[t]));
  }

  auto is_target = [&](const std::string& id) {
    return std::find(targets.begin(), targets.end(), id) != targets.end();
  };
  double others_total = 0.0;
  std::size_t others = 0;
  for (const auto& [id, w] : base.weights) {
    if (!is_target(id)) {
      others_total += w;
      ++others;
    }
  }
  for (auto& [id, w] : out.weights) {
    if (is_target(id)) continue;
    if (policy == RedistributionPolicy::EqualSpread) {
      w -= net / static_cast<double>(others);
    } else {
      if (others_total <= 0.0) {
        throw Error(ErrorKind::NegativeWeightProduced,
                    "proportional redistribution needs positive non-target weight");
      }
      w -= net * (base.weight_of(id) / others_total);
    }
  }

  for (auto& [id, w] : out.weights) {
    if (w < -1e-12) {
      throw Error(ErrorKind::NegativeWeightProduced,
                  fmt::format("perturbation leaves '{}' with weight {:.4f}", id, w));
    }
    w = std::max(0.0, w);
  }
  out.name = fmt::format("{}", fmt::join(label_parts, "/"));
  return out;
}

}  // namespace

std::vector<WeightScheme> perturbation_family(const WeightScheme& base, const std::vector<std::string>& targets,
                                              double delta, RedistributionPolicy policy) {
  if (!(delta > 0.0)) {
    throw Error(ErrorKind::PreconditionViolation, fmt::format("perturbation delta must be > 0, got {}", delta));
  }
  if (targets.empty()) throw Error(ErrorKind::PreconditionViolation, "no perturbation targets");
  std::set<std::string> unique(targets.begin(), targets.end());
  if (unique.size() != targets.size()) throw Error(ErrorKind::PreconditionViolation, "duplicate perturbation target");
  for (const auto& t : targets) {
    if (!base.contains(t)) throw Error(ErrorKind::UnknownCategory, fmt::format("unknown target category '{}'", t));
  }
  if (targets.size() >= base.weights.size()) {
    throw Error(ErrorKind::PreconditionViolation, "every category is a target; nothing absorbs the offset");
  }

  std::vector<WeightScheme> family;
  for (std::size_t t = 0; t < targets.size(); ++t) {
    for (int sign : {+1, -1}) {
      std::vector<int> signs(targets.size(), 0);
      signs[t] = sign;
      family.push_back(shifted(base, targets, signs, delta, policy));
    }
  }
  if (targets.size() >= 2) {
    const std::size_t combos = std::size_t{1} << targets.size();
    for (std::size_t mask = 0; mask < combos; ++mask) {
      std::vector<int> signs(targets.size());
      for (std::size_t t = 0; t < targets.size(); ++t) signs[t] = (mask >> t) & 1U ? -1 : +1;
      family.push_back(shifted(base, targets, signs, delta, policy));
    }
  }
  return family;
}

WeightScheme equal_weights(const std::vector<std::string>& category_ids, std::string name) {
  WeightScheme scheme{std::move(name), {}};
  for (const auto& id : category_ids) scheme.weights.emplace_back(id, 1.0 / static_cast<double>(category_ids.size()));
  return scheme;
}

namespace {

SchemeComparison compare_rankings(const ScoreMatrix& matrix, const std::vector<double>& base_overall,
                                  const std::vector<double>& alt_overall, const TierScheme& tiers,
                                  std::string name) {
  const auto base_ranks = display_ranks(matrix, base_overall);
  const auto alt_ranks = display_ranks(matrix, alt_overall);
  std::vector<double> x(base_ranks.begin(), base_ranks.end());
  std::vector<double> y(alt_ranks.begin(), alt_ranks.end());

  SchemeComparison cmp;
  cmp.scheme_name = std::move(name);
  const auto rho = spearman(x, y);
  const auto tau = kendall_tau_b(x, y);
  cmp.spearman_vs_baseline = rho.coefficient;
  cmp.spearman_p = rho.p_value;
  cmp.kendall_vs_baseline = tau.coefficient;
  cmp.kendall_p = tau.p_value;

  double total_change = 0.0;
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    const auto& name_i = matrix.jurisdictions[i].name;
    const int change = alt_ranks[i] - base_ranks[i];
    total_change += std::abs(change);
    cmp.max_abs_rank_change = std::max(cmp.max_abs_rank_change, static_cast<double>(std::abs(change)));
    if (change != 0) cmp.movers.push_back({name_i, base_ranks[i], alt_ranks[i]});
    if (tiers.index_of(base_overall[i]) != tiers.index_of(alt_overall[i])) {
      ++cmp.tier_changes;
      cmp.tier_changed.push_back(name_i);
    }
  }
  cmp.mean_abs_rank_change = total_change / static_cast<double>(matrix.size());
  std::stable_sort(cmp.movers.begin(), cmp.movers.end(), [](const RankMove& a, const RankMove& b) {
    if (std::abs(a.change()) != std::abs(b.change())) return std::abs(a.change()) > std::abs(b.change());
    return a.jurisdiction < b.jurisdiction;
  });
  return cmp;
}

}  // namespace

std::vector<SchemeComparison> compare_schemes(const ScoreMatrix& matrix, const WeightScheme& baseline,
                                              const std::vector<WeightScheme>& alternatives,
                                              AggregationMethod method, const TierScheme& tiers) {
  const auto base_overall = overall_scores(matrix, baseline, method, false);
  std::vector<SchemeComparison> out;
  out.reserve(alternatives.size());
  for (const auto& alt : alternatives) {
    const auto alt_overall = overall_scores(matrix, alt, method, false);
    out.push_back(compare_rankings(matrix, base_overall, alt_overall, tiers, alt.name));
  }
  return out;
}

SchemeComparison compare_aggregation(const ScoreMatrix& matrix, const WeightScheme& weights, const TierScheme& tiers) {
  const auto arithmetic = overall_scores(matrix, weights, AggregationMethod::WeightedArithmetic, false);
  const auto geometric = overall_scores(matrix, weights, AggregationMethod::WeightedGeometric, false);
  return compare_rankings(matrix, arithmetic, geometric, tiers, "geometric");
}

StabilityReport stability(const std::vector<MultiRunRecord>& runs, std::size_t runs_threshold,
                          const TierScheme& tiers) {
  if (runs_threshold < 2) {
    throw Error(ErrorKind::PreconditionViolation, fmt::format("runs threshold must be >= 2, got {}", runs_threshold));
  }
  StabilityReport report;
  report.runs_threshold = runs_threshold;
  double sd_total = 0.0;

  for (const auto& record : runs) {
    if (record.run_scores.empty()) {
      throw Error(ErrorKind::PreconditionViolation, fmt::format("'{}' has no runs", record.jurisdiction));
    }
    std::vector<double> scores;
    std::set<std::size_t> tier_indices;
    for (const auto& [run_id, score] : record.run_scores) {
      scores.push_back(score);
      tier_indices.insert(tiers.index_of(score));
    }

    JurisdictionStability js;
    js.jurisdiction = record.jurisdiction;
    js.run_count = scores.size();
    js.mean = mean(scores);
    const auto [lo, hi] = std::minmax_element(scores.begin(), scores.end());
    js.min = *lo;
    js.max = *hi;
    js.range = js.max - js.min;
    if (scores.size() >= 2) js.sd = sample_sd(scores);
    for (std::size_t idx : tier_indices) js.tiers.push_back(tiers.bands[idx].name);
    js.qualifies = js.run_count >= runs_threshold;
    if (js.qualifies) {
      ++report.qualifying;
      sd_total += *js.sd;
    }
    report.jurisdictions.push_back(std::move(js));
  }
  if (report.qualifying > 0) report.mean_within_sd = sd_total / static_cast<double>(report.qualifying);
  return report;
}

}  // namespace sri
