#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "sri/core_model.hpp"
#include "sri/distributions.hpp"

namespace sri {

/// Paired t-test plus Wilcoxon signed-rank on d = a - b.
struct PairedTestResult {
  std::size_t n = 0;
  double mean_diff = 0.0;
  double t_statistic = 0.0;
  int df = 0;
  double p_value = 1.0;
  double cohens_d = 0.0;
  double wilcoxon_w = 0.0;  // min(W+, W-)
  double w_plus = 0.0;
  double w_minus = 0.0;
  double wilcoxon_z = 0.0;
  double wilcoxon_p = 1.0;
  double matched_rank_biserial = 0.0;  // (W+ - W-) / (W+ + W-)
};

enum class GroupStatisticKind { MannWhitneyU, KruskalWallisH };
enum class EffectSizeKind { RankBiserial, EtaSquared };

std::string_view to_string(GroupStatisticKind kind) noexcept;
std::string_view to_string(EffectSizeKind kind) noexcept;

struct GroupTestResult {
  double statistic = 0.0;
  GroupStatisticKind statistic_kind = GroupStatisticKind::MannWhitneyU;
  std::optional<int> df;
  double p_value = 1.0;
  double effect_size = 0.0;
  EffectSizeKind effect_kind = EffectSizeKind::RankBiserial;
  std::vector<std::size_t> group_sizes;
  std::vector<double> group_means;
};

/// Throws AllZeroDifferences when every pair is tied and DegenerateVariance
/// when the differences have zero spread.
PairedTestResult paired_gap_test(std::span<const double> a, std::span<const double> b);

/// U is group_a's statistic: pairs where a wins plus half the ties. The
/// rank-biserial 2U/(n1 n2) - 1 is negative when group_a tends lower.
/// Normal approximation with tie correction, no continuity correction.
GroupTestResult mann_whitney(std::span<const double> group_a, std::span<const double> group_b);

/// Tie-corrected H, chi-square p on k - 1 df, eta^2 = (H - k + 1) / (n - k).
GroupTestResult kruskal_wallis(const std::vector<std::vector<double>>& groups);

}  // namespace sri
