#include "sri/inference.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include <fmt/format.h>

#include "sri/stats.hpp"

namespace sri {

std::string_view to_string(GroupStatisticKind kind) noexcept {
  return kind == GroupStatisticKind::MannWhitneyU ? "mann_whitney_u" : "kruskal_wallis_h";
}

std::string_view to_string(EffectSizeKind kind) noexcept {
  return kind == EffectSizeKind::RankBiserial ? "rank_biserial" : "eta_squared";
}

namespace {

// sum over tie groups of (t^3 - t)
double tie_term(std::span<const double> values) {
  std::map<double, double> counts;
  for (double v : values) counts[v] += 1.0;
  double total = 0.0;
  for (const auto& [value, t] : counts) total += t * t * t - t;
  return total;
}

double two_sided_normal_p(double z) {
  return std::min(1.0, 2.0 * dist_sf(Distribution::standard_normal(), std::abs(z)));
}

}  // namespace

PairedTestResult paired_gap_test(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorKind::PreconditionViolation,
                fmt::format("paired samples differ in length ({} vs {})", a.size(), b.size()));
  }
  if (a.size() < 3) {
    throw Error(ErrorKind::TooFewObservations, fmt::format("paired test needs n >= 3, got {}", a.size()));
  }

  std::vector<double> d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  if (std::all_of(d.begin(), d.end(), [](double v) { return v == 0.0; })) {
    throw Error(ErrorKind::AllZeroDifferences, "all paired differences are zero");
  }

  PairedTestResult r;
  r.n = d.size();
  r.df = static_cast<int>(d.size()) - 1;
  r.mean_diff = mean(d);
  const double sd = sample_sd(d);
  if (sd == 0.0) throw Error(ErrorKind::DegenerateVariance, "paired differences have zero variance");
  r.t_statistic = r.mean_diff / (sd / std::sqrt(static_cast<double>(r.n)));
  r.p_value = std::min(1.0, 2.0 * dist_sf(Distribution::student_t(r.df), std::abs(r.t_statistic)));
  r.cohens_d = r.mean_diff / sd;

  std::vector<double> nonzero;
  for (double v : d) {
    if (v != 0.0) nonzero.push_back(v);
  }
  std::vector<double> magnitudes(nonzero.size());
  std::transform(nonzero.begin(), nonzero.end(), magnitudes.begin(), [](double v) { return std::abs(v); });
  const auto ranks = mid_ranks(magnitudes);
  for (std::size_t i = 0; i < nonzero.size(); ++i) {
    (nonzero[i] > 0 ? r.w_plus : r.w_minus) += ranks[i];
  }
  r.wilcoxon_w = std::min(r.w_plus, r.w_minus);
  r.matched_rank_biserial = (r.w_plus - r.w_minus) / (r.w_plus + r.w_minus);

  const double m = static_cast<double>(nonzero.size());
  const double expected = m * (m + 1.0) / 4.0;
  const double variance = m * (m + 1.0) * (2.0 * m + 1.0) / 24.0 - tie_term(magnitudes) / 48.0;
  r.wilcoxon_z = variance > 0.0 ? (r.wilcoxon_w - expected) / std::sqrt(variance) : 0.0;
  r.wilcoxon_p = variance > 0.0 ? two_sided_normal_p(r.wilcoxon_z) : 1.0;
  return r;
}

GroupTestResult mann_whitney(std::span<const double> group_a, std::span<const double> group_b) {
  if (group_a.empty() || group_b.empty()) {
    throw Error(ErrorKind::EmptyGroup, "Mann-Whitney needs two non-empty groups");
  }
  const double n1 = static_cast<double>(group_a.size());
  const double n2 = static_cast<double>(group_b.size());

  std::vector<double> pooled(group_a.begin(), group_a.end());
  pooled.insert(pooled.end(), group_b.begin(), group_b.end());
  const auto ranks = mid_ranks(pooled);
  const double rank_sum_a = std::accumulate(ranks.begin(), ranks.begin() + group_a.size(), 0.0);
  const double u = rank_sum_a - n1 * (n1 + 1.0) / 2.0;

  const double n = n1 + n2;
  const double variance = n1 * n2 / 12.0 * ((n + 1.0) - tie_term(pooled) / (n * (n - 1.0)));

  GroupTestResult r;
  r.statistic = u;
  r.statistic_kind = GroupStatisticKind::MannWhitneyU;
  r.p_value = variance > 0.0 ? two_sided_normal_p((u - n1 * n2 / 2.0) / std::sqrt(variance)) : 1.0;
  r.effect_size = 2.0 * u / (n1 * n2) - 1.0;
  r.effect_kind = EffectSizeKind::RankBiserial;
  r.group_sizes = {group_a.size(), group_b.size()};
  r.group_means = {mean(group_a), mean(group_b)};
  return r;
}

GroupTestResult kruskal_wallis(const std::vector<std::vector<double>>& groups) {
  if (groups.size() < 2) throw Error(ErrorKind::TooFewObservations, "Kruskal-Wallis needs k >= 2 groups");
  std::vector<double> pooled;
  for (const auto& g : groups) {
    if (g.empty()) throw Error(ErrorKind::EmptyGroup, "Kruskal-Wallis group is empty");
    pooled.insert(pooled.end(), g.begin(), g.end());
  }
  const double k = static_cast<double>(groups.size());
  const double n = static_cast<double>(pooled.size());
  if (pooled.size() < groups.size() + 2) {
    throw Error(ErrorKind::TooFewObservations,
                fmt::format("Kruskal-Wallis needs n >= k + 2, got n = {}, k = {}", pooled.size(),
                            groups.size()));
  }

  const auto ranks = mid_ranks(pooled);
  double between = 0.0;
  std::size_t offset = 0;
  GroupTestResult r;
  for (const auto& g : groups) {
    const double rank_sum = std::accumulate(ranks.begin() + offset, ranks.begin() + offset + g.size(), 0.0);
    between += rank_sum * rank_sum / static_cast<double>(g.size());
    offset += g.size();
    r.group_sizes.push_back(g.size());
    r.group_means.push_back(mean(g));
  }
  const double correction = 1.0 - tie_term(pooled) / (n * n * n - n);
  double h = 0.0;
  if (correction > 0.0) {
    h = (12.0 / (n * (n + 1.0)) * between - 3.0 * (n + 1.0)) / correction;
    h = std::max(0.0, h);
  }

  r.statistic = h;
  r.statistic_kind = GroupStatisticKind::KruskalWallisH;
  r.df = static_cast<int>(groups.size()) - 1;
  r.p_value = dist_sf(Distribution::chi_square(*r.df), h);
  r.effect_size = (h - k + 1.0) / (n - k);
  r.effect_kind = EffectSizeKind::EtaSquared;
  return r;
}

}  // namespace sri
