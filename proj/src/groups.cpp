#include "sri/groups.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <fmt/format.h>

#include "sri/stats.hpp"

namespace sri {

GapAnalysis gap_analysis(const ScoreMatrix& matrix, const std::string& category_a, const std::string& category_b) {
  const auto a = matrix.column(category_a);
  const auto b = matrix.column(category_b);
  if (a.empty()) throw Error(ErrorKind::EmptyData, "gap analysis on an empty matrix");

  GapAnalysis g;
  g.category_a = category_a;
  g.category_b = category_b;
  std::vector<double> values;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double gap = a[i] - b[i];
    g.gaps.push_back({matrix.jurisdictions[i].name, gap});
    values.push_back(gap);
    if (gap > 0) ++g.positive_count;
  }
  g.mean_gap = mean(values);
  g.median_gap = median(values);
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  g.min_gap = *lo;
  g.max_gap = *hi;
  for (const auto& entry : g.gaps) {
    if (entry.value == g.min_gap) g.min_jurisdictions.push_back(entry.jurisdiction);
    if (entry.value == g.max_gap) g.max_jurisdictions.push_back(entry.jurisdiction);
  }

  try {
    g.test = paired_gap_test(a, b);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::AllZeroDifferences && e.kind() != ErrorKind::DegenerateVariance) throw;
    g.degenerate = e.kind();
  }
  return g;
}

GroupBreakdown group_breakdown(const ScoreMatrix& matrix, const std::string& dimension,
                               const std::vector<double>& overall) {
  if (overall.size() != matrix.size()) {
    throw Error(ErrorKind::PreconditionViolation, "overall score count does not match matrix");
  }
  GroupBreakdown out;
  out.dimension = dimension;

  std::map<std::string, std::vector<std::size_t>> members;
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    const auto label = matrix.jurisdictions[i].tag(dimension);
    if (label) {
      members[*label].push_back(i);
    } else {
      out.untagged.push_back(matrix.jurisdictions[i].name);
    }
  }
  if (members.size() < 2) {
    throw Error(ErrorKind::SingleGroup,
                fmt::format("dimension '{}' has {} distinct label(s); need at least 2", dimension, members.size()));
  }

  for (const auto& [label, idx] : members) {
    GroupSummary s;
    s.label = label;
    s.size = idx.size();
    std::vector<double> scores;
    for (std::size_t i : idx) {
      scores.push_back(overall[i]);
      s.members.push_back(matrix.jurisdictions[i].name);
    }
    s.mean_overall = mean(scores);
    for (const auto& c : matrix.categories) {
      double total = 0.0;
      for (std::size_t i : idx) total += matrix.jurisdictions[i].score(c.id);
      s.category_means[c.id] = total / static_cast<double>(idx.size());
    }
    out.groups.push_back(std::move(s));
  }

  auto scores_of = [&](const std::string& label) {
    std::vector<double> v;
    for (std::size_t i : members.at(label)) v.push_back(overall[i]);
    return v;
  };

  if (out.groups.size() == 2) {
    std::stable_sort(out.groups.begin(), out.groups.end(),
                     [](const GroupSummary& a, const GroupSummary& b) { return a.size > b.size; });
    out.test = mann_whitney(scores_of(out.groups[0].label), scores_of(out.groups[1].label));
    for (const auto& c : matrix.categories) {
      out.category_differentials.emplace_back(
          c.id, out.groups[0].category_means.at(c.id) - out.groups[1].category_means.at(c.id));
    }
  } else {
    std::vector<std::vector<double>> samples;
    for (const auto& g : out.groups) samples.push_back(scores_of(g.label));
    out.test = kruskal_wallis(samples);
  }
  return out;
}

CategoryGroupDifferential category_group_differential(const ScoreMatrix& matrix,
                                                      const std::vector<std::string>& set_a,
                                                      const std::vector<std::string>& set_b) {
  if (set_a.empty() || set_b.empty()) {
    throw Error(ErrorKind::PreconditionViolation, "category sets must be non-empty");
  }
  const std::set<std::string> a(set_a.begin(), set_a.end());
  for (const auto& id : set_b) {
    if (a.count(id)) throw Error(ErrorKind::OverlappingSets, fmt::format("category '{}' appears in both sets", id));
  }
  auto mean_of_means = [&](const std::vector<std::string>& ids) {
    double total = 0.0;
    for (const auto& id : ids) total += mean(matrix.column(id));
    return total / static_cast<double>(ids.size());
  };
  CategoryGroupDifferential out;
  out.mean_a = mean_of_means(set_a);
  out.mean_b = mean_of_means(set_b);
  out.differential = out.mean_b - out.mean_a;
  return out;
}

ImbalanceProfile imbalance_profile(const JurisdictionRecord& record) {
  std::vector<double> scores;
  for (const auto& [id, v] : record.category_scores) scores.push_back(v);
  if (scores.size() < 2) {
    throw Error(ErrorKind::PreconditionViolation, fmt::format("'{}' has fewer than 2 categories", record.name));
  }
  ImbalanceProfile p;
  p.mean = mean(scores);
  p.sample_sd = sample_sd(scores);
  p.cv = p.mean != 0.0 ? p.sample_sd / p.mean : 0.0;
  const auto [lo, hi] = std::minmax_element(scores.begin(), scores.end());
  p.spread = *hi - *lo;
  return p;
}

}  // namespace sri
