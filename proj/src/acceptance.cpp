#include "sri/acceptance.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <fmt/format.h>
#include <fmt/ranges.h>
#include <unistd.h>

#include "sri/aggregate.hpp"
#include "sri/charts.hpp"
#include "sri/distributions.hpp"
#include "sri/groups.hpp"
#include "sri/inference.hpp"
#include "sri/multivariate.hpp"
#include "sri/robustness.hpp"
#include "sri/stats.hpp"

namespace sri {

namespace fs = std::filesystem;

namespace {

const std::string kPE = "policy_environment";
const std::string kIE = "institutional_engagement";
const std::string kRE = "research_environment";
const std::string kPR = "professional_readiness";
const std::string kPD = "public_discourse";
const std::string kAC = "adaptive_capacity";

constexpr double kExactSlack = 1e-9;

struct CategoryReference {
  const char* id;
  double mean, median, sd, min, max, range, iqr, cv;
};

constexpr std::array<CategoryReference, 6> kCategoryReference = {{
    {"research_environment", 50.16, 55.0, 15.14, 20, 75, 55, 25.0, 0.30},
    {"adaptive_capacity", 49.94, 50.0, 13.70, 18, 75, 57, 15.5, 0.27},
    {"policy_environment", 38.16, 35.0, 11.88, 15, 62, 47, 16.0, 0.31},
    {"public_discourse", 24.06, 25.0, 9.61, 5, 40, 35, 15.0, 0.40},
    {"institutional_engagement", 20.39, 20.0, 10.61, 5, 45, 40, 11.0, 0.52},
    {"professional_readiness", 16.52, 15.0, 5.44, 5, 30, 25, 5.0, 0.33},
}};

const std::array<const char*, 31> kReportedOrder = {
    "United Kingdom", "European Union", "United States", "Japan",       "Germany",      "Australia",
    "Canada",         "France",         "Austria",       "Spain",       "Switzerland",  "Norway",
    "Sweden",         "South Korea",    "Mexico",        "Denmark",     "Poland",       "Belgium",
    "Netherlands",    "Brazil",         "China",         "UAE",         "Indonesia",    "Italy",
    "Thailand",       "Saudi Arabia",   "Argentina",     "India",       "Nigeria",      "Russia",
    "Turkey"};

std::vector<Expectation> build_expectations() {
  std::vector<Expectation> e = {
      {1, "ranking.partially_prepared_count", 8, 0},
      {1, "ranking.minimally_prepared_count", 21, 0},
      {1, "ranking.unprepared_count", 2, 0},
      {2, "rounding.max_abs_deviation", 2.0, 0, Bound::AtMost},
      {3, "overall.mean", 33.03, 0.01},
      {3, "overall.sd", 9.12, 0.01},
      {3, "overall.median", 35.25, 0},
      {3, "overall.gini", 0.155, 0.005},
      {3, "overall.shapiro_w", 0.970, 0.005},
      {3, "overall.shapiro_p", 0.512, 0.05},
      {3, "overall.skewness", -0.265, 0.03},
      {3, "overall.excess_kurtosis", -0.816, 0.03},
  };
  for (const auto& row : kCategoryReference) {
    const std::string p = fmt::format("table4.{}.", row.id);
    e.push_back({4, p + "mean", row.mean, 0.01});
    e.push_back({4, p + "median", row.median, 0.01});
    e.push_back({4, p + "sd", row.sd, 0.01});
    e.push_back({4, p + "min", row.min, 0.01});
    e.push_back({4, p + "max", row.max, 0.01});
    e.push_back({4, p + "range", row.range, 0.01});
    e.push_back({4, p + "iqr", row.iqr, 1.0});
    e.push_back({4, p + "cv", row.cv, 0.01});
  }
  const std::vector<Expectation> rest = {
      {5, "gap.positive_count", 31, 0},
      {5, "gap.mean", 33.65, 0.05},
      {5, "gap.median", 35.0, 0},
      {5, "gap.t", 16.03, 0.05},
      {5, "gap.df", 30, 0},
      {5, "gap.cohens_d", 2.88, 0.02},
      {5, "gap.wilcoxon_w", 0.0, 0},
      {5, "gap.matched_rank_biserial", 1.00, 0.005},
      {5, "gap.min", 15, 0},
      {5, "gap.max", 52, 0},
      {6, "corr.re_pd", 0.876, 0.005},
      {6, "corr.ie_pd", 0.767, 0.005},
      {6, "corr.ie_ac", 0.423, 0.005},
      {6, "corr.pairs_p_below_05", 15, 0},
      {6, "corr.pairs_p_below_001", 11, 0, Bound::AtLeast},
      {7, "pca.pc1_explained", 0.707, 0.01},
      {7, "pca.pc2_explained", 0.104, 0.01},
      {8, "weights.perturbed_min_rho", 0.99, 0, Bound::Above},
      {8, "weights.perturbed_max_tier_changes", 2, 0, Bound::AtMost},
      {8, "weights.equal_rho", 0.995, 0.005},
      {8, "weights.equal_tier_changes", 1, 1},
      {8, "weights.extreme_rho", 0.957, 0.01},
      {8, "weights.extreme_tier_changes", 10, 2},
      {9, "aggregation.rho", 0.982, 0.01},
      {9, "aggregation.tau", 0.906, 0.015},
      {9, "aggregation.mean_abs_rank_change", 1.13, 0.15},
      {9, "aggregation.max_abs_rank_change", 5, 1},
      {9, "aggregation.france_improvement", 1, 0, Bound::AtLeast},
      {10, "governance.democracy_mean", 36.13, 0.01},
      {10, "governance.hybrid_mean", 22.39, 0.01},
      {10, "governance.u", 156.0, 0},
      {10, "governance.abs_rank_biserial", 0.857, 0.005},
      {10, "governance.diff.research_environment", 22.35, 0.05},
      {10, "governance.diff.adaptive_capacity", 18.37, 0.05},
      {10, "governance.diff.public_discourse", 13.37, 0.05},
      {10, "region.h", 12.95, 0.1},
      {10, "region.n", 30, 0},
      {10, "region.eta_squared", 0.358, 0.012},
      {10, "income.h", 14.31, 0.1},
      {10, "income.eta_squared", 0.44, 0.01},
      {10, "region.mean.North America", 40.70, 0.01},
      {10, "region.mean.Europe", 37.46, 0.01},
      {10, "region.mean.Asia-Pacific", 31.51, 0.01},
      {10, "region.mean.Middle East & Africa", 21.81, 0.01},
      {10, "region.mean.Latin America", 26.65, 0.01},
      {11, "sets.novel_mean", 20.32, 0.02},
      {11, "sets.overlap_mean", 46.09, 0.02},
      {11, "sets.differential", 25.76, 0.02},
      {12, "profile.netherlands_cv", 0.80, 0.01},
      {12, "profile.netherlands_spread", 62, 0},
      {12, "profile.italy_ie", 5, 0},
      {12, "profile.italy_pd", 5, 0},
      {13, "stability.synthetic_range", 19.9, 1e-9},
      {13, "stability.synthetic_sd", 9.952051714763812, 1e-9},
      {13, "stability.exact_sd", 4.0, 1e-12},
      {13, "stability.qualifying", 2, 0},
      {13, "stability.mean_within_sd", 6.976025857381906, 1e-9},
  };
  e.insert(e.end(), rest.begin(), rest.end());
  return e;
}

std::string show(double v) {
  if (std::isnan(v)) return "nan";
  if (std::abs(v - std::round(v)) < 1e-12 && std::abs(v) < 1e12) return fmt::format("{}", static_cast<long long>(std::llround(v)));
  return fmt::format("{:.4f}", v);
}

class Recorder {
 public:
  explicit Recorder(CriterionResult& result) : r_(result) {}

  double value(std::string_view key, double actual) {
    const auto& e = expectation(key);
    r_.checks.push_back({std::string(key), e.describe(), show(actual), e.accepts(actual)});
    return actual;
  }

  bool flag(std::string label, bool ok, std::string detail = {}) {
    r_.checks.push_back({std::move(label), "true", detail.empty() ? (ok ? "true" : "false") : std::move(detail), ok});
    return ok;
  }

 private:
  CriterionResult& r_;
};

std::vector<double> reported(const ScoreMatrix& m) {
  return overall_scores(m, m.weight_scheme(), AggregationMethod::WeightedArithmetic, true);
}

// ---- criteria ----

void criterion_1(const ScoreMatrix& m, const AnalysisConfig& cfg, Recorder& rec) {
  const auto ranking = rank_matrix(m, cfg.weights, AggregationMethod::WeightedArithmetic, cfg.tiers, true);
  bool order_ok = ranking.size() == kReportedOrder.size();
  std::string first_mismatch;
  for (std::size_t i = 0; order_ok && i < ranking.size(); ++i) {
    if (ranking[i].jurisdiction != kReportedOrder[i] || ranking[i].rank != static_cast<int>(i + 1)) {
      order_ok = false;
      first_mismatch = fmt::format("rank {} is {}", i + 1, ranking[i].jurisdiction);
    }
  }
  rec.flag("ranking.order_matches_reference", order_ok, order_ok ? "" : first_mismatch);

  bool tiers_ok = true;
  std::map<std::string, int> counts;
  for (const auto& e : ranking) {
    ++counts[e.tier];
    const std::string expected = e.rank <= 8 ? "Partially Prepared" : e.rank <= 29 ? "Minimally Prepared" : "Unprepared";
    if (e.tier != expected) tiers_ok = false;
  }
  rec.flag("ranking.tiers_match_reference", tiers_ok);
  rec.value("ranking.partially_prepared_count", counts["Partially Prepared"]);
  rec.value("ranking.minimally_prepared_count", counts["Minimally Prepared"]);
  rec.value("ranking.unprepared_count", counts["Unprepared"]);

  const auto& top = ranking.front();
  const auto& bottom = ranking.back();
  rec.flag("ranking.first_is_uk_49", top.jurisdiction == "United Kingdom" && std::abs(top.overall - 49.00) < kExactSlack,
           fmt::format("{} {:.2f}", top.jurisdiction, top.overall));
  rec.flag("ranking.last_is_turkey_14.25",
           bottom.jurisdiction == "Turkey" && std::abs(bottom.overall - 14.25) < kExactSlack,
           fmt::format("{} {:.2f}", bottom.jurisdiction, bottom.overall));

  const auto md = render_table(ranking, m.categories, TableFormat::Markdown);
  rec.flag("ranking.markdown_first_row", md.find("| 1 | United Kingdom | 49.00 | Partially Prepared |") != std::string::npos);
  rec.flag("ranking.render_deterministic", md == render_table(ranking, m.categories, TableFormat::Markdown));
}

void criterion_2(const ScoreMatrix& m, const AnalysisConfig& cfg, Recorder& rec) {
  double worst = 0.0;
  std::string worst_name;
  std::size_t over = 0;
  for (const auto& j : m.jurisdictions) {
    if (!j.reported_overall) throw Error(ErrorKind::MissingReportedOverall, j.name);
    const double computed = aggregate_overall(j, cfg.weights, AggregationMethod::WeightedArithmetic);
    const double dev = std::abs(computed - *j.reported_overall);
    if (dev > expectation("rounding.max_abs_deviation").target) ++over;
    if (dev > worst) {
      worst = dev;
      worst_name = j.name;
    }
  }
  rec.value("rounding.max_abs_deviation", worst);
  rec.flag("rounding.all_within_bound", over == 0,
           fmt::format("{} over bound; largest {} ({})", over, show(worst), worst_name));
}

void criterion_3(const ScoreMatrix& m, Recorder& rec) {
  const auto overall = reported(m);
  const auto s = describe(overall, {MomentEstimator::Population, GiniVariant::Population});
  rec.value("overall.mean", s.mean);
  rec.value("overall.sd", s.sd);
  rec.value("overall.median", s.median);
  rec.value("overall.gini", s.gini.value_or(NAN));
  const auto sw = shapiro_wilk(overall);
  rec.value("overall.shapiro_w", sw.w_statistic);
  rec.value("overall.shapiro_p", sw.p_value);

  // Either standard estimator may satisfy the moment targets.
  const auto& ks = expectation("overall.skewness");
  const auto& kk = expectation("overall.excess_kurtosis");
  const double g1 = skewness(overall, MomentEstimator::Population);
  const double big_g1 = skewness(overall, MomentEstimator::SampleAdjusted);
  const double g2 = excess_kurtosis(overall, MomentEstimator::Population);
  const double big_g2 = excess_kurtosis(overall, MomentEstimator::SampleAdjusted);
  const bool pop_ok = ks.accepts(g1) && kk.accepts(g2);
  const bool adj_ok = ks.accepts(big_g1) && kk.accepts(big_g2);
  rec.value("overall.skewness", pop_ok ? g1 : big_g1);
  rec.value("overall.excess_kurtosis", pop_ok ? g2 : big_g2);
  rec.flag("overall.moments_one_estimator", pop_ok || adj_ok,
           fmt::format("population {}/{}, adjusted {}/{}", show(g1), show(g2), show(big_g1), show(big_g2)));
}

void criterion_4(const ScoreMatrix& m, Recorder& rec) {
  const auto summaries = describe_categories(m);
  for (const auto& row : kCategoryReference) {
    const auto it = std::find_if(summaries.begin(), summaries.end(), [&](const CategorySummary& c) { return c.id == row.id; });
    if (it == summaries.end()) throw Error(ErrorKind::UnknownCategory, row.id);
    const auto& s = it->summary;
    const std::string p = fmt::format("table4.{}.", row.id);
    rec.value(p + "mean", s.mean);
    rec.value(p + "median", s.median);
    rec.value(p + "sd", s.sd);
    rec.value(p + "min", s.min);
    rec.value(p + "max", s.max);
    rec.value(p + "range", s.range);
    rec.value(p + "iqr", s.iqr);
    rec.value(p + "cv", s.cv.value_or(NAN));
  }
  std::vector<std::string> order;
  for (const auto& c : summaries) order.push_back(c.id);
  std::vector<std::string> expected;
  for (const auto& row : kCategoryReference) expected.emplace_back(row.id);
  rec.flag("table4.row_order", order == expected);
  const auto csv = render_table(summaries, TableFormat::Csv);
  rec.flag("table4.csv_header", csv.rfind("Category,Mean,Median,SD,Min,Max,Range,IQR,CV\n", 0) == 0);
}

void criterion_5(const ScoreMatrix& m, Recorder& rec) {
  const auto g = gap_analysis(m, kRE, kPR);
  if (!g.test) throw Error(*g.degenerate, "gap test degenerate");
  rec.value("gap.positive_count", static_cast<double>(g.positive_count));
  rec.value("gap.mean", g.mean_gap);
  rec.value("gap.median", g.median_gap);
  rec.value("gap.t", g.test->t_statistic);
  rec.value("gap.df", g.test->df);
  rec.value("gap.cohens_d", g.test->cohens_d);
  rec.value("gap.wilcoxon_w", g.test->wilcoxon_w);
  rec.value("gap.matched_rank_biserial", g.test->matched_rank_biserial);
  rec.value("gap.min", g.min_gap);
  rec.value("gap.max", g.max_gap);
  rec.flag("gap.min_is_russia", g.min_jurisdictions == std::vector<std::string>{"Russia"},
           fmt::format("{}", fmt::join(g.min_jurisdictions, ", ")));
  rec.flag("gap.max_is_japan_canada", g.max_jurisdictions == std::vector<std::string>{"Japan", "Canada"},
           fmt::format("{}", fmt::join(g.max_jurisdictions, ", ")));
  const auto reverse = gap_analysis(m, kPR, kRE);
  bool negated = reverse.gaps.size() == g.gaps.size();
  for (std::size_t i = 0; negated && i < g.gaps.size(); ++i) negated = reverse.gaps[i].value == -g.gaps[i].value;
  rec.flag("gap.reverse_is_negation", negated);
}

void criterion_6(const ScoreMatrix& m, Recorder& rec) {
  const auto cm = correlation_matrix(m, CorrelationKind::Pearson);
  auto idx = [&](const std::string& id) {
    return static_cast<std::size_t>(std::find(cm.categories.begin(), cm.categories.end(), id) - cm.categories.begin());
  };
  rec.value("corr.re_pd", cm.coefficients(idx(kRE), idx(kPD)));
  rec.value("corr.ie_pd", cm.coefficients(idx(kIE), idx(kPD)));
  rec.value("corr.ie_ac", cm.coefficients(idx(kIE), idx(kAC)));
  int below_05 = 0;
  int below_001 = 0;
  for (std::size_t i = 0; i < cm.categories.size(); ++i) {
    for (std::size_t j = i + 1; j < cm.categories.size(); ++j) {
      below_05 += cm.p_values(i, j) < 0.05;
      below_001 += cm.p_values(i, j) < 0.001;
    }
  }
  rec.value("corr.pairs_p_below_05", below_05);
  rec.value("corr.pairs_p_below_001", below_001);
}

void criterion_7(const ScoreMatrix& m, Recorder& rec) {
  const auto r = pca(m, true);
  rec.value("pca.pc1_explained", r.explained_variance_ratio.at(0));
  rec.value("pca.pc2_explained", r.explained_variance_ratio.at(1));
  auto loading = [&](std::size_t comp, const std::string& id) {
    const auto k = static_cast<std::size_t>(std::find(r.categories.begin(), r.categories.end(), id) - r.categories.begin());
    return r.loadings(comp, k);
  };
  bool same_sign = true;
  for (std::size_t k = 1; k < r.categories.size(); ++k) {
    same_sign = same_sign && (r.loadings(0, k) > 0) == (r.loadings(0, 0) > 0) && r.loadings(0, k) != 0;
  }
  rec.flag("pca.pc1_single_sign", same_sign);
  const double pe = loading(1, kPE), ac = loading(1, kAC), ie = loading(1, kIE), pr = loading(1, kPR);
  const bool contrast = (pe > 0) == (ac > 0) && (ie > 0) == (pr > 0) && (pe > 0) != (ie > 0) && pe != 0 && ie != 0;
  rec.flag("pca.pc2_contrast_pe_ac_vs_ie_pr", contrast,
           fmt::format("PE {:.3f} AC {:.3f} IE {:.3f} PR {:.3f}", pe, ac, ie, pr));
}

bool extremes_invariant(const ScoreMatrix& m, const WeightScheme& w, AggregationMethod method, const TierScheme& tiers) {
  const auto r = rank_matrix(m, w, method, tiers, false);
  if (r.size() < 4) return false;
  const std::set<std::string> top{r[0].jurisdiction, r[1].jurisdiction};
  const std::set<std::string> bottom{r[r.size() - 2].jurisdiction, r[r.size() - 1].jurisdiction};
  return top == std::set<std::string>{"United Kingdom", "European Union"} &&
         bottom == std::set<std::string>{"Russia", "Turkey"};
}

void criterion_8(const ScoreMatrix& m, const AnalysisConfig& cfg, Recorder& rec) {
  const auto& base = cfg.weights;
  const auto family = perturbation_family(base, {kPE, kPR}, 0.05, cfg.options.redistribution);
  const auto cmp = compare_schemes(m, base, family, AggregationMethod::WeightedArithmetic, cfg.tiers);
  double min_rho = 1.0;
  double max_tiers = 0.0;
  for (const auto& c : cmp) {
    min_rho = std::min(min_rho, c.spearman_vs_baseline);
    max_tiers = std::max(max_tiers, static_cast<double>(c.tier_changes));
  }
  rec.flag("weights.family_size", family.size() == 8, fmt::format("{} schemes", family.size()));
  rec.value("weights.perturbed_min_rho", min_rho);
  rec.value("weights.perturbed_max_tier_changes", max_tiers);

  const auto equal = equal_weights(m.category_ids());
  WeightScheme extreme{"extreme", {}};
  for (const auto& id : m.category_ids()) extreme.weights.emplace_back(id, id == kRE || id == kAC ? 0.30 : 0.10);
  const auto others = compare_schemes(m, base, {equal, extreme}, AggregationMethod::WeightedArithmetic, cfg.tiers);
  rec.value("weights.equal_rho", others[0].spearman_vs_baseline);
  rec.value("weights.equal_tier_changes", static_cast<double>(others[0].tier_changes));
  rec.value("weights.extreme_rho", others[1].spearman_vs_baseline);
  rec.value("weights.extreme_tier_changes", static_cast<double>(others[1].tier_changes));

  bool invariant = extremes_invariant(m, base, AggregationMethod::WeightedArithmetic, cfg.tiers);
  for (const auto& w : family) invariant = invariant && extremes_invariant(m, w, AggregationMethod::WeightedArithmetic, cfg.tiers);
  invariant = invariant && extremes_invariant(m, equal, AggregationMethod::WeightedArithmetic, cfg.tiers) &&
              extremes_invariant(m, extreme, AggregationMethod::WeightedArithmetic, cfg.tiers);
  rec.flag("weights.top2_bottom2_invariant", invariant);
}

void criterion_9(const ScoreMatrix& m, const AnalysisConfig& cfg, Recorder& rec) {
  const auto c = compare_aggregation(m, cfg.weights, cfg.tiers);
  rec.value("aggregation.rho", c.spearman_vs_baseline);
  rec.value("aggregation.tau", c.kendall_vs_baseline);
  rec.value("aggregation.mean_abs_rank_change", c.mean_abs_rank_change);
  rec.value("aggregation.max_abs_rank_change", c.max_abs_rank_change);
  const bool italy_max = !c.movers.empty() && c.movers.front().jurisdiction == "Italy" &&
                         std::abs(c.movers.front().change()) == static_cast<int>(c.max_abs_rank_change) &&
                         (c.movers.size() < 2 || std::abs(c.movers[1].change()) < std::abs(c.movers[0].change()));
  rec.flag("aggregation.italy_maximal_mover", italy_max,
           c.movers.empty() ? "no movers"
                            : fmt::format("{} {} -> {}", c.movers.front().jurisdiction, c.movers.front().old_rank,
                                          c.movers.front().new_rank));
  double france = 0.0;
  for (const auto& mv : c.movers) {
    if (mv.jurisdiction == "France") france = -mv.change();
  }
  rec.value("aggregation.france_improvement", france);
  bool same_rank = true;
  for (const char* name : {"United Kingdom", "European Union", "Russia", "Turkey"}) {
    same_rank = same_rank && std::none_of(c.movers.begin(), c.movers.end(),
                                          [&](const RankMove& mv) { return mv.jurisdiction == name; });
  }
  rec.flag("aggregation.top2_bottom2_invariant", same_rank);
}

const GroupSummary& group_named(const GroupBreakdown& b, const std::string& label) {
  for (const auto& g : b.groups) {
    if (g.label == label) return g;
  }
  throw Error(ErrorKind::EmptyGroup, fmt::format("no group '{}' in {}", label, b.dimension));
}

void criterion_10(const ScoreMatrix& m, Recorder& rec) {
  const auto overall = reported(m);
  const auto gov = group_breakdown(m, "governance", overall);
  rec.value("governance.democracy_mean", group_named(gov, "democracy").mean_overall);
  rec.value("governance.hybrid_mean", group_named(gov, "hybrid/authoritarian").mean_overall);
  rec.value("governance.u", gov.test.statistic);
  rec.value("governance.abs_rank_biserial", std::abs(gov.test.effect_size));
  bool all_positive = gov.category_differentials.size() == 6;
  for (const auto& [id, d] : gov.category_differentials) {
    all_positive = all_positive && d > 0;
    if (id == kRE || id == kAC || id == kPD) rec.value("governance.diff." + id, d);
  }
  rec.flag("governance.all_differentials_positive", all_positive);

  const auto region = group_breakdown(m, "region", overall);
  rec.value("region.h", region.test.statistic);
  rec.value("region.n", std::accumulate(region.test.group_sizes.begin(), region.test.group_sizes.end(), 0.0));
  rec.value("region.eta_squared", region.test.effect_size);
  for (const char* label : {"North America", "Europe", "Asia-Pacific", "Middle East & Africa", "Latin America"}) {
    rec.value(fmt::format("region.mean.{}", label), group_named(region, label).mean_overall);
  }
  rec.flag("region.russia_untagged", region.untagged == std::vector<std::string>{"Russia"});

  const auto income = group_breakdown(m, "income", overall);
  rec.value("income.h", income.test.statistic);
  rec.value("income.eta_squared", income.test.effect_size);
}

void criterion_11(const ScoreMatrix& m, Recorder& rec) {
  const auto d = category_group_differential(m, {kIE, kPR, kPD}, {kPE, kRE, kAC});
  rec.value("sets.novel_mean", d.mean_a);
  rec.value("sets.overlap_mean", d.mean_b);
  rec.value("sets.differential", d.differential);
}

void criterion_12(const ScoreMatrix& m, Recorder& rec) {
  const auto nl = imbalance_profile(m.jurisdiction("Netherlands"));
  rec.value("profile.netherlands_cv", nl.cv);
  rec.value("profile.netherlands_spread", nl.spread);
  const auto& italy = m.jurisdiction("Italy");
  rec.value("profile.italy_ie", italy.score(kIE));
  rec.value("profile.italy_pd", italy.score(kPD));
  const auto ie = m.column(kIE);
  const auto pd = m.column(kPD);
  rec.flag("profile.italy_at_floor", italy.score(kIE) == *std::min_element(ie.begin(), ie.end()) &&
                                         italy.score(kPD) == *std::min_element(pd.begin(), pd.end()));
}

fs::path scratch_dir() {
  const auto dir = fs::temp_directory_path() / fmt::format("sri-acceptance-{}", ::getpid());
  fs::create_directories(dir);
  return dir;
}

void criterion_13(const AnalysisConfig& cfg, Recorder& rec) {
  const std::vector<MultiRunRecord> runs = {
      {"Synthetic A", {{"r1", 30.4}, {"r2", 40.0}, {"r3", 50.3}}},
      {"Synthetic B", {{"r1", 42.0}, {"r2", 46.0}, {"r3", 50.0}}},
      {"Synthetic C", {{"r1", 25.0}, {"r2", 31.0}}},
  };
  const auto report = stability(runs, 3, cfg.tiers);
  rec.value("stability.synthetic_range", report.jurisdictions.at(0).range);
  rec.value("stability.synthetic_sd", report.jurisdictions.at(0).sd.value_or(NAN));
  rec.value("stability.exact_sd", report.jurisdictions.at(1).sd.value_or(NAN));
  rec.value("stability.qualifying", static_cast<double>(report.qualifying));
  rec.value("stability.mean_within_sd", report.mean_within_sd.value_or(NAN));
  rec.flag("stability.threshold_filters_short_series", !report.jurisdictions.at(2).qualifies);
  rec.flag("stability.tier_span_recorded",
           report.jurisdictions.at(0).tiers ==
               std::vector<std::string>{"Minimally Prepared", "Partially Prepared"});

  // Reversing run order and record order must not change any statistic.
  auto shuffled = runs;
  std::reverse(shuffled.begin(), shuffled.end());
  for (auto& r : shuffled) std::reverse(r.run_scores.begin(), r.run_scores.end());
  const auto again = stability(shuffled, 3, cfg.tiers);
  bool invariant = again.qualifying == report.qualifying;
  for (const auto& a : report.jurisdictions) {
    const auto it = std::find_if(again.jurisdictions.begin(), again.jurisdictions.end(),
                                 [&](const JurisdictionStability& b) { return b.jurisdiction == a.jurisdiction; });
    invariant = invariant && it != again.jurisdictions.end() && std::abs(it->mean - a.mean) < 1e-12 &&
                std::abs(it->sd.value_or(0) - a.sd.value_or(0)) < 1e-12 && it->range == a.range && it->tiers == a.tiers;
  }
  invariant = invariant && std::abs(*again.mean_within_sd - *report.mean_within_sd) < 1e-12;
  rec.flag("stability.ordering_invariant", invariant);

  const auto higher = stability(runs, 4, cfg.tiers);
  rec.flag("stability.raised_threshold_excludes_all", higher.qualifying == 0 && !higher.mean_within_sd.has_value());

  const auto text = serialize_runs(runs);
  const auto dir = scratch_dir();
  const auto path = dir / "runs.csv";
  {
    std::ofstream out(path, std::ios::binary);
    out << text;
  }
  const auto loaded = load_runs(path);
  fs::remove_all(dir);
  rec.flag("stability.run_file_round_trip", loaded == runs && parse_runs(text) == runs);
  rec.flag("stability.table_renders", !render_table(report, TableFormat::Json).empty());
}

// ---- property suites ----

using boost::property_tree::ptree;

struct SvgScan {
  std::size_t marks = 0;
  bool in_bounds = true;
  bool finite = true;
  std::vector<std::string> boundary_values;
  std::string mean_value;
  std::vector<std::string> mark_labels;
};

void scan(const ptree& node, double width, double height, SvgScan& out) {
  if (const auto attrs = node.get_child_optional("<xmlattr>")) {
    const auto cls = attrs->get<std::string>("class", "");
    if (cls == "mark") {
      ++out.marks;
      out.mark_labels.push_back(attrs->get<std::string>("data-label", ""));
    }
    if (cls == "tier-boundary") out.boundary_values.push_back(attrs->get<std::string>("data-value", ""));
    if (cls == "mean-line") out.mean_value = attrs->get<std::string>("data-value", "");
    auto coord = [&](const char* name, double limit, double extent) {
      if (const auto v = attrs->get_optional<std::string>(name)) {
        double d = 0;
        try {
          d = std::stod(*v);
        } catch (...) {
          out.finite = false;
          return;
        }
        if (!std::isfinite(d)) out.finite = false;
        if (d < 0 || d + extent > limit + 1e-9) out.in_bounds = false;
      }
    };
    const double w = attrs->get<double>("width", 0.0);
    const double h = attrs->get<double>("height", 0.0);
    const double r = attrs->get<double>("r", 0.0);
    coord("x", width, w);
    coord("y", height, h);
    coord("x1", width, 0);
    coord("x2", width, 0);
    coord("y1", height, 0);
    coord("y2", height, 0);
    coord("cx", width, r);
    coord("cy", height, r);
  }
  for (const auto& [name, child] : node) {
    if (name != "<xmlattr>") scan(child, width, height, out);
  }
}

std::optional<SvgScan> parse_svg(const std::string& svg) {
  try {
    std::istringstream in(svg);
    ptree tree;
    boost::property_tree::read_xml(in, tree);
    const auto& root = tree.get_child("svg");
    SvgScan s;
    scan(root, root.get<double>("<xmlattr>.width"), root.get<double>("<xmlattr>.height"), s);
    return s;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

void criterion_14(const ScoreMatrix& m, const AnalysisConfig& cfg, Recorder& rec) {
  std::mt19937_64 rng(20250101);
  std::uniform_real_distribution<double> score(1.0, 100.0);
  std::uniform_real_distribution<double> unit(0.05, 1.0);
  std::uniform_int_distribution<int> rows(3, 12);

  const auto ids = m.category_ids();
  bool monotone = true;
  bool am_gm = true;
  for (int trial = 0; trial < 1000; ++trial) {
    WeightScheme w{"random", {}};
    double total = 0.0;
    for (const auto& id : ids) {
      w.weights.emplace_back(id, unit(rng));
      total += w.weights.back().second;
    }
    for (auto& [id, v] : w.weights) v /= total;
    const int n = rows(rng);
    for (int i = 0; i < n; ++i) {
      JurisdictionRecord r{fmt::format("j{}", i), {}, std::nullopt, {}};
      for (const auto& id : ids) r.category_scores[id] = score(rng);
      const double am = aggregate_overall(r, w, AggregationMethod::WeightedArithmetic);
      const double gm = aggregate_overall(r, w, AggregationMethod::WeightedGeometric);
      am_gm = am_gm && gm <= am + 1e-9;
      auto bumped = r;
      const auto& id = ids[static_cast<std::size_t>(i) % ids.size()];
      bumped.category_scores[id] = std::min(100.0, bumped.category_scores[id] + unit(rng) * 10);
      monotone = monotone && aggregate_overall(bumped, w, AggregationMethod::WeightedArithmetic) >= am - 1e-12 &&
                 aggregate_overall(bumped, w, AggregationMethod::WeightedGeometric) >= gm - 1e-12;
    }
  }
  rec.flag("property.aggregation_monotone_1000_matrices", monotone);
  rec.flag("property.am_gm_dominance_1000_matrices", am_gm);

  std::uniform_int_distribution<int> small(0, 10);
  bool u_complement = true;
  bool spearman_ranks = true;
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> a(static_cast<std::size_t>(rows(rng)));
    std::vector<double> b(static_cast<std::size_t>(rows(rng)));
    for (auto& v : a) v = small(rng);
    for (auto& v : b) v = small(rng);
    const auto ab = mann_whitney(a, b);
    const auto ba = mann_whitney(b, a);
    u_complement = u_complement && std::abs(ab.statistic + ba.statistic - static_cast<double>(a.size() * b.size())) < 1e-9;

    std::vector<double> x(12), y(12);
    for (auto& v : x) v = small(rng);
    for (auto& v : y) v = small(rng);
    try {
      const auto s = spearman(x, y);
      const auto p = pearson(mid_ranks(x), mid_ranks(y));
      spearman_ranks = spearman_ranks && std::abs(s.coefficient - p.coefficient) <= 1e-12;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::ConstantVector) throw;
    }
  }
  rec.flag("property.u_complement_identity", u_complement);
  rec.flag("property.spearman_equals_pearson_on_ranks", spearman_ranks);

  const auto result = pca(m, true);
  const double eig_sum = std::accumulate(result.eigenvalues.begin(), result.eigenvalues.end(), 0.0);
  rec.flag("property.pca_eigenvalue_sum", std::abs(eig_sum - static_cast<double>(ids.size())) < 1e-9, show(eig_sum));
  const auto corr = correlation_matrix(m, CorrelationKind::Pearson);
  const auto eig = jacobi_eigen(corr.coefficients);
  Matrix lambda(ids.size(), ids.size());
  for (std::size_t k = 0; k < ids.size(); ++k) lambda(k, k) = eig.values[k];
  const auto rebuilt = eig.vectors * lambda * eig.vectors.transposed();
  double worst = 0.0;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    for (std::size_t j = 0; j < ids.size(); ++j) worst = std::max(worst, std::abs(rebuilt(i, j) - corr.coefficients(i, j)));
  }
  rec.flag("property.pca_reconstruction", worst < 1e-9, fmt::format("max error {:.2e}", worst));
  const auto gram = result.loadings * result.loadings.transposed();
  double ortho = 0.0;
  for (std::size_t i = 0; i < gram.rows(); ++i) {
    for (std::size_t j = 0; j < gram.cols(); ++j) ortho = std::max(ortho, std::abs(gram(i, j) - (i == j ? 1.0 : 0.0)));
  }
  rec.flag("property.pca_loadings_orthonormal", ortho < 1e-9);
  const auto spearman_cm = correlation_matrix(m, CorrelationKind::SpearmanRho);
  rec.flag("property.spearman_matrix_unit_diagonal", std::abs(spearman_cm.coefficients(0, 0) - 1.0) < 1e-12);

  bool monotone_cdf = true;
  const std::array<Distribution, 5> dists = {Distribution::standard_normal(), Distribution::student_t(1),
                                             Distribution::student_t(5), Distribution::chi_square(1),
                                             Distribution::chi_square(3)};
  for (const auto& d : dists) {
    double prev = 0.0;
    for (double x = -20.0; x <= 60.0; x += 0.05) {
      const double c = dist_cdf(d, x);
      const double sf = dist_sf(d, x);
      monotone_cdf = monotone_cdf && c >= prev - 1e-15 && c >= 0 && c <= 1 && std::abs(c + sf - 1.0) < 1e-12;
      prev = c;
    }
  }
  rec.flag("property.cdf_monotone_and_complementary", monotone_cdf);
  const double t2 = 1.3;
  const bool spots =
      std::abs(dist_cdf(Distribution::standard_normal(), 0.0) - 0.5) < 1e-15 &&
      std::abs(dist_cdf(Distribution::student_t(1), 1.0) - 0.75) < 1e-12 &&
      std::abs(dist_cdf(Distribution::student_t(2), t2) - (0.5 + t2 / (2.0 * std::sqrt(2.0 + t2 * t2)))) < 1e-12 &&
      std::abs(dist_cdf(Distribution::chi_square(2), 3.0) - (1.0 - std::exp(-1.5))) < 1e-12 &&
      std::abs(normal_quantile(0.975) - 1.959963984540054) < 1e-9 &&
      std::abs(regularized_gamma_p(1.0, 2.0) - (1.0 - std::exp(-2.0))) < 1e-12 &&
      std::abs(regularized_gamma_q(1.0, 2.0) - std::exp(-2.0)) < 1e-12 &&
      std::abs(regularized_beta(1.0, 1.0, 0.3) - 0.3) < 1e-12;
  rec.flag("property.cdf_closed_form_spot_values", spots);

  const auto csv = serialize_matrix(m, DataFormat::Csv);
  const auto json = serialize_matrix(m, DataFormat::Json);
  const bool text_round_trip = parse_matrix(csv, DataFormat::Csv, cfg.weights) == m &&
                               parse_matrix(json, DataFormat::Json, cfg.weights) == m;
  const auto dir = scratch_dir();
  {
    std::ofstream(dir / "m.csv", std::ios::binary) << csv;
    std::ofstream(dir / "m.json", std::ios::binary) << json;
    std::ofstream(dir / "config.json", std::ios::binary) << "{}";
  }
  const bool file_round_trip = load_matrix(dir / "m.csv", format_for_path(dir / "m.csv"), cfg.weights) == m &&
                               load_matrix(dir / "m.json", format_for_path(dir / "m.json"), cfg.weights) == m;
  const auto loaded_config = load_config(dir / "config.json");
  rec.flag("property.serializer_round_trip", text_round_trip && file_round_trip);
  rec.flag("property.empty_config_is_default",
           loaded_config.weights == default_analysis_config().weights &&
               parse_config("").tiers == default_sri_config().tiers && validate_tiers(cfg.tiers).empty() &&
               validate_weights(cfg.weights, ids).empty() && validate_matrix(m).empty());

  const auto ranking = rank_matrix(m, cfg.weights, AggregationMethod::WeightedArithmetic, cfg.tiers, true);
  const auto overall = reported(m);
  const auto governance = group_breakdown(m, "governance", overall);
  const std::vector<std::pair<ChartData, std::size_t>> charts = {
      {lollipop_data(ranking, cfg.tiers), m.size()},
      {heatmap_data(m, ranking), m.size() * ids.size()},
      {dumbbell_data(m, kRE, kPR), m.size()},
      {grouped_bars_data(m, governance), ids.size()},
  };
  bool svg_ok = true;
  std::string detail;
  for (const auto& [data, expected_marks] : charts) {
    const auto kind = kind_of(data);
    const auto svg = render_chart(kind, data);
    write_chart(kind, data, dir / fmt::format("{}.svg", to_string(kind)));
    const auto parsed = parse_svg(svg);
    const bool ok = parsed && parsed->finite && parsed->in_bounds && parsed->marks == expected_marks &&
                    svg == render_chart(data);
    if (!ok) detail += fmt::format("{} ", to_string(kind));
    svg_ok = svg_ok && ok;
    if (parsed && kind == ChartKind::Lollipop) {
      const bool lines = parsed->boundary_values == std::vector<std::string>{"20", "40", "60"} &&
                         std::abs(std::stod(parsed->mean_value.empty() ? "0" : parsed->mean_value) - 33.03) <= 0.01;
      rec.flag("property.lollipop_reference_lines", lines,
               fmt::format("boundaries {} mean {}", fmt::join(parsed->boundary_values, ","), parsed->mean_value));
    }
    if (parsed && kind == ChartKind::Dumbbell) {
      const auto& l = parsed->mark_labels;
      rec.flag("property.dumbbell_largest_gaps_first",
               l.size() >= 2 && std::set<std::string>{l[0], l[1]} == std::set<std::string>{"Japan", "Canada"});
    }
  }
  fs::remove_all(dir);
  rec.flag("property.svg_well_formed_with_mark_counts", svg_ok, detail.empty() ? "" : "failed: " + detail);

  // Remaining surface: every table renderer in every format.
  const auto summary = describe(overall);
  const auto normality = shapiro_wilk(overall);
  const auto kendall = kendall_tau_b(m.column(kRE), m.column(kPD));
  const auto paired = paired_gap_test(m.column(kRE), m.column(kPR));
  std::vector<std::vector<double>> by_tier(3);
  for (std::size_t i = 0; i < overall.size(); ++i) by_tier[std::min<std::size_t>(cfg.tiers.index_of(overall[i]), 2)].push_back(overall[i]);
  const auto kw = kruskal_wallis(by_tier);
  const auto ranks = display_ranks(m, overall);
  bool rendered = std::isfinite(kendall.p_value) && std::isfinite(paired.p_value) && std::isfinite(kw.p_value) &&
                  ranks.front() == 1 && tier_of(overall.front(), cfg.tiers) == "Partially Prepared" &&
                  format_score(49.0) == "49" && std::abs(quantile(overall, 0.5) - median(overall)) < 1e-12;
  const auto comparisons = compare_schemes(m, cfg.weights, {equal_weights(ids)}, AggregationMethod::WeightedArithmetic, cfg.tiers);
  for (auto f : {TableFormat::Markdown, TableFormat::Csv, TableFormat::Json}) {
    rendered = rendered && !render_table(summary, normality, f).empty() && !render_table(gap_analysis(m, kRE, kPR), f).empty() &&
               !render_table(corr, f).empty() && !render_table(result, f).empty() && !render_table(governance, f).empty() &&
               !render_table(comparisons, f).empty() && !render_table(validate_matrix(m), f).empty();
  }
  rec.flag("property.all_renderers_produce_output", rendered);
}

std::string format_bound(const Expectation& e) {
  switch (e.bound) {
    case Bound::Within: return e.tolerance == 0 ? fmt::format("= {}", show(e.target))
                                                : fmt::format("{} ± {:g}", show(e.target), e.tolerance);
    case Bound::AtLeast: return fmt::format(">= {}", show(e.target));
    case Bound::AtMost: return fmt::format("<= {}", show(e.target));
    case Bound::Above: return fmt::format("> {}", show(e.target));
  }
  return {};
}

const std::array<const char*, kCriterionCount> kTitles = {
    "ranking reproduction",
    "rounding-policy bound",
    "distribution statistics",
    "category descriptive statistics",
    "research-practice gap",
    "category correlations",
    "principal components",
    "weight robustness",
    "aggregation robustness",
    "group comparisons",
    "category-set differential",
    "jurisdiction profiles",
    "scoring stability substitutes",
    "property suites",
};

}  // namespace

bool Expectation::accepts(double actual) const noexcept {
  if (std::isnan(actual)) return false;
  switch (bound) {
    case Bound::Within: return std::abs(actual - target) <= tolerance + kExactSlack;
    case Bound::AtLeast: return actual >= target - kExactSlack;
    case Bound::AtMost: return actual <= target + kExactSlack;
    case Bound::Above: return actual > target;
  }
  return false;
}

std::string Expectation::describe() const { return format_bound(*this); }

const std::vector<Expectation>& acceptance_expectations() {
  static const std::vector<Expectation> all = build_expectations();
  return all;
}

const Expectation& expectation(std::string_view key) {
  for (const auto& e : acceptance_expectations()) {
    if (e.key == key) return e;
  }
  throw Error(ErrorKind::PreconditionViolation, fmt::format("no acceptance target '{}'", key));
}

bool CriterionResult::passed() const noexcept {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

bool AcceptanceReport::passed() const noexcept {
  return within_time_limit() &&
         std::all_of(criteria.begin(), criteria.end(), [](const CriterionResult& c) { return c.passed(); });
}

AcceptanceReport run_acceptance(const ScoreMatrix& matrix, const AnalysisConfig& config, std::optional<int> only) {
  if (only && (*only < 1 || *only > kCriterionCount)) {
    throw Error(ErrorKind::PreconditionViolation, fmt::format("criterion must be 1..{}, got {}", kCriterionCount, *only));
  }
  const auto start = std::chrono::steady_clock::now();
  AcceptanceReport report;
  const std::array<std::function<void(Recorder&)>, kCriterionCount> runners = {
      [&](Recorder& r) { criterion_1(matrix, config, r); },
      [&](Recorder& r) { criterion_2(matrix, config, r); },
      [&](Recorder& r) { criterion_3(matrix, r); },
      [&](Recorder& r) { criterion_4(matrix, r); },
      [&](Recorder& r) { criterion_5(matrix, r); },
      [&](Recorder& r) { criterion_6(matrix, r); },
      [&](Recorder& r) { criterion_7(matrix, r); },
      [&](Recorder& r) { criterion_8(matrix, config, r); },
      [&](Recorder& r) { criterion_9(matrix, config, r); },
      [&](Recorder& r) { criterion_10(matrix, r); },
      [&](Recorder& r) { criterion_11(matrix, r); },
      [&](Recorder& r) { criterion_12(matrix, r); },
      [&](Recorder& r) { criterion_13(config, r); },
      [&](Recorder& r) { criterion_14(matrix, config, r); },
  };
  for (int n = 1; n <= kCriterionCount; ++n) {
    if (only && *only != n) continue;
    CriterionResult result;
    result.number = n;
    result.title = kTitles[static_cast<std::size_t>(n - 1)];
    Recorder rec(result);
    try {
      runners[static_cast<std::size_t>(n - 1)](rec);
    } catch (const Error& e) {
      rec.flag("error", false, fmt::format("{}: {}", to_string(e.kind()), e.what()));
    }
    report.criteria.push_back(std::move(result));
  }
  report.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::string render_acceptance(const AcceptanceReport& report, TableFormat format) {
  if (format == TableFormat::Markdown) {
    std::string out;
    for (const auto& c : report.criteria) {
      out += fmt::format("{} criterion {:2}: {}\n", c.passed() ? "PASS" : "FAIL", c.number, c.title);
      for (const auto& k : c.checks) {
        out += fmt::format("    [{}] {}: {} (expected {})\n", k.passed ? "ok" : "FAIL", k.label, k.actual, k.expected);
      }
    }
    const auto passed = std::count_if(report.criteria.begin(), report.criteria.end(),
                                      [](const CriterionResult& c) { return c.passed(); });
    out += fmt::format("{} runtime within {:g} s\n", report.within_time_limit() ? "PASS" : "FAIL",
                       report.time_limit_seconds);
    out += fmt::format("{}/{} criteria passed\n", passed, report.criteria.size());
    return out;
  }
  Table t{"acceptance", "Acceptance checks", {"Criterion", "Status", "Check", "Actual", "Expected", "Result"}, {}};
  for (const auto& c : report.criteria) {
    for (const auto& k : c.checks) {
      t.rows.push_back({Cell::integer(c.number), c.passed() ? "PASS" : "FAIL", k.label, k.actual, k.expected,
                        k.passed ? "ok" : "FAIL"});
    }
  }
  return render_tables({t}, format);
}

}  // namespace sri
