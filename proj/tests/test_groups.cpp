#include "sri/groups.hpp"
#include "support.hpp"

using namespace sri;
using sri::test::make_matrix;
using sri::test::reported_overall;
using sri::test::sri_data;

namespace {
double mean_of(const GroupBreakdown& b, const std::string& label) {
  for (const auto& g : b.groups)
    if (g.label == label) return g.mean_overall;
  ADD_FAILURE() << "missing group " << label;
  return 0;
}
}  // namespace

TEST(Gap, ResearchVersusProfessional) {
  const auto g = gap_analysis(sri_data(), "research_environment", "professional_readiness");
  EXPECT_EQ(g.positive_count, 31u);
  EXPECT_EQ(g.min_gap, 15);
  EXPECT_EQ(g.min_jurisdictions, std::vector<std::string>{"Russia"});
  EXPECT_EQ(g.max_gap, 52);
  EXPECT_EQ(g.max_jurisdictions, (std::vector<std::string>{"Japan", "Canada"}));
  EXPECT_NEAR(g.mean_gap, 33.65, 0.05);
  EXPECT_EQ(g.median_gap, 35);
  ASSERT_TRUE(g.test.has_value());
}

TEST(Gap, SelfComparisonIsDegenerate) {
  const auto g = gap_analysis(sri_data(), "research_environment", "research_environment");
  for (const auto& v : g.gaps) EXPECT_EQ(v.value, 0);
  EXPECT_FALSE(g.test.has_value());
  EXPECT_EQ(g.degenerate, ErrorKind::AllZeroDifferences);
}

TEST(Gap, AntisymmetricAndColumnMeans) {
  const auto ab = gap_analysis(sri_data(), "policy_environment", "adaptive_capacity");
  const auto ba = gap_analysis(sri_data(), "adaptive_capacity", "policy_environment");
  EXPECT_NEAR(ab.mean_gap, -11.78, 0.05);
  for (std::size_t i = 0; i < ab.gaps.size(); ++i) EXPECT_EQ(ab.gaps[i].value, -ba.gaps[i].value);
}

TEST(Groups, Governance) {
  const auto b = group_breakdown(sri_data(), "governance", reported_overall());
  ASSERT_EQ(b.groups.size(), 2u);
  EXPECT_EQ(b.groups[0].label, "democracy");
  EXPECT_EQ(b.groups[0].size, 24u);
  EXPECT_NEAR(mean_of(b, "democracy"), 36.13, 0.01);
  EXPECT_NEAR(mean_of(b, "hybrid/authoritarian"), 22.39, 0.01);
  EXPECT_EQ(b.test.statistic, 156.0);
  EXPECT_NEAR(b.test.effect_size, 0.857, 0.005);
  const std::vector<std::pair<std::string, double>> expected = {
      {"policy_environment", 13.49}, {"institutional_engagement", 6.96}, {"research_environment", 22.35},
      {"professional_readiness", 7.31}, {"public_discourse", 13.37}, {"adaptive_capacity", 18.37}};
  ASSERT_EQ(b.category_differentials.size(), expected.size());
  for (std::size_t k = 0; k < expected.size(); ++k) {
    EXPECT_EQ(b.category_differentials[k].first, expected[k].first);
    EXPECT_NEAR(b.category_differentials[k].second, expected[k].second, 0.01);
  }
}

TEST(Groups, RegionExcludesUntagged) {
  const auto b = group_breakdown(sri_data(), "region", reported_overall());
  EXPECT_EQ(b.untagged, std::vector<std::string>{"Russia"});
  EXPECT_EQ(b.groups.size(), 5u);
  EXPECT_NEAR(b.test.statistic, 12.9522, 1e-3);
  EXPECT_NEAR(b.test.p_value, 0.01151, 1e-4);
  EXPECT_EQ(b.test.df, 4);
  EXPECT_NEAR(b.test.effect_size, 0.35809, 1e-4);
  EXPECT_NEAR(mean_of(b, "North America"), 40.70, 0.01);
  EXPECT_NEAR(mean_of(b, "Latin America"), 26.65, 0.01);
  double weighted = 0;
  std::size_t n = 0;
  for (const auto& g : b.groups) {
    weighted += g.mean_overall * static_cast<double>(g.size);
    n += g.size;
  }
  double tagged = 0;
  for (const auto& j : sri_data().jurisdictions)
    if (j.tag("region")) tagged += *j.reported_overall;
  EXPECT_NEAR(weighted / static_cast<double>(n), tagged / 30.0, 1e-9);
}

TEST(Groups, Income) {
  const auto b = group_breakdown(sri_data(), "income", reported_overall());
  EXPECT_NEAR(mean_of(b, "high"), 37.35, 0.01);
  EXPECT_NEAR(mean_of(b, "upper-middle"), 24.64, 0.01);
  EXPECT_NEAR(mean_of(b, "lower-middle"), 22.38, 0.01);
  EXPECT_NEAR(b.test.statistic, 14.3065, 1e-3);
  EXPECT_NEAR(b.test.p_value, 0.000782, 1e-5);
  EXPECT_NEAR(b.test.effect_size, 0.43952, 1e-4);
}

TEST(Groups, SingleLabel) {
  auto m = make_matrix({{"A", {1, 2, 3, 4, 5, 6}}, {"B", {2, 3, 4, 5, 6, 7}}, {"C", {3, 4, 5, 6, 7, 8}}});
  for (auto& j : m.jurisdictions) j.tags["bloc"] = "one";
  EXPECT_SRI_ERROR(group_breakdown(m, "bloc", {1, 2, 3}), ErrorKind::SingleGroup);
}

TEST(CategorySets, Differential) {
  const auto d = category_group_differential(sri_data(), {"institutional_engagement", "professional_readiness", "public_discourse"},
                                             {"policy_environment", "research_environment", "adaptive_capacity"});
  EXPECT_NEAR(d.mean_a, 20.32, 0.02);
  EXPECT_NEAR(d.mean_b, 46.09, 0.02);
  EXPECT_NEAR(d.differential, 25.76, 0.02);
  const auto single = category_group_differential(sri_data(), {"research_environment"}, {"professional_readiness"});
  EXPECT_NEAR(single.mean_a, 50.16, 0.01);
  EXPECT_NEAR(single.mean_b, 16.52, 0.01);
  EXPECT_SRI_ERROR(category_group_differential(sri_data(), {"research_environment"}, {"research_environment"}),
                   ErrorKind::OverlappingSets);
}

TEST(Profiles, Imbalance) {
  const auto nl = imbalance_profile(sri_data().jurisdiction("Netherlands"));
  EXPECT_NEAR(nl.cv, 0.80425, 1e-4);
  EXPECT_EQ(nl.spread, 62);
  EXPECT_EQ(imbalance_profile(sri_data().jurisdiction("Italy")).spread, 40);
  const auto flat = make_matrix({{"F", {30, 30, 30, 30, 30, 30}}});
  const auto p = imbalance_profile(flat.jurisdictions[0]);
  EXPECT_EQ(p.cv, 0);
  EXPECT_EQ(p.spread, 0);
}
