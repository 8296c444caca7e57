#include <algorithm>

#include "sri/robustness.hpp"
#include "support.hpp"

using namespace sri;
using sri::test::make_matrix;
using sri::test::sri_data;

namespace {
const std::vector<std::string> kTargets = {"policy_environment", "professional_readiness"};
}

TEST(Perturbation, FamilyOfEight) {
  const auto base = default_sri_config().weights;
  const auto family = perturbation_family(base, kTargets, 0.05);
  ASSERT_EQ(family.size(), 8u);
  for (const auto& w : family) EXPECT_NEAR(w.sum(), 1.0, 1e-12) << w.name;
  const auto it = std::find_if(family.begin(), family.end(), [](const WeightScheme& w) { return w.name == "policy_environment+5pp"; });
  ASSERT_NE(it, family.end());
  EXPECT_NEAR(it->weight_of("policy_environment"), 0.25, 1e-12);
  EXPECT_NEAR(it->weight_of("professional_readiness"), 0.20, 1e-12);
  EXPECT_NEAR(it->weight_of("public_discourse"), 0.1375, 1e-12);
}

TEST(Perturbation, SingleTargetAndProportional) {
  const auto base = default_sri_config().weights;
  EXPECT_EQ(perturbation_family(base, {"policy_environment"}, 0.05).size(), 2u);
  const auto prop = perturbation_family(base, kTargets, 0.05, RedistributionPolicy::Proportional);
  for (const auto& w : prop) EXPECT_NEAR(w.sum(), 1.0, 1e-12);
  const auto& first = prop.front();
  // Non-targets share the offset in proportion to their equal base weights.
  EXPECT_NEAR(first.weight_of("public_discourse"), first.weight_of("adaptive_capacity"), 1e-12);
}

TEST(Perturbation, Errors) {
  const auto base = default_sri_config().weights;
  EXPECT_SRI_ERROR(perturbation_family(base, kTargets, 0.0), ErrorKind::PreconditionViolation);
  EXPECT_SRI_ERROR(perturbation_family(base, {"nope"}, 0.05), ErrorKind::UnknownCategory);
  EXPECT_SRI_ERROR(perturbation_family(base, kTargets, 0.25), ErrorKind::NegativeWeightProduced);
}

TEST(CompareSchemes, DatasetSchemes) {
  const auto cfg = default_sri_config();
  const auto& m = sri_data();
  const auto family = perturbation_family(cfg.weights, kTargets, 0.05);
  for (const auto& c : compare_schemes(m, cfg.weights, family, AggregationMethod::WeightedArithmetic, cfg.tiers)) {
    EXPECT_GT(c.spearman_vs_baseline, 0.99) << c.scheme_name;
    EXPECT_LE(c.tier_changes, 2u) << c.scheme_name;
  }
  WeightScheme extreme{"extreme", {}};
  for (const auto& id : m.category_ids())
    extreme.weights.emplace_back(id, id == "research_environment" || id == "adaptive_capacity" ? 0.30 : 0.10);
  const auto out = compare_schemes(m, cfg.weights, {equal_weights(m.category_ids()), extreme, cfg.weights},
                                   AggregationMethod::WeightedArithmetic, cfg.tiers);
  EXPECT_NEAR(out[0].spearman_vs_baseline, 0.99556, 1e-4);
  EXPECT_EQ(out[0].tier_changes, 1u);
  EXPECT_NEAR(out[1].spearman_vs_baseline, 0.95403, 1e-4);
  EXPECT_EQ(out[1].tier_changes, 10u);
  EXPECT_EQ(out[2].spearman_vs_baseline, 1.0);
  EXPECT_EQ(out[2].kendall_vs_baseline, 1.0);
  EXPECT_EQ(out[2].tier_changes, 0u);
  EXPECT_TRUE(out[2].movers.empty());
}

TEST(CompareAggregation, Dataset) {
  const auto cfg = default_sri_config();
  const auto c = compare_aggregation(sri_data(), cfg.weights, cfg.tiers);
  EXPECT_NEAR(c.spearman_vs_baseline, 0.98226, 1e-4);
  EXPECT_NEAR(c.kendall_vs_baseline, 0.90968, 1e-4);
  EXPECT_NEAR(c.mean_abs_rank_change, 1.1613, 1e-4);
  EXPECT_EQ(c.max_abs_rank_change, 5);
  ASSERT_FALSE(c.movers.empty());
  EXPECT_EQ(c.movers.front().jurisdiction, "Italy");
  EXPECT_EQ(c.movers.front().old_rank, 24);
  EXPECT_EQ(c.movers.front().new_rank, 29);
  for (const auto& mv : c.movers) {
    EXPECT_NE(mv.jurisdiction, "United Kingdom");
    EXPECT_NE(mv.jurisdiction, "Turkey");
    if (mv.jurisdiction == "France") {
      EXPECT_EQ(mv.old_rank, 8);
      EXPECT_EQ(mv.new_rank, 6);
    }
  }
}

TEST(CompareAggregation, ConstantProfilesAreInvariant) {
  const auto m = make_matrix({{"A", {50, 50, 50, 50, 50, 50}}, {"B", {30, 30, 30, 30, 30, 30}}, {"C", {70, 70, 70, 70, 70, 70}}});
  const auto cfg = default_sri_config();
  const auto c = compare_aggregation(m, cfg.weights, cfg.tiers);
  EXPECT_NEAR(c.spearman_vs_baseline, 1.0, 1e-12);
  EXPECT_TRUE(c.movers.empty());
}

TEST(Stability, SyntheticRuns) {
  const auto tiers = default_sri_config().tiers;
  const std::vector<MultiRunRecord> runs = {
      {"NL", {{"a", 30.4}, {"b", 40.0}, {"c", 50.3}}},
      {"Flat", {{"a", 42}, {"b", 42}, {"c", 42}}},
      {"Once", {{"a", 33}}},
  };
  const auto r = stability(runs, 3, tiers);
  EXPECT_NEAR(r.jurisdictions[0].range, 19.9, 1e-12);
  EXPECT_NEAR(*r.jurisdictions[0].sd, 9.95, 0.005);
  EXPECT_EQ(*r.jurisdictions[1].sd, 0.0);
  EXPECT_EQ(r.jurisdictions[1].tiers, std::vector<std::string>{"Partially Prepared"});
  EXPECT_FALSE(r.jurisdictions[2].sd.has_value());
  EXPECT_FALSE(r.jurisdictions[2].qualifies);
  EXPECT_EQ(r.qualifying, 2u);
  EXPECT_NEAR(*r.mean_within_sd, (*r.jurisdictions[0].sd + 0.0) / 2, 1e-12);
  EXPECT_SRI_ERROR(stability(runs, 1, tiers), ErrorKind::PreconditionViolation);
}
