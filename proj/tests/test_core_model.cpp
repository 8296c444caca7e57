#include <algorithm>

#include "sri/core_model.hpp"
#include "support.hpp"

using namespace sri;
using sri::test::make_matrix;
using sri::test::sri_data;

TEST(CoreModel, BundledDatasetHasNoViolations) { EXPECT_TRUE(validate_matrix(sri_data()).empty()); }

TEST(CoreModel, OutOfRangeScoreNamesTheCell) {
  auto m = make_matrix({{"A", {10, 20, 30, 40, 50, 60}}, {"B", {10, 20, 30, 40, 50, 60}}, {"C", {1, 2, 3, 4, 5, 6}}});
  m.jurisdictions[1].category_scores["public_discourse"] = 101;
  const auto v = validate_matrix(m);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].kind, Violation::Kind::Range);
  EXPECT_EQ(v[0].jurisdiction, "B");
  EXPECT_EQ(v[0].category, "public_discourse");
}

TEST(CoreModel, CaseInsensitiveDuplicateJurisdiction) {
  auto m = make_matrix({{"UK", {1, 2, 3, 4, 5, 6}}, {"uk", {1, 2, 3, 4, 5, 6}}, {"C", {1, 2, 3, 4, 5, 6}}});
  const auto v = validate_matrix(m);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].kind, Violation::Kind::DuplicateJurisdiction);
}

TEST(CoreModel, MissingScoreAndShapeViolations) {
  auto m = make_matrix({{"A", {1, 2, 3, 4, 5, 6}}, {"B", {1, 2, 3, 4, 5, 6}}});
  m.jurisdictions[0].category_scores.erase("adaptive_capacity");
  const auto v = validate_matrix(m);
  EXPECT_TRUE(std::any_of(v.begin(), v.end(), [](const Violation& x) { return x.kind == Violation::Kind::Shape; }));
  EXPECT_TRUE(std::any_of(v.begin(), v.end(), [](const Violation& x) { return x.kind == Violation::Kind::MissingScore; }));
}

TEST(CoreModel, DefaultConfig) {
  const auto cfg = default_sri_config();
  EXPECT_NEAR(cfg.weights.sum(), 1.0, 1e-12);
  EXPECT_DOUBLE_EQ(cfg.weights.weight_of("policy_environment"), 0.20);
  EXPECT_DOUBLE_EQ(cfg.weights.weight_of("professional_readiness"), 0.20);
  EXPECT_DOUBLE_EQ(cfg.weights.weight_of("research_environment"), 0.15);
  EXPECT_EQ(cfg.tiers.name_of(49.00), "Partially Prepared");
  EXPECT_TRUE(validate_tiers(cfg.tiers).empty());
  EXPECT_SRI_ERROR(cfg.weights.weight_of("nope"), ErrorKind::UnknownCategory);
}

TEST(CoreModel, TierBoundaries) {
  const auto tiers = default_sri_config().tiers;
  EXPECT_EQ(tiers.name_of(0), "Unprepared");
  EXPECT_EQ(tiers.name_of(16.30), "Unprepared");
  EXPECT_EQ(tiers.name_of(19.999), "Unprepared");
  EXPECT_EQ(tiers.name_of(20), "Minimally Prepared");
  EXPECT_EQ(tiers.name_of(59.99), "Partially Prepared");
  EXPECT_EQ(tiers.name_of(80), "Well Prepared");
  EXPECT_EQ(tiers.name_of(100), "Well Prepared");
  EXPECT_SRI_ERROR(tiers.index_of(100.5), ErrorKind::PreconditionViolation);
  EXPECT_SRI_ERROR(tiers.index_of(-1), ErrorKind::PreconditionViolation);
}

TEST(CoreModel, TierGapAndOverlapReported) {
  TierScheme gap{{{"low", 0, 30}, {"high", 40, 100}}};
  const auto p = validate_tiers(gap);
  ASSERT_FALSE(p.empty());
  EXPECT_NE(p.front().find("gap at [30,40)"), std::string::npos) << p.front();
  TierScheme overlap{{{"low", 0, 50}, {"high", 40, 100}}};
  ASSERT_FALSE(validate_tiers(overlap).empty());
  EXPECT_NE(validate_tiers(overlap).front().find("overlap"), std::string::npos);
}

TEST(CoreModel, WeightValidation) {
  const auto ids = sri_data().category_ids();
  WeightScheme w = sri_data().weight_scheme();
  EXPECT_TRUE(validate_weights(w, ids).empty());
  w.weights[0].second -= 0.05;
  EXPECT_FALSE(validate_weights(w, ids).empty());
  WeightScheme missing{"m", {{"policy_environment", 1.0}}};
  EXPECT_FALSE(validate_weights(missing, ids).empty());
}

TEST(CoreModel, Lookups) {
  const auto& m = sri_data();
  EXPECT_EQ(m.size(), 31u);
  EXPECT_EQ(m.categories.size(), 6u);
  EXPECT_EQ(m.jurisdiction("Netherlands").score("institutional_engagement"), 8);
  EXPECT_EQ(m.jurisdiction("Russia").tag("region"), std::nullopt);
  EXPECT_EQ(m.jurisdiction("Russia").tag("governance"), "hybrid/authoritarian");
  EXPECT_SRI_ERROR(m.jurisdiction("Atlantis"), ErrorKind::UnknownJurisdiction);
  EXPECT_SRI_ERROR(m.column("nope"), ErrorKind::UnknownCategory);
  EXPECT_EQ(display_name_for("public_discourse"), "Public Discourse");
}

TEST(CoreModel, ErrorKindNames) {
  EXPECT_EQ(to_string(ErrorKind::FileNotFound), "FileNotFound");
  EXPECT_EQ(to_string(ErrorKind::GeometricZeroScore), "GeometricZeroScore");
  const Error e(ErrorKind::ParseError, "bad");
  EXPECT_EQ(e.kind(), ErrorKind::ParseError);
}
