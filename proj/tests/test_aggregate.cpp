#include <random>

#include "sri/aggregate.hpp"
#include "support.hpp"

using namespace sri;
using sri::test::make_matrix;
using sri::test::sri_data;

TEST(Aggregate, UnitedKingdomArithmetic) {
  const auto w = default_sri_config().weights;
  EXPECT_NEAR(aggregate_overall(sri_data().jurisdiction("United Kingdom"), w, AggregationMethod::WeightedArithmetic),
              48.00, 1e-12);
  const double eu = aggregate_overall(sri_data().jurisdiction("European Union"), w, AggregationMethod::WeightedArithmetic);
  EXPECT_NEAR(eu, 46.50, 1e-12);
  EXPECT_LE(std::abs(eu - 46.75), 2.0);
}

TEST(Aggregate, ConstantProfileIsFixedPoint) {
  const auto m = make_matrix({{"A", {50, 50, 50, 50, 50, 50}}});
  const auto w = default_sri_config().weights;
  EXPECT_NEAR(aggregate_overall(m.jurisdictions[0], w, AggregationMethod::WeightedArithmetic), 50, 1e-12);
  EXPECT_NEAR(aggregate_overall(m.jurisdictions[0], w, AggregationMethod::WeightedGeometric), 50, 1e-12);
}

TEST(Aggregate, GeometricHandComputed) {
  const auto m = make_matrix({{"A", {10, 20, 30, 40, 50, 60}}});
  const auto w = default_sri_config().weights;
  const double expected = std::pow(10, 0.2) * std::pow(20, 0.15) * std::pow(30, 0.15) * std::pow(40, 0.2) *
                          std::pow(50, 0.15) * std::pow(60, 0.15);
  EXPECT_NEAR(aggregate_overall(m.jurisdictions[0], w, AggregationMethod::WeightedGeometric), expected, 1e-10);
}

TEST(Aggregate, GeometricRejectsZero) {
  const auto m = make_matrix({{"A", {0, 20, 30, 40, 50, 60}}});
  EXPECT_SRI_ERROR(aggregate_overall(m.jurisdictions[0], default_sri_config().weights, AggregationMethod::WeightedGeometric),
                   ErrorKind::GeometricZeroScore);
}

TEST(Aggregate, ReportedRankingMatchesReference) {
  const auto cfg = default_sri_config();
  const auto r = rank_matrix(sri_data(), cfg.weights, AggregationMethod::WeightedArithmetic, cfg.tiers, true);
  ASSERT_EQ(r.size(), 31u);
  EXPECT_EQ(r.front().jurisdiction, "United Kingdom");
  EXPECT_DOUBLE_EQ(r.front().overall, 49.00);
  EXPECT_EQ(r.front().tier, "Partially Prepared");
  EXPECT_EQ(r.back().jurisdiction, "Turkey");
  EXPECT_DOUBLE_EQ(r.back().overall, 14.25);
  EXPECT_EQ(r.back().tier, "Unprepared");
  int partial = 0, minimal = 0, unprepared = 0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    EXPECT_EQ(r[i].rank, static_cast<int>(i) + 1);
    partial += r[i].tier == "Partially Prepared";
    minimal += r[i].tier == "Minimally Prepared";
    unprepared += r[i].tier == "Unprepared";
  }
  EXPECT_EQ(partial, 8);
  EXPECT_EQ(minimal, 21);
  EXPECT_EQ(unprepared, 2);
}

TEST(Aggregate, TiesBrokenByName) {
  const auto m = make_matrix({{"Zeta", {30, 30, 30, 30, 30, 30}}, {"Alpha", {30, 30, 30, 30, 30, 30}}, {"Mid", {10, 10, 10, 10, 10, 10}}});
  const auto cfg = default_sri_config();
  const auto r = rank_matrix(m, cfg.weights, AggregationMethod::WeightedArithmetic, cfg.tiers, false);
  EXPECT_EQ(r[0].jurisdiction, "Alpha");
  EXPECT_EQ(r[1].jurisdiction, "Zeta");
  EXPECT_EQ(display_ranks(m, {30, 30, 10}), (std::vector<int>{2, 1, 3}));
}

TEST(Aggregate, MissingReportedOverall) {
  const auto m = make_matrix({{"A", {1, 2, 3, 4, 5, 6}}});
  EXPECT_SRI_ERROR(overall_scores(m, default_sri_config().weights, AggregationMethod::WeightedArithmetic, true),
                   ErrorKind::MissingReportedOverall);
}

TEST(Aggregate, MonotoneAndAmGmOnRandomProfiles) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(1, 100);
  const auto w = default_sri_config().weights;
  for (int t = 0; t < 500; ++t) {
    auto m = make_matrix({{"A", {u(rng), u(rng), u(rng), u(rng), u(rng), u(rng)}}});
    auto& rec = m.jurisdictions[0];
    const double am = aggregate_overall(rec, w, AggregationMethod::WeightedArithmetic);
    const double gm = aggregate_overall(rec, w, AggregationMethod::WeightedGeometric);
    EXPECT_LE(gm, am + 1e-9);
    rec.category_scores["public_discourse"] = std::min(100.0, rec.category_scores["public_discourse"] + 5);
    EXPECT_GE(aggregate_overall(rec, w, AggregationMethod::WeightedArithmetic), am);
    EXPECT_GE(aggregate_overall(rec, w, AggregationMethod::WeightedGeometric), gm);
  }
}

TEST(Aggregate, MethodNames) {
  EXPECT_EQ(parse_aggregation_method("geometric"), AggregationMethod::WeightedGeometric);
  EXPECT_EQ(to_string(AggregationMethod::WeightedArithmetic), "arithmetic");
  EXPECT_SRI_ERROR(parse_aggregation_method("harmonic"), ErrorKind::ParseError);
  EXPECT_EQ(tier_of(16.30, default_sri_config().tiers), "Unprepared");
}
