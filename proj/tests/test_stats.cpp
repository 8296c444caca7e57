#include <cmath>
#include <random>

#include "sri/stats.hpp"
#include "sri/distributions.hpp"
#include "support.hpp"

using namespace sri;
using sri::test::reported_overall;
using sri::test::sri_data;

namespace {

double brute_gini(const std::vector<double>& v) {
  double total = 0, sum = 0;
  for (double a : v) {
    sum += a;
    for (double b : v) total += std::abs(a - b);
  }
  const double n = static_cast<double>(v.size());
  return total / (2 * n * n * (sum / n));
}

const std::vector<double> kX = {2, 4, 4, 5, 7, 9, 10, 12};
const std::vector<double> kY = {1, 3, 2, 5, 8, 8, 11, 10};

}  // namespace

TEST(Describe, OverallScores) {
  const auto s = describe(reported_overall(), {MomentEstimator::Population, GiniVariant::Population});
  EXPECT_EQ(s.n, 31u);
  EXPECT_NEAR(s.mean, 33.03, 0.01);
  EXPECT_NEAR(s.sd, 9.12, 0.01);
  EXPECT_DOUBLE_EQ(s.median, 35.25);
  EXPECT_NEAR(*s.gini, 0.154668, 1e-6);
  EXPECT_NEAR(*s.skewness, -0.2650, 5e-4);
  EXPECT_NEAR(*s.excess_kurtosis, -0.8164, 5e-4);
  EXPECT_LE(s.min, s.median);
  EXPECT_LE(s.median, s.max);
  EXPECT_DOUBLE_EQ(s.range, s.max - s.min);
}

TEST(Describe, AdjustedMomentEstimators) {
  EXPECT_NEAR(skewness(reported_overall()), -0.2787, 5e-4);
  EXPECT_NEAR(excess_kurtosis(reported_overall()), -0.7435, 5e-4);
  EXPECT_NEAR(skewness(kX, MomentEstimator::Population), 0.24957769384945674, 1e-12);
  EXPECT_NEAR(skewness(kX, MomentEstimator::SampleAdjusted), 0.3112780739219417, 1e-12);
  EXPECT_NEAR(excess_kurtosis(kX, MomentEstimator::Population), -1.230856363591943, 1e-12);
  EXPECT_NEAR(excess_kurtosis(kX, MomentEstimator::SampleAdjusted), -1.1847983635430803, 1e-12);
}

TEST(Describe, ProfessionalReadinessColumn) {
  const auto s = describe(sri_data().column("professional_readiness"));
  EXPECT_NEAR(s.mean, 16.52, 0.01);
  EXPECT_NEAR(s.sd, 5.44, 0.01);
  EXPECT_EQ(s.min, 5);
  EXPECT_EQ(s.max, 30);
}

TEST(Describe, ConstantVector) {
  const std::vector<double> v = {5, 5, 5, 5};
  const auto s = describe(v);
  EXPECT_EQ(s.sd, 0);
  EXPECT_EQ(*s.gini, 0);
  EXPECT_FALSE(s.skewness.has_value());
  EXPECT_FALSE(s.excess_kurtosis.has_value());
  EXPECT_SRI_ERROR(skewness(v), ErrorKind::DegenerateInput);
  EXPECT_SRI_ERROR(describe(std::vector<double>{1}), ErrorKind::DegenerateInput);
}

TEST(Describe, QuantileLinearInterpolation) {
  EXPECT_DOUBLE_EQ(quantile(kX, 0.25), 4.0);
  EXPECT_DOUBLE_EQ(quantile(kX, 0.75), 9.25);
  EXPECT_DOUBLE_EQ(median(kX), 6.0);
}

TEST(Gini, MatchesBruteForce) {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(0, 100);
  for (int t = 0; t < 50; ++t) {
    std::vector<double> v(3 + t % 20);
    for (auto& x : v) x = u(rng);
    EXPECT_NEAR(gini(v), brute_gini(v), 1e-12);
    const double n = static_cast<double>(v.size());
    EXPECT_NEAR(gini(v, GiniVariant::SmallSampleCorrected), brute_gini(v) * n / (n - 1), 1e-12);
  }
  EXPECT_NEAR(gini(reported_overall()), 0.155, 0.005);
}

TEST(Ranks, MidRanks) {
  EXPECT_EQ(mid_ranks(std::vector<double>{10, 20, 20, 30}), (std::vector<double>{1, 2.5, 2.5, 4}));
  EXPECT_EQ(mid_ranks(std::vector<double>{1, 2, 3}), (std::vector<double>{1, 2, 3}));
  EXPECT_EQ(mid_ranks(std::vector<double>{5, 5, 5}), (std::vector<double>{2, 2, 2}));
}

TEST(Correlation, ReferenceValues) {
  const auto p = pearson(kX, kY);
  EXPECT_NEAR(p.coefficient, 0.9499548973527485, 1e-12);
  EXPECT_NEAR(p.p_value, 0.0003017030637302389, 1e-9);
  const auto s = spearman(kX, kY);
  EXPECT_NEAR(s.coefficient, 0.9638554216867469, 1e-12);
  EXPECT_NEAR(s.p_value, 0.00011487390992121942, 1e-9);
  const auto k = kendall_tau_b(kX, kY);
  EXPECT_NEAR(k.coefficient, 0.8888888888888888, 1e-12);
  EXPECT_NEAR(k.p_value, 0.002570655260875291, 1e-9);
}

TEST(Correlation, SmallCases) {
  const std::vector<double> a = {1, 2, 3, 4, 5};
  EXPECT_NEAR(pearson(a, a).coefficient, 1.0, 1e-15);
  EXPECT_NEAR(spearman(a, std::vector<double>{1, 2, 3, 5, 4}).coefficient, 0.9, 1e-12);
  EXPECT_NEAR(spearman(a, std::vector<double>{5, 4, 3, 2, 1}).coefficient, -1.0, 1e-12);
  EXPECT_NEAR(kendall_tau_b(std::vector<double>{1, 2, 3}, std::vector<double>{1, 3, 2}).coefficient, 1.0 / 3, 1e-12);
  EXPECT_NEAR(kendall_tau_b(a, a).coefficient, 1.0, 1e-12);
  EXPECT_SRI_ERROR(pearson(a, std::vector<double>{2, 2, 2, 2, 2}), ErrorKind::ConstantVector);
}

TEST(Correlation, DatasetPairs) {
  const auto& m = sri_data();
  EXPECT_NEAR(pearson(m.column("research_environment"), m.column("public_discourse")).coefficient, 0.876, 0.005);
  EXPECT_NEAR(pearson(m.column("institutional_engagement"), m.column("adaptive_capacity")).coefficient, 0.423, 0.005);
}

TEST(Correlation, SpearmanIsPearsonOnMidRanks) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> d(0, 6);
  for (int t = 0; t < 100; ++t) {
    std::vector<double> x(15), y(15);
    for (auto& v : x) v = d(rng);
    for (auto& v : y) v = d(rng);
    EXPECT_NEAR(spearman(x, y).coefficient, pearson(mid_ranks(x), mid_ranks(y)).coefficient, 1e-12);
  }
}

TEST(ShapiroWilk, ReferenceValues) {
  const auto sw = shapiro_wilk(reported_overall());
  EXPECT_NEAR(sw.w_statistic, 0.969733, 1e-5);
  EXPECT_NEAR(sw.p_value, 0.511753, 1e-4);
  const auto small = shapiro_wilk(kX);
  EXPECT_NEAR(small.w_statistic, 0.9522378057354886, 1e-5);
  EXPECT_NEAR(small.p_value, 0.7337596429624511, 1e-3);
  const auto three = shapiro_wilk(std::vector<double>{1, 2, 4});
  EXPECT_NEAR(three.w_statistic, 0.9642857142857142, 1e-9);
  EXPECT_NEAR(three.p_value, 0.6368868450289689, 1e-6);
}

TEST(ShapiroWilk, NormalQuantileSample) {
  std::vector<double> v;
  for (int i = 1; i <= 20; ++i) v.push_back(normal_quantile((i - 0.375) / 20.25));
  const auto sw = shapiro_wilk(v);
  EXPECT_NEAR(sw.w_statistic, 0.997180, 1e-5);
  EXPECT_GE(sw.w_statistic, 0.98);
}

TEST(ShapiroWilk, SkewedShapeLowersW) {
  std::vector<double> v;
  for (int i = 1; i <= 31; ++i) v.push_back(i <= 15 ? 1.0 : static_cast<double>(i));
  EXPECT_LT(shapiro_wilk(v).w_statistic, shapiro_wilk(reported_overall()).w_statistic - 0.05);
}

TEST(ShapiroWilk, Errors) {
  EXPECT_SRI_ERROR(shapiro_wilk(std::vector<double>{1, 2}), ErrorKind::SampleSizeOutOfRange);
  EXPECT_SRI_ERROR(shapiro_wilk(std::vector<double>{3, 3, 3, 3}), ErrorKind::ConstantVector);
}

TEST(CategorySummaries, SortedByMean) {
  const auto c = describe_categories(sri_data());
  ASSERT_EQ(c.size(), 6u);
  EXPECT_EQ(c.front().id, "research_environment");
  EXPECT_EQ(c.back().id, "professional_readiness");
  EXPECT_NEAR(c.front().summary.iqr, 25.0, 1e-12);
  EXPECT_NEAR(*c[1].summary.cv, 0.27, 0.01);
}
