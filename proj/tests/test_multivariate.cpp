#include <random>

#include <Eigen/Dense>

#include "sri/multivariate.hpp"
#include "support.hpp"

using namespace sri;
using sri::test::make_matrix;
using sri::test::sri_data;

TEST(Jacobi, AgreesWithEigen) {
  std::mt19937 rng(5);
  std::normal_distribution<double> g;
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 2 + static_cast<std::size_t>(t % 7);
    Eigen::MatrixXd a = Eigen::MatrixXd::NullaryExpr(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n), [&] { return g(rng); });
    a = (a + a.transpose()).eval();
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    const auto ours = jacobi_eigen(m);
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ref(a);
    for (std::size_t k = 0; k < n; ++k) {
      EXPECT_NEAR(ours.values[k], ref.eigenvalues()(static_cast<Eigen::Index>(n - 1 - k)), 1e-9);
    }
    const auto v = ours.vectors;
    Matrix lambda(n, n);
    for (std::size_t k = 0; k < n; ++k) lambda(k, k) = ours.values[k];
    const auto back = v * lambda * v.transposed();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) EXPECT_NEAR(back(i, j), m(i, j), 1e-9);
  }
}

TEST(Pca, DatasetStandardized) {
  const auto r = pca(sri_data(), true);
  ASSERT_EQ(r.component_count, 6u);
  const std::vector<double> expected = {0.70725, 0.10436, 0.0941, 0.0523, 0.0261, 0.0159};
  for (std::size_t k = 0; k < 6; ++k) EXPECT_NEAR(r.explained_variance_ratio[k], expected[k], 1e-4);
  double sum = 0;
  for (std::size_t k = 0; k < 6; ++k) {
    sum += r.explained_variance_ratio[k];
    if (k) EXPECT_LE(r.explained_variance_ratio[k], r.explained_variance_ratio[k - 1]);
    EXPECT_GT(r.loadings(0, k), 0);
  }
  EXPECT_NEAR(sum, 1.0, 1e-9);
  EXPECT_NEAR(r.loadings(1, 0), -0.539, 1e-3);
  EXPECT_NEAR(r.loadings(1, 1), 0.625, 1e-3);
  EXPECT_NEAR(r.loadings(1, 5), -0.469, 1e-3);
  const auto gram = r.loadings * r.loadings.transposed();
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) EXPECT_NEAR(gram(i, j), i == j ? 1.0 : 0.0, 1e-8);
}

TEST(Pca, UncorrelatedColumnsAreIsotropic) {
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> u(0, 100);
  std::vector<std::pair<std::string, std::vector<double>>> rows;
  for (int i = 0; i < 500; ++i) rows.push_back({"j" + std::to_string(i), {u(rng), u(rng), u(rng), u(rng), u(rng), u(rng)}});
  const auto r = pca(make_matrix(rows));
  for (double ratio : r.explained_variance_ratio) EXPECT_NEAR(ratio, 1.0 / 6, 0.05);
}

TEST(Pca, DuplicatedColumnsGiveRankOne) {
  ScoreMatrix m;
  m.categories = {{"a", "A", 0.5}, {"b", "B", 0.5}};
  for (int i = 0; i < 10; ++i) {
    m.jurisdictions.push_back({"j" + std::to_string(i), {{"a", i * 3.0}, {"b", i * 3.0}}, std::nullopt, {}});
  }
  const auto r = pca(m);
  EXPECT_NEAR(r.explained_variance_ratio[0], 1.0, 1e-9);
  EXPECT_NEAR(r.explained_variance_ratio[1], 0.0, 1e-9);
}

TEST(Pca, Errors) {
  auto m = make_matrix({{"A", {1, 2, 3, 4, 5, 6}}, {"B", {1, 3, 3, 5, 5, 7}}, {"C", {1, 4, 2, 3, 1, 2}}});
  EXPECT_SRI_ERROR(pca(m), ErrorKind::ConstantColumn);
  auto two = make_matrix({{"A", {1, 2, 3, 4, 5, 6}}, {"B", {2, 3, 4, 5, 6, 7}}});
  EXPECT_SRI_ERROR(pca(two), ErrorKind::TooFewObservations);
}

TEST(CorrelationMatrix, DatasetPearson) {
  const auto cm = correlation_matrix(sri_data());
  int below_05 = 0, below_001 = 0;
  for (std::size_t i = 0; i < 6; ++i) {
    EXPECT_DOUBLE_EQ(cm.coefficients(i, i), 1.0);
    for (std::size_t j = 0; j < 6; ++j) EXPECT_DOUBLE_EQ(cm.coefficients(i, j), cm.coefficients(j, i));
    for (std::size_t j = i + 1; j < 6; ++j) {
      below_05 += cm.p_values(i, j) < 0.05;
      below_001 += cm.p_values(i, j) < 0.001;
    }
  }
  EXPECT_EQ(below_05, 15);
  EXPECT_EQ(below_001, 11);
  EXPECT_NEAR(cm.coefficients(1, 4), 0.767, 0.005);
}

TEST(CorrelationMatrix, KendallNotSupported) {
  EXPECT_SRI_ERROR(correlation_matrix(sri_data(), CorrelationKind::KendallTauB), ErrorKind::PreconditionViolation);
}
