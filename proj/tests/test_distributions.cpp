#include <cmath>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "sri/distributions.hpp"
#include "support.hpp"

using namespace sri;

TEST(Distributions, ClosedForms) {
  EXPECT_DOUBLE_EQ(dist_cdf(Distribution::standard_normal(), 0.0), 0.5);
  EXPECT_NEAR(dist_cdf(Distribution::student_t(1), 1.0), 0.75, 1e-14);
  EXPECT_NEAR(dist_cdf(Distribution::chi_square(2), 2 * std::log(2.0)), 0.5, 1e-14);
}

TEST(Distributions, AgreeWithBoostNormal) {
  const boost::math::normal n;
  for (double x = -8; x <= 8; x += 0.25) {
    EXPECT_NEAR(dist_cdf(Distribution::standard_normal(), x), boost::math::cdf(n, x), 1e-15);
    const double sf = boost::math::cdf(boost::math::complement(n, x));
    EXPECT_NEAR(dist_sf(Distribution::standard_normal(), x), sf, 1e-14 * std::max(1.0, sf));
  }
}

TEST(Distributions, AgreeWithBoostStudentT) {
  for (double df : {1.0, 2.0, 4.0, 7.0, 30.0, 120.0}) {
    const boost::math::students_t t(df);
    for (double x = -12; x <= 12; x += 0.5) {
      EXPECT_NEAR(dist_cdf(Distribution::student_t(df), x), boost::math::cdf(t, x), 1e-12) << df << " " << x;
      const double sf = boost::math::cdf(boost::math::complement(t, x));
      EXPECT_NEAR(dist_sf(Distribution::student_t(df), x), sf, 1e-10 * std::max(1e-3, sf)) << df << " " << x;
    }
  }
  EXPECT_NEAR(dist_cdf(Distribution::student_t(7), 2.5), 0.9795038907071236, 1e-12);
  EXPECT_NEAR(dist_sf(Distribution::student_t(7), 2.5), 0.020496109292876437, 1e-12);
}

TEST(Distributions, AgreeWithBoostChiSquare) {
  for (double df : {1.0, 2.0, 3.0, 4.0, 10.0, 29.0}) {
    const boost::math::chi_squared c(df);
    for (double x = 0.0; x <= 60; x += 0.5) {
      EXPECT_NEAR(dist_cdf(Distribution::chi_square(df), x), boost::math::cdf(c, x), 1e-12) << df << " " << x;
      const double sf = boost::math::cdf(boost::math::complement(c, x));
      EXPECT_NEAR(dist_sf(Distribution::chi_square(df), x), sf, 1e-10 * std::max(1e-3, sf)) << df << " " << x;
    }
  }
  EXPECT_NEAR(dist_cdf(Distribution::chi_square(4), 5.0), 0.7127025048163542, 1e-12);
  EXPECT_NEAR(dist_sf(Distribution::chi_square(3), 12.0), 0.007383160505359769, 1e-12);
}

TEST(Distributions, NormalQuantileAgainstBoost) {
  const boost::math::normal n;
  for (double p : {1e-10, 0.001, 0.025, 0.2, 0.5, 0.8, 0.975, 0.99, 1 - 1e-10}) {
    EXPECT_NEAR(normal_quantile(p), boost::math::quantile(n, p), 1e-9 * std::max(1.0, std::abs(boost::math::quantile(n, p))));
  }
}

TEST(Distributions, SpecialFunctionsAgainstBoost) {
  for (double a : {0.5, 1.0, 2.5, 10.0}) {
    for (double b : {0.5, 1.0, 3.0, 15.0}) {
      for (double x : {0.01, 0.3, 0.5, 0.9, 0.999}) {
        EXPECT_NEAR(regularized_beta(a, b, x), boost::math::ibeta(a, b, x), 1e-12);
      }
    }
    for (double x : {0.1, 1.0, 5.0, 30.0}) {
      EXPECT_NEAR(regularized_gamma_p(a, x), boost::math::gamma_p(a, x), 1e-12);
      EXPECT_NEAR(regularized_gamma_q(a, x), boost::math::gamma_q(a, x), 1e-12);
    }
  }
}

TEST(Distributions, Monotone) {
  for (const auto d : {Distribution::standard_normal(), Distribution::student_t(3), Distribution::chi_square(5)}) {
    double prev = 0;
    for (double x = -30; x <= 80; x += 0.1) {
      const double c = dist_cdf(d, x);
      EXPECT_GE(c, prev);
      prev = c;
    }
  }
}

TEST(Distributions, InvalidDf) {
  EXPECT_SRI_ERROR(dist_cdf(Distribution::student_t(0), 1.0), ErrorKind::InvalidDf);
  EXPECT_SRI_ERROR(dist_sf(Distribution::chi_square(0.5), 1.0), ErrorKind::InvalidDf);
}
