#pragma once

namespace sri {

enum class DistributionKind { StandardNormal, StudentT, ChiSquare };

struct Distribution {
  DistributionKind kind = DistributionKind::StandardNormal;
  double df = 0.0;  // ignored for the standard normal

  static Distribution standard_normal() { return {DistributionKind::StandardNormal, 0.0}; }
  static Distribution student_t(double df) { return {DistributionKind::StudentT, df}; }
  static Distribution chi_square(double df) { return {DistributionKind::ChiSquare, df}; }
};

/// P(X <= x). Throws InvalidDf for df < 1 on t and chi-square.
double dist_cdf(const Distribution& dist, double x);
/// P(X > x), computed directly in the upper tail so tiny p-values keep precision.
double dist_sf(const Distribution& dist, double x);

/// Inverse standard normal CDF (Wichura AS241, ~1e-16 relative accuracy).
double normal_quantile(double p);

/// Regularized incomplete beta I_x(a, b).
double regularized_beta(double a, double b, double x);
/// Regularized lower incomplete gamma P(a, x).
double regularized_gamma_p(double a, double x);
/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
double regularized_gamma_q(double a, double x);

}  // namespace sri
