#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sri/core_model.hpp"

namespace sri {

enum class MomentEstimator {
  SampleAdjusted,  // G1 / G2, the bias-adjusted estimators
  Population,      // g1 / g2, plain standardized central moments
};

enum class GiniVariant {
  Population,             // sum|xi - xj| / (2 n^2 mean)
  SmallSampleCorrected,   // population value times n / (n - 1)
};

struct DescribeOptions {
  MomentEstimator moments = MomentEstimator::SampleAdjusted;
  GiniVariant gini = GiniVariant::Population;
};

/// Fields that are undefined for the given data (skewness of a constant
/// vector, gini of data with a negative value, ...) are left empty rather
/// than failing the whole summary.
struct DescriptiveSummary {
  std::size_t n = 0;
  double mean = 0.0;
  double median = 0.0;
  double sd = 0.0;
  double min = 0.0;
  double max = 0.0;
  double range = 0.0;
  double iqr = 0.0;
  std::optional<double> cv;
  std::optional<double> skewness;
  std::optional<double> excess_kurtosis;
  std::optional<double> gini;
};

enum class CorrelationKind { Pearson, SpearmanRho, KendallTauB };

std::string_view to_string(CorrelationKind kind) noexcept;

struct CorrelationResult {
  double coefficient = 0.0;
  CorrelationKind kind = CorrelationKind::Pearson;
  std::size_t n = 0;
  double p_value = 1.0;
};

struct NormalityResult {
  double w_statistic = 0.0;
  double p_value = 0.0;
  std::size_t n = 0;
};

/// Throws DegenerateInput for n < 2.
DescriptiveSummary describe(std::span<const double> values, const DescribeOptions& options = {});

double mean(std::span<const double> values);
/// Sample standard deviation (n - 1 divisor).
double sample_sd(std::span<const double> values);
/// Linear interpolation between order statistics at position (n - 1) * p.
double quantile(std::span<const double> values, double p);
double median(std::span<const double> values);

/// Adjusted Fisher-Pearson skewness or the population moment; throws
/// DegenerateInput when undefined (zero variance, too few values).
double skewness(std::span<const double> values, MomentEstimator estimator = MomentEstimator::SampleAdjusted);
double excess_kurtosis(std::span<const double> values,
                       MomentEstimator estimator = MomentEstimator::SampleAdjusted);
/// Requires non-negative data with positive mean.
double gini(std::span<const double> values, GiniVariant variant = GiniVariant::Population);

/// Ascending ranks 1..n; ties share the mean of their positions.
std::vector<double> mid_ranks(std::span<const double> values);

CorrelationResult pearson(std::span<const double> x, std::span<const double> y);
CorrelationResult spearman(std::span<const double> x, std::span<const double> y);
/// Tau-b with tie correction; p-value from the normal approximation using
/// the tie-corrected variance of the concordance score.
CorrelationResult kendall_tau_b(std::span<const double> x, std::span<const double> y);

/// Royston's AS R94 approximation; 3 <= n <= 5000.
NormalityResult shapiro_wilk(std::span<const double> values);

struct CategorySummary {
  std::string id;
  std::string display_name;
  DescriptiveSummary summary;
};

/// One summary per category column, ordered by descending mean.
std::vector<CategorySummary> describe_categories(const ScoreMatrix& matrix,
                                                 const DescribeOptions& options = {});

}  // namespace sri
