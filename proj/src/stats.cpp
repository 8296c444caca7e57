#include "sri/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "sri/distributions.hpp"

namespace sri {

std::string_view to_string(CorrelationKind kind) noexcept {
  switch (kind) {
    case CorrelationKind::Pearson: return "pearson";
    case CorrelationKind::SpearmanRho: return "spearman_rho";
    case CorrelationKind::KendallTauB: return "kendall_tau_b";
  }
  return "unknown";
}

namespace {

void require_size(std::span<const double> values, std::size_t at_least, std::string_view what) {
  if (values.size() < at_least) {
    throw Error(ErrorKind::DegenerateInput,
                fmt::format("{} needs at least {} values, got {}", what, at_least, values.size()));
  }
}

void require_pair(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw Error(ErrorKind::PreconditionViolation,
                fmt::format("vectors differ in length ({} vs {})", x.size(), y.size()));
  }
  if (x.size() < 3) {
    throw Error(ErrorKind::DegenerateInput,
                fmt::format("correlation needs n >= 3, got {}", x.size()));
  }
}

struct CentralMoments {
  double m2 = 0.0;
  double m3 = 0.0;
  double m4 = 0.0;
};

CentralMoments central_moments(std::span<const double> values) {
  const double mu = mean(values);
  CentralMoments m;
  for (double v : values) {
    const double d = v - mu;
    const double d2 = d * d;
    m.m2 += d2;
    m.m3 += d2 * d;
    m.m4 += d2 * d2;
  }
  const double n = static_cast<double>(values.size());
  m.m2 /= n;
  m.m3 /= n;
  m.m4 /= n;
  return m;
}

bool is_constant(std::span<const double> values) {
  return std::adjacent_find(values.begin(), values.end(), std::not_equal_to<>()) == values.end();
}

double two_sided_t_p(double r, std::size_t n) {
  if (std::abs(r) >= 1.0) return 0.0;
  const double df = static_cast<double>(n) - 2.0;
  const double t = r * std::sqrt(df / ((1.0 - r) * (1.0 + r)));
  return std::min(1.0, 2.0 * dist_sf(Distribution::student_t(df), std::abs(t)));
}

double poly(const double* coefficients, int count, double x) {
  double result = 0.0;
  for (int i = count - 1; i >= 0; --i) result = result * x + coefficients[i];
  return result;
}

}  // namespace

double mean(std::span<const double> values) {
  require_size(values, 1, "mean");
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double sample_sd(std::span<const double> values) {
  require_size(values, 2, "sample standard deviation");
  const double mu = mean(values);
  double ss = 0.0;
  for (double v : values) ss += (v - mu) * (v - mu);
  return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

double quantile(std::span<const double> values, double p) {
  require_size(values, 1, "quantile");
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorKind::PreconditionViolation, fmt::format("quantile level {} outside [0,1]", p));
  }
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double pos = static_cast<double>(sorted.size() - 1) * p;
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

double median(std::span<const double> values) { return quantile(values, 0.5); }

double skewness(std::span<const double> values, MomentEstimator estimator) {
  require_size(values, 3, "skewness");
  const auto m = central_moments(values);
  if (m.m2 <= 0.0) throw Error(ErrorKind::DegenerateInput, "skewness undefined for zero variance");
  const double g1 = m.m3 / std::pow(m.m2, 1.5);
  if (estimator == MomentEstimator::Population) return g1;
  const double n = static_cast<double>(values.size());
  return g1 * std::sqrt(n * (n - 1.0)) / (n - 2.0);
}

double excess_kurtosis(std::span<const double> values, MomentEstimator estimator) {
  require_size(values, 4, "kurtosis");
  const auto m = central_moments(values);
  if (m.m2 <= 0.0) throw Error(ErrorKind::DegenerateInput, "kurtosis undefined for zero variance");
  const double g2 = m.m4 / (m.m2 * m.m2) - 3.0;
  if (estimator == MomentEstimator::Population) return g2;
  const double n = static_cast<double>(values.size());
  return ((n + 1.0) * g2 + 6.0) * (n - 1.0) / ((n - 2.0) * (n - 3.0));
}

double gini(std::span<const double> values, GiniVariant variant) {
  require_size(values, 2, "gini");
  if (std::any_of(values.begin(), values.end(), [](double v) { return v < 0.0; })) {
    throw Error(ErrorKind::DegenerateInput, "gini requires non-negative values");
  }
  const double mu = mean(values);
  if (mu <= 0.0) throw Error(ErrorKind::DegenerateInput, "gini undefined for zero mean");

  // sum_{i,j} |xi - xj| = 2 * sum_k (2k - n + 1) x_(k) over sorted values.
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double weighted = 0.0;
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    weighted += (2.0 * static_cast<double>(k) - n + 1.0) * sorted[k];
  }
  const double g = (2.0 * weighted) / (2.0 * n * n * mu);
  return variant == GiniVariant::Population ? g : g * n / (n - 1.0);
}

DescriptiveSummary describe(std::span<const double> values, const DescribeOptions& options) {
  require_size(values, 2, "describe");
  DescriptiveSummary s;
  s.n = values.size();
  s.mean = mean(values);
  s.median = median(values);
  s.sd = sample_sd(values);
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  s.min = *lo;
  s.max = *hi;
  s.range = s.max - s.min;
  s.iqr = quantile(values, 0.75) - quantile(values, 0.25);
  if (s.mean != 0.0) s.cv = s.sd / s.mean;

  auto optional_of = [](auto&& fn) -> std::optional<double> {
    try {
      return fn();
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::DegenerateInput) throw;
      return std::nullopt;
    }
  };
  s.skewness = optional_of([&] { return skewness(values, options.moments); });
  s.excess_kurtosis = optional_of([&] { return excess_kurtosis(values, options.moments); });
  s.gini = optional_of([&] { return gini(values, options.gini); });
  return s;
}

std::vector<double> mid_ranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

  std::vector<double> ranks(values.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    // positions i..j (0-based) share rank mean((i+1)..(j+1))
    const double shared = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = shared;
    i = j + 1;
  }
  return ranks;
}

CorrelationResult pearson(std::span<const double> x, std::span<const double> y) {
  require_pair(x, y);
  if (is_constant(x) || is_constant(y)) {
    throw Error(ErrorKind::ConstantVector, "correlation undefined for a constant vector");
  }
  const double mx = mean(x);
  const double my = mean(y);
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  const double r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  return {r, CorrelationKind::Pearson, x.size(), two_sided_t_p(r, x.size())};
}

CorrelationResult spearman(std::span<const double> x, std::span<const double> y) {
  require_pair(x, y);
  const auto rx = mid_ranks(x);
  const auto ry = mid_ranks(y);
  auto result = pearson(rx, ry);
  result.kind = CorrelationKind::SpearmanRho;
  return result;
}

CorrelationResult kendall_tau_b(std::span<const double> x, std::span<const double> y) {
  require_pair(x, y);
  if (is_constant(x) || is_constant(y)) {
    throw Error(ErrorKind::ConstantVector, "correlation undefined for a constant vector");
  }
  const std::size_t n = x.size();
  double concordant = 0.0;
  double discordant = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double sx = x[i] - x[j];
      const double sy = y[i] - y[j];
      const double prod = sx * sy;
      if (prod > 0) concordant += 1.0;
      else if (prod < 0) discordant += 1.0;
    }
  }

  // Tie-group sizes for the corrections.
  auto tie_sums = [](std::span<const double> v) {
    std::vector<double> sorted(v.begin(), v.end());
    std::sort(sorted.begin(), sorted.end());
    struct Sums { double pairs = 0, v1 = 0, v2 = 0, v3 = 0; } s;
    std::size_t i = 0;
    while (i < sorted.size()) {
      std::size_t j = i;
      while (j + 1 < sorted.size() && sorted[j + 1] == sorted[i]) ++j;
      const double t = static_cast<double>(j - i + 1);
      s.pairs += t * (t - 1.0) / 2.0;
      s.v1 += t * (t - 1.0) * (2.0 * t + 5.0);
      s.v2 += t * (t - 1.0);
      s.v3 += t * (t - 1.0) * (t - 2.0);
      i = j + 1;
    }
    return s;
  };
  const auto tx = tie_sums(x);
  const auto ty = tie_sums(y);

  const double nd = static_cast<double>(n);
  const double n0 = nd * (nd - 1.0) / 2.0;
  const double tau =
      std::clamp((concordant - discordant) / std::sqrt((n0 - tx.pairs) * (n0 - ty.pairs)), -1.0, 1.0);

  const double var_s = (nd * (nd - 1.0) * (2.0 * nd + 5.0) - tx.v1 - ty.v1) / 18.0 +
                       tx.v2 * ty.v2 / (2.0 * nd * (nd - 1.0)) +
                       tx.v3 * ty.v3 / (9.0 * nd * (nd - 1.0) * (nd - 2.0));
  const double z = (concordant - discordant) / std::sqrt(var_s);
  const double p = std::min(1.0, 2.0 * dist_sf(Distribution::standard_normal(), std::abs(z)));
  return {tau, CorrelationKind::KendallTauB, n, p};
}

NormalityResult shapiro_wilk(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n < 3 || n > 5000) {
    throw Error(ErrorKind::SampleSizeOutOfRange,
                fmt::format("Shapiro-Wilk needs 3 <= n <= 5000, got {}", n));
  }
  std::vector<double> x(values.begin(), values.end());
  std::sort(x.begin(), x.end());
  if (x.back() - x.front() <= 0.0) {
    throw Error(ErrorKind::ConstantVector, "Shapiro-Wilk undefined for a constant sample");
  }

  static constexpr double c1[] = {0.0, 0.221157, -0.147981, -2.07119, 4.434685, -2.706056};
  static constexpr double c2[] = {0.0, 0.042981, -0.293762, -1.752461, 5.682633, -3.582633};
  static constexpr double c3[] = {0.544, -0.39978, 0.025054, -6.714e-4};
  static constexpr double c4[] = {1.3822, -0.77857, 0.062767, -0.0020322};
  static constexpr double c5[] = {-1.5861, -0.31082, -0.083751, 0.0038915};
  static constexpr double c6[] = {-0.4803, -0.082676, 0.0030302};
  static constexpr double g[] = {-2.273, 0.459};

  const double an = static_cast<double>(n);
  const std::size_t half = n / 2;

  // Half-vector of coefficients for the upper order statistics; the lower
  // half mirrors them with opposite sign.
  std::vector<double> a(half);
  if (n == 3) {
    a[0] = std::sqrt(0.5);
  } else {
    std::vector<double> m(half);
    double summ2 = 0.0;
    for (std::size_t i = 0; i < half; ++i) {
      m[i] = normal_quantile((static_cast<double>(i + 1) - 0.375) / (an + 0.25));
      summ2 += m[i] * m[i];
    }
    summ2 *= 2.0;
    const double ssumm2 = std::sqrt(summ2);
    const double rsn = 1.0 / std::sqrt(an);
    const double a1 = poly(c1, 6, rsn) - m[0] / ssumm2;

    std::size_t first_scaled;
    double fac;
    if (n > 5) {
      first_scaled = 2;
      const double a2 = -m[1] / ssumm2 + poly(c2, 6, rsn);
      fac = std::sqrt((summ2 - 2.0 * m[0] * m[0] - 2.0 * m[1] * m[1]) /
                      (1.0 - 2.0 * a1 * a1 - 2.0 * a2 * a2));
      a[1] = a2;
    } else {
      first_scaled = 1;
      fac = std::sqrt((summ2 - 2.0 * m[0] * m[0]) / (1.0 - 2.0 * a1 * a1));
    }
    a[0] = a1;
    for (std::size_t i = first_scaled; i < half; ++i) a[i] = -m[i] / fac;
  }

  const double mu = mean(x);
  double ssq = 0.0;
  for (double v : x) ssq += (v - mu) * (v - mu);
  double numerator = 0.0;
  for (std::size_t i = 0; i < half; ++i) numerator += a[i] * (x[n - 1 - i] - x[i]);
  const double w = std::min(1.0, numerator * numerator / ssq);

  NormalityResult result{w, 1.0, n};
  if (n == 3) {
    constexpr double six_over_pi = 1.90985931710274;
    constexpr double pi_over_three = 1.04719755119660;
    result.p_value = std::clamp(six_over_pi * (std::asin(std::sqrt(w)) - pi_over_three), 0.0, 1.0);
    return result;
  }

  double y = std::log1p(-w);
  double m_param;
  double s_param;
  if (n <= 11) {
    const double gamma = poly(g, 2, an);
    if (y >= gamma) {
      result.p_value = 1e-99;
      return result;
    }
    y = -std::log(gamma - y);
    m_param = poly(c3, 4, an);
    s_param = std::exp(poly(c4, 4, an));
  } else {
    const double log_n = std::log(an);
    m_param = poly(c5, 4, log_n);
    s_param = std::exp(poly(c6, 3, log_n));
  }
  result.p_value = dist_sf(Distribution::standard_normal(), (y - m_param) / s_param);
  return result;
}

std::vector<CategorySummary> describe_categories(const ScoreMatrix& matrix,
                                                 const DescribeOptions& options) {
  std::vector<CategorySummary> out;
  for (const auto& c : matrix.categories) {
    const auto column = matrix.column(c.id);
    out.push_back({c.id, c.display_name, describe(column, options)});
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.summary.mean > b.summary.mean;
  });
  return out;
}

}  // namespace sri
