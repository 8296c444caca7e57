#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sri {

/// Every failure the library reports maps onto one of these kinds. The CLI
/// prints them verbatim as the `ERROR:<kind>:` prefix.
enum class ErrorKind {
  PreconditionViolation,
  GeometricZeroScore,
  MissingReportedOverall,
  DegenerateInput,
  ConstantVector,
  SampleSizeOutOfRange,
  AllZeroDifferences,
  DegenerateVariance,
  EmptyGroup,
  TooFewObservations,
  InvalidDf,
  ConstantColumn,
  NegativeWeightProduced,
  UnknownCategory,
  UnknownJurisdiction,
  SingleGroup,
  OverlappingSets,
  ParseError,
  ValidationError,
  InvalidWeights,
  InvalidTiers,
  EmptyData,
  FileNotFound,
  IoError,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline constexpr double kWeightSumTolerance = 1e-9;
inline constexpr double kMinScore = 0.0;
inline constexpr double kMaxScore = 100.0;

struct CategorySpec {
  std::string id;
  std::string display_name;
  double weight = 0.0;

  friend bool operator==(const CategorySpec&, const CategorySpec&) = default;
};

struct WeightScheme {
  std::string name;
  std::vector<std::pair<std::string, double>> weights;

  /// Throws UnknownCategory when `id` is not part of the scheme.
  double weight_of(std::string_view id) const;
  bool contains(std::string_view id) const noexcept;
  double sum() const noexcept;

  friend bool operator==(const WeightScheme&, const WeightScheme&) = default;
};

struct JurisdictionRecord {
  std::string name;
  std::map<std::string, double> category_scores;
  std::optional<double> reported_overall;
  // Open-ended tag dimensions (region, governance, income, ...). An empty
  // label is treated the same as an absent tag.
  std::map<std::string, std::string> tags;

  double score(std::string_view category_id) const;
  std::optional<std::string> tag(std::string_view dimension) const;

  friend bool operator==(const JurisdictionRecord&, const JurisdictionRecord&) = default;
};

struct ScoreMatrix {
  std::vector<CategorySpec> categories;
  std::vector<JurisdictionRecord> jurisdictions;

  std::size_t size() const noexcept { return jurisdictions.size(); }
  std::vector<std::string> category_ids() const;
  const CategorySpec& category(std::string_view id) const;
  const JurisdictionRecord& jurisdiction(std::string_view name) const;
  /// Scores of one category, in jurisdiction order.
  std::vector<double> column(std::string_view category_id) const;
  /// Weights carried by the category specs, as a scheme.
  WeightScheme weight_scheme(std::string name = "baseline") const;

  friend bool operator==(const ScoreMatrix&, const ScoreMatrix&) = default;
};

/// Band [lo, hi); the last band of a scheme is closed at its upper bound.
struct TierBand {
  std::string name;
  double lo = 0.0;
  double hi = 0.0;

  friend bool operator==(const TierBand&, const TierBand&) = default;
};

struct TierScheme {
  std::vector<TierBand> bands;

  std::size_t index_of(double score) const;
  const std::string& name_of(double score) const { return bands.at(index_of(score)).name; }

  friend bool operator==(const TierScheme&, const TierScheme&) = default;
};

struct MultiRunRecord {
  std::string jurisdiction;
  std::vector<std::pair<std::string, double>> run_scores;

  friend bool operator==(const MultiRunRecord&, const MultiRunRecord&) = default;
};

struct Violation {
  enum class Kind { Range, MissingScore, DuplicateJurisdiction, DuplicateCategory, Shape, Weight };

  Kind kind;
  std::string jurisdiction;
  std::string category;
  std::string message;
};

std::string_view to_string(Violation::Kind kind) noexcept;

/// Checks every ScoreMatrix invariant. Violations are returned, never thrown.
std::vector<Violation> validate_matrix(const ScoreMatrix& matrix);

/// Empty when the scheme is a valid weighting over `category_ids`.
std::vector<std::string> validate_weights(const WeightScheme& weights,
                                          const std::vector<std::string>& category_ids);
/// Empty when bands are ascending, contiguous and cover [0, 100].
std::vector<std::string> validate_tiers(const TierScheme& tiers);

struct SriConfig {
  WeightScheme weights;
  TierScheme tiers;
};

std::vector<CategorySpec> default_sri_categories();
SriConfig default_sri_config();

/// Display name for a known category id, otherwise the id title-cased.
std::string display_name_for(std::string_view category_id);

}  // namespace sri
