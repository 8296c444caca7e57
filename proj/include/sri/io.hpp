#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "sri/aggregate.hpp"
#include "sri/core_model.hpp"
#include "sri/robustness.hpp"

namespace sri {

enum class DataFormat { Csv, Json };

DataFormat parse_data_format(std::string_view text);
/// `.json` maps to Json, everything else to Csv.
DataFormat format_for_path(const std::filesystem::path& path);

struct AnalysisOptions {
  AggregationMethod aggregation = AggregationMethod::WeightedArithmetic;
  std::size_t runs_threshold = 3;
  double perturbation_delta = 0.05;
  /// Empty means "the two most heavily weighted categories".
  std::vector<std::string> perturbation_targets;
  RedistributionPolicy redistribution = RedistributionPolicy::EqualSpread;
};

struct AnalysisConfig {
  WeightScheme weights;
  TierScheme tiers;
  AnalysisOptions options;
};

/// Reads and parses without invariant checks; ParseError on malformed input
/// and ValidationError when a configured category column is missing.
ScoreMatrix parse_matrix(std::string_view text, DataFormat format, const WeightScheme& weights,
                         std::string_view source = "<input>");
ScoreMatrix read_matrix(const std::filesystem::path& path, DataFormat format, const WeightScheme& weights);
/// read_matrix followed by validate_matrix; violations raise ValidationError.
ScoreMatrix load_matrix(const std::filesystem::path& path, DataFormat format, const WeightScheme& weights);
ScoreMatrix load_matrix(const std::filesystem::path& path);

std::string serialize_matrix(const ScoreMatrix& matrix, DataFormat format);

std::vector<MultiRunRecord> parse_runs(std::string_view text, std::string_view source = "<input>");
std::vector<MultiRunRecord> load_runs(const std::filesystem::path& path);
std::string serialize_runs(const std::vector<MultiRunRecord>& runs);

/// Absent keys fall back to the default configuration. An empty document is
/// treated as `{}`.
AnalysisConfig parse_config(std::string_view text, std::string_view source = "<config>");
AnalysisConfig load_config(const std::filesystem::path& path);
AnalysisConfig default_analysis_config();

/// Up to two decimals, trailing zeros trimmed ("46.75", "42.3", "55").
std::string format_score(double value);

/// Location of bundled data: $SRI_DATA_DIR when set, otherwise the build-time directory.
std::filesystem::path data_directory();
std::filesystem::path bundled_dataset_path();
/// Returns `path` when it exists; otherwise, for relative paths, the same
/// name under data_directory() if that exists. Throws FileNotFound.
std::filesystem::path resolve_data_path(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace sri
