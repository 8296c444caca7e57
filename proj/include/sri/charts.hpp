#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "sri/aggregate.hpp"
#include "sri/core_model.hpp"
#include "sri/groups.hpp"

namespace sri {

enum class ChartKind { Lollipop, Heatmap, Dumbbell, GroupedBars };

std::string_view to_string(ChartKind kind) noexcept;
ChartKind parse_chart_kind(std::string_view text);

struct LollipopPoint {
  std::string label;
  double value = 0.0;
  std::size_t tier_index = 0;
};

struct LollipopChart {
  std::string title;
  std::vector<LollipopPoint> points;  // drawn top to bottom
  std::vector<double> reference_lines;
  double mean_line = 0.0;
  double axis_max = 100.0;
  std::vector<std::string> tier_names;
};

struct HeatmapChart {
  std::string title;
  std::vector<std::string> row_labels;
  std::vector<std::string> column_labels;
  std::vector<std::vector<double>> values;  // rows x columns, 0..100
};

struct DumbbellChart {
  std::string title;
  std::string a_name;
  std::string b_name;
  std::vector<std::string> labels;
  std::vector<double> a_values;
  std::vector<double> b_values;
};

struct GroupedBarsChart {
  std::string title;
  std::vector<std::string> categories;
  std::vector<std::string> series_names;         // exactly two
  std::vector<std::vector<double>> series_values;  // series x category
};

using ChartData = std::variant<LollipopChart, HeatmapChart, DumbbellChart, GroupedBarsChart>;

ChartKind kind_of(const ChartData& data) noexcept;

/// Standalone SVG 1.1 document. Every data mark carries class="mark";
/// reference lines carry class="tier-boundary" / "mean-line" and a
/// data-value attribute in data units. Throws EmptyData on empty input.
std::string render_chart(const ChartData& data);
/// As above, but PreconditionViolation when `kind` does not match the data.
std::string render_chart(ChartKind kind, const ChartData& data);
void write_chart(ChartKind kind, const ChartData& data, const std::filesystem::path& path);

/// Points in ranking order; boundaries at interior tier edges up to the
/// first edge above the top score.
LollipopChart lollipop_data(const std::vector<RankingEntry>& ranking, const TierScheme& tiers);
/// Rows follow the ranking (highest overall first).
HeatmapChart heatmap_data(const ScoreMatrix& matrix, const std::vector<RankingEntry>& ranking);
/// Rows sorted by gap (a - b) descending, ties by name.
DumbbellChart dumbbell_data(const ScoreMatrix& matrix, const std::string& category_a, const std::string& category_b);
/// Category means of the two groups of a two-group breakdown.
GroupedBarsChart grouped_bars_data(const ScoreMatrix& matrix, const GroupBreakdown& breakdown);

}  // namespace sri
