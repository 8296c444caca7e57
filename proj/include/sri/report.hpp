#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sri/aggregate.hpp"
#include "sri/core_model.hpp"
#include "sri/groups.hpp"
#include "sri/multivariate.hpp"
#include "sri/robustness.hpp"
#include "sri/stats.hpp"

namespace sri {

enum class TableFormat { Markdown, Csv, Json };

TableFormat parse_table_format(std::string_view text);

/// "<.001" below one in a thousand, otherwise three decimals without the
/// leading zero (".512").
std::string format_p(double p);

struct Cell {
  std::string text;
  std::optional<double> number;  // emitted as a JSON number when set
  bool integral = false;

  Cell(std::string t) : text(std::move(t)) {}  // NOLINT(google-explicit-constructor)
  Cell(const char* t) : text(t) {}             // NOLINT(google-explicit-constructor)
  static Cell num(double v, int decimals);
  static Cell integer(long long v);
  static Cell p_value(double p);
};

struct Table {
  std::string key;    // JSON object key
  std::string title;  // markdown heading
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;
};

/// One table renders without a title line in CSV; several are separated by
/// blank lines and `# title` comment lines.
std::string render_tables(const std::vector<Table>& tables, TableFormat format);

std::string render_table(const std::vector<RankingEntry>& ranking, const std::vector<CategorySpec>& categories,
                         TableFormat format);
std::string render_table(const std::vector<CategorySummary>& categories, TableFormat format);
std::string render_table(const DescriptiveSummary& summary, const std::optional<NormalityResult>& normality,
                         TableFormat format);
std::string render_table(const GapAnalysis& gap, TableFormat format);
std::string render_table(const CorrelationMatrix& correlations, TableFormat format);
std::string render_table(const PcaResult& result, TableFormat format);
std::string render_table(const GroupBreakdown& breakdown, TableFormat format);
std::string render_table(const std::vector<SchemeComparison>& comparisons, TableFormat format);
std::string render_table(const StabilityReport& report, TableFormat format);
std::string render_table(const std::vector<Violation>& violations, TableFormat format);

}  // namespace sri
