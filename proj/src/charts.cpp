#include "sri/charts.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <numeric>

#include <fmt/format.h>

#include "sri/stats.hpp"

namespace sri {

std::string_view to_string(ChartKind kind) noexcept {
  switch (kind) {
    case ChartKind::Lollipop: return "lollipop";
    case ChartKind::Heatmap: return "heatmap";
    case ChartKind::Dumbbell: return "dumbbell";
    case ChartKind::GroupedBars: return "grouped_bars";
  }
  return "unknown";
}

ChartKind parse_chart_kind(std::string_view text) {
  if (text == "lollipop") return ChartKind::Lollipop;
  if (text == "heatmap") return ChartKind::Heatmap;
  if (text == "dumbbell") return ChartKind::Dumbbell;
  if (text == "grouped_bars" || text == "grouped-bars") return ChartKind::GroupedBars;
  throw Error(ErrorKind::ParseError,
              fmt::format("chart kind must be lollipop, heatmap, dumbbell or grouped_bars, got '{}'", text));
}

ChartKind kind_of(const ChartData& data) noexcept {
  return static_cast<ChartKind>(data.index());
}

namespace {

constexpr std::string_view kFont = "font-family=\"Helvetica, Arial, sans-serif\"";

// Tier colours, lowest band first; wraps for schemes with more bands.
constexpr std::array<std::string_view, 5> kTierColors = {"#b2182b", "#ef8a62", "#f4c542", "#67a9cf", "#2166ac"};
constexpr std::string_view kSeriesA = "#2166ac";
constexpr std::string_view kSeriesB = "#d6604d";

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string num(double v) {
  std::string s = fmt::format("{:.2f}", v);
  if (s == "-0.00") s = "0.00";
  return s;
}

std::string_view tier_color(std::size_t index) { return kTierColors[index % kTierColors.size()]; }

std::string open_svg(double width, double height, std::string_view title) {
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{0}\" height=\"{1}\" "
      "viewBox=\"0 0 {0} {1}\">\n",
      num(width), num(height));
  out += fmt::format("<title>{}</title>\n", escape(title));
  out += fmt::format("<rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"#ffffff\"/>\n", num(width), num(height));
  out += fmt::format("<text x=\"{}\" y=\"24\" {} font-size=\"16\" text-anchor=\"middle\">{}</text>\n", num(width / 2),
                     kFont, escape(title));
  return out;
}

// Splits "Institutional Engagement" over two lines at the middle space.
std::string two_line_label(std::string_view label, double x, double y, std::string_view extra) {
  const auto space = label.find(' ');
  if (space == std::string_view::npos) {
    return fmt::format("<text x=\"{}\" y=\"{}\" {} font-size=\"11\" text-anchor=\"middle\"{}>{}</text>\n", num(x),
                       num(y), kFont, extra, escape(label));
  }
  return fmt::format(
      "<text x=\"{0}\" y=\"{1}\" {2} font-size=\"11\" text-anchor=\"middle\"{3}><tspan x=\"{0}\" dy=\"0\">{4}</tspan>"
      "<tspan x=\"{0}\" dy=\"13\">{5}</tspan></text>\n",
      num(x), num(y), kFont, extra, escape(label.substr(0, space)), escape(label.substr(space + 1)));
}

double nice_ceiling(double v, double step) { return std::max(step, std::ceil(v / step) * step); }

std::string render(const LollipopChart& c) {
  if (c.points.empty()) throw Error(ErrorKind::EmptyData, "lollipop chart has no points");
  const double left = 170, right = 50, top = 70, row = 20, bottom = 50;
  const double width = 900;
  const double height = top + row * static_cast<double>(c.points.size()) + bottom;
  const double plot_w = width - left - right;
  const double axis_max = c.axis_max > 0 ? c.axis_max : 100.0;
  auto x = [&](double v) { return left + plot_w * std::clamp(v, 0.0, axis_max) / axis_max; };
  const double plot_bottom = top + row * static_cast<double>(c.points.size());

  std::string out = open_svg(width, height, c.title);

  for (std::size_t t = 0; t < c.tier_names.size(); ++t) {
    const double lx = 20 + 170 * static_cast<double>(t);
    out += fmt::format("<rect x=\"{}\" y=\"38\" width=\"10\" height=\"10\" fill=\"{}\"/>\n", num(lx), tier_color(t));
    out += fmt::format("<text x=\"{}\" y=\"47\" {} font-size=\"11\">{}</text>\n", num(lx + 14), kFont,
                       escape(c.tier_names[t]));
  }

  for (double tick = 0; tick <= axis_max + 1e-9; tick += 10) {
    out += fmt::format("<text x=\"{}\" y=\"{}\" {} font-size=\"10\" text-anchor=\"middle\">{:g}</text>\n",
                       num(x(tick)), num(plot_bottom + 16), kFont, tick);
  }
  out += fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" stroke=\"#333333\"/>\n", num(left),
                     num(plot_bottom), num(left + plot_w));

  for (double ref : c.reference_lines) {
    out += fmt::format(
        "<line class=\"tier-boundary\" data-value=\"{0}\" x1=\"{1}\" y1=\"{2}\" x2=\"{1}\" y2=\"{3}\" "
        "stroke=\"#888888\" stroke-dasharray=\"4 3\"/>\n",
        fmt::format("{:g}", ref), num(x(ref)), num(top), num(plot_bottom));
  }
  out += fmt::format(
      "<line class=\"mean-line\" data-value=\"{0}\" x1=\"{1}\" y1=\"{2}\" x2=\"{1}\" y2=\"{3}\" stroke=\"#999999\" "
      "stroke-width=\"2\"/>\n",
      num(c.mean_line), num(x(c.mean_line)), num(top), num(plot_bottom));

  for (std::size_t i = 0; i < c.points.size(); ++i) {
    const auto& p = c.points[i];
    const double y = top + row * (static_cast<double>(i) + 0.5);
    out += fmt::format("<g class=\"mark\" data-label=\"{}\" data-value=\"{}\">", escape(p.label), num(p.value));
    out += fmt::format("<text x=\"{}\" y=\"{}\" {} font-size=\"11\" text-anchor=\"end\">{}</text>", num(left - 8),
                       num(y + 4), kFont, escape(p.label));
    out += fmt::format("<line x1=\"{0}\" y1=\"{2}\" x2=\"{1}\" y2=\"{2}\" stroke=\"{3}\" stroke-width=\"2\"/>",
                       num(x(0)), num(x(p.value)), num(y), tier_color(p.tier_index));
    out += fmt::format("<circle cx=\"{}\" cy=\"{}\" r=\"5\" fill=\"{}\"/>", num(x(p.value)), num(y),
                       tier_color(p.tier_index));
    out += "</g>\n";
  }
  out += "</svg>\n";
  return out;
}

std::string heat_color(double value) {
  const double t = std::clamp(value / 100.0, 0.0, 1.0);
  constexpr std::array<double, 3> dark = {27, 31, 59};
  constexpr std::array<double, 3> light = {247, 233, 168};
  std::array<int, 3> rgb{};
  for (std::size_t k = 0; k < 3; ++k) rgb[k] = static_cast<int>(std::lround(dark[k] + t * (light[k] - dark[k])));
  return fmt::format("#{:02x}{:02x}{:02x}", rgb[0], rgb[1], rgb[2]);
}

std::string render(const HeatmapChart& c) {
  if (c.row_labels.empty() || c.column_labels.empty()) throw Error(ErrorKind::EmptyData, "heatmap has no cells");
  if (c.values.size() != c.row_labels.size()) throw Error(ErrorKind::PreconditionViolation, "heatmap row count mismatch");
  const double left = 170, top = 80, cell_w = 100, cell_h = 20, right = 20, bottom = 20;
  const double width = left + cell_w * static_cast<double>(c.column_labels.size()) + right;
  const double height = top + cell_h * static_cast<double>(c.row_labels.size()) + bottom;

  std::string out = open_svg(width, height, c.title);
  for (std::size_t j = 0; j < c.column_labels.size(); ++j) {
    out += two_line_label(c.column_labels[j], left + cell_w * (static_cast<double>(j) + 0.5), top - 22, "");
  }
  for (std::size_t i = 0; i < c.row_labels.size(); ++i) {
    if (c.values[i].size() != c.column_labels.size()) {
      throw Error(ErrorKind::PreconditionViolation, "heatmap column count mismatch");
    }
    const double y = top + cell_h * static_cast<double>(i);
    out += fmt::format("<text x=\"{}\" y=\"{}\" {} font-size=\"11\" text-anchor=\"end\">{}</text>\n", num(left - 8),
                       num(y + 14), kFont, escape(c.row_labels[i]));
    for (std::size_t j = 0; j < c.column_labels.size(); ++j) {
      const double v = c.values[i][j];
      const double x = left + cell_w * static_cast<double>(j);
      out += fmt::format(
          "<rect class=\"mark\" data-row=\"{}\" data-column=\"{}\" data-value=\"{}\" x=\"{}\" y=\"{}\" width=\"{}\" "
          "height=\"{}\" fill=\"{}\" stroke=\"#ffffff\"/>",
          escape(c.row_labels[i]), escape(c.column_labels[j]), num(v), num(x), num(y), num(cell_w), num(cell_h),
          heat_color(v));
      out += fmt::format("<text x=\"{}\" y=\"{}\" {} font-size=\"10\" text-anchor=\"middle\" fill=\"{}\">{:g}</text>\n",
                         num(x + cell_w / 2), num(y + 14), kFont, v > 55 ? "#000000" : "#ffffff", v);
    }
  }
  out += "</svg>\n";
  return out;
}

std::string render(const DumbbellChart& c) {
  if (c.labels.empty()) throw Error(ErrorKind::EmptyData, "dumbbell chart has no rows");
  if (c.a_values.size() != c.labels.size() || c.b_values.size() != c.labels.size()) {
    throw Error(ErrorKind::PreconditionViolation, "dumbbell value count mismatch");
  }
  const double left = 170, right = 50, top = 70, row = 20, bottom = 50, width = 900;
  const double height = top + row * static_cast<double>(c.labels.size()) + bottom;
  const double plot_w = width - left - right;
  double vmax = 0;
  for (std::size_t i = 0; i < c.labels.size(); ++i) vmax = std::max({vmax, c.a_values[i], c.b_values[i]});
  const double axis_max = std::min(100.0, nice_ceiling(vmax + 1e-9, 10));
  auto x = [&](double v) { return left + plot_w * std::clamp(v, 0.0, axis_max) / axis_max; };
  const double plot_bottom = top + row * static_cast<double>(c.labels.size());

  std::string out = open_svg(width, height, c.title);
  out += fmt::format("<circle cx=\"30\" cy=\"43\" r=\"5\" fill=\"{}\"/><text x=\"40\" y=\"47\" {} font-size=\"11\">{}</text>\n",
                     kSeriesA, kFont, escape(c.a_name));
  out += fmt::format("<circle cx=\"260\" cy=\"43\" r=\"5\" fill=\"{}\"/><text x=\"270\" y=\"47\" {} font-size=\"11\">{}</text>\n",
                     kSeriesB, kFont, escape(c.b_name));
  for (double tick = 0; tick <= axis_max + 1e-9; tick += 10) {
    out += fmt::format("<text x=\"{}\" y=\"{}\" {} font-size=\"10\" text-anchor=\"middle\">{:g}</text>\n",
                       num(x(tick)), num(plot_bottom + 16), kFont, tick);
  }
  out += fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" stroke=\"#333333\"/>\n", num(left),
                     num(plot_bottom), num(left + plot_w));

  for (std::size_t i = 0; i < c.labels.size(); ++i) {
    const double y = top + row * (static_cast<double>(i) + 0.5);
    const double a = c.a_values[i];
    const double b = c.b_values[i];
    out += fmt::format("<g class=\"mark\" data-label=\"{}\" data-gap=\"{}\">", escape(c.labels[i]), num(a - b));
    out += fmt::format("<text x=\"{}\" y=\"{}\" {} font-size=\"11\" text-anchor=\"end\">{}</text>", num(left - 8),
                       num(y + 4), kFont, escape(c.labels[i]));
    out += fmt::format("<line x1=\"{0}\" y1=\"{2}\" x2=\"{1}\" y2=\"{2}\" stroke=\"#bbbbbb\" stroke-width=\"3\"/>",
                       num(x(b)), num(x(a)), num(y));
    out += fmt::format("<circle cx=\"{}\" cy=\"{}\" r=\"5\" fill=\"{}\"/>", num(x(a)), num(y), kSeriesA);
    out += fmt::format("<circle cx=\"{}\" cy=\"{}\" r=\"5\" fill=\"{}\"/>", num(x(b)), num(y), kSeriesB);
    out += "</g>\n";
  }
  out += "</svg>\n";
  return out;
}

std::string render(const GroupedBarsChart& c) {
  if (c.categories.empty()) throw Error(ErrorKind::EmptyData, "grouped bar chart has no categories");
  if (c.series_names.size() != 2 || c.series_values.size() != 2 || c.series_values[0].size() != c.categories.size() ||
      c.series_values[1].size() != c.categories.size()) {
    throw Error(ErrorKind::PreconditionViolation, "grouped bar chart needs two series covering every category");
  }
  const double left = 60, right = 20, top = 70, plot_h = 300, bottom = 60, group_w = 120;
  const double width = left + group_w * static_cast<double>(c.categories.size()) + right;
  const double height = top + plot_h + bottom;
  double vmax = 0;
  for (const auto& s : c.series_values) {
    for (double v : s) vmax = std::max(vmax, v);
  }
  const double axis_max = std::min(100.0, nice_ceiling(vmax + 1e-9, 10));
  auto y = [&](double v) { return top + plot_h * (1.0 - std::clamp(v, 0.0, axis_max) / axis_max); };
  const double base = y(0);

  std::string out = open_svg(width, height, c.title);
  const std::array<std::string_view, 2> colors = {kSeriesA, kSeriesB};
  for (std::size_t s = 0; s < 2; ++s) {
    const double lx = 20 + 260 * static_cast<double>(s);
    out += fmt::format("<rect x=\"{}\" y=\"38\" width=\"10\" height=\"10\" fill=\"{}\"/>", num(lx), colors[s]);
    out += fmt::format("<text x=\"{}\" y=\"47\" {} font-size=\"11\">{}</text>\n", num(lx + 14), kFont,
                       escape(c.series_names[s]));
  }
  for (double tick = 0; tick <= axis_max + 1e-9; tick += 10) {
    out += fmt::format("<text x=\"{}\" y=\"{}\" {} font-size=\"10\" text-anchor=\"end\">{:g}</text>\n", num(left - 6),
                       num(y(tick) + 3), kFont, tick);
  }
  out += fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" stroke=\"#333333\"/>\n", num(left), num(base),
                     num(width - right));

  const double bar_w = 40;
  for (std::size_t k = 0; k < c.categories.size(); ++k) {
    const double gx = left + group_w * static_cast<double>(k);
    out += fmt::format("<g class=\"mark\" data-label=\"{}\">", escape(c.categories[k]));
    for (std::size_t s = 0; s < 2; ++s) {
      const double v = c.series_values[s][k];
      const double bx = gx + 20 + bar_w * static_cast<double>(s);
      out += fmt::format(
          "<rect data-series=\"{}\" data-value=\"{}\" x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\"/>",
          escape(c.series_names[s]), num(v), num(bx), num(y(v)), num(bar_w - 4), num(base - y(v)), colors[s]);
    }
    out += "</g>\n";
    out += two_line_label(c.categories[k], gx + group_w / 2, base + 18, "");
  }
  out += "</svg>\n";
  return out;
}

}  // namespace

std::string render_chart(const ChartData& data) {
  return std::visit([](const auto& chart) { return render(chart); }, data);
}

std::string render_chart(ChartKind kind, const ChartData& data) {
  if (kind != kind_of(data)) {
    throw Error(ErrorKind::PreconditionViolation,
                fmt::format("chart kind {} does not match {} data", to_string(kind), to_string(kind_of(data))));
  }
  return render_chart(data);
}

void write_chart(ChartKind kind, const ChartData& data, const std::filesystem::path& path) {
  const auto svg = render_chart(kind, data);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::IoError, fmt::format("{}: cannot write", path.string()));
  out << svg;
}

LollipopChart lollipop_data(const std::vector<RankingEntry>& ranking, const TierScheme& tiers) {
  if (ranking.empty()) throw Error(ErrorKind::EmptyData, "empty ranking");
  LollipopChart c;
  c.title = "Overall scores";
  std::vector<double> values;
  for (const auto& e : ranking) {
    c.points.push_back({e.jurisdiction, e.overall, tiers.index_of(e.overall)});
    values.push_back(e.overall);
  }
  c.mean_line = mean(values);
  const double top = *std::max_element(values.begin(), values.end());
  c.axis_max = tiers.bands.back().hi;
  for (const auto& band : tiers.bands) {
    if (band.hi > top) {
      c.axis_max = band.hi;
      break;
    }
  }
  for (std::size_t i = 0; i + 1 < tiers.bands.size(); ++i) {
    if (tiers.bands[i].hi <= c.axis_max) c.reference_lines.push_back(tiers.bands[i].hi);
  }
  for (const auto& band : tiers.bands) c.tier_names.push_back(band.name);
  return c;
}

HeatmapChart heatmap_data(const ScoreMatrix& matrix, const std::vector<RankingEntry>& ranking) {
  HeatmapChart c;
  c.title = "Category scores";
  for (const auto& cat : matrix.categories) c.column_labels.push_back(cat.display_name);
  for (const auto& e : ranking) {
    c.row_labels.push_back(e.jurisdiction);
    std::vector<double> row;
    for (const auto& cat : matrix.categories) row.push_back(e.category_scores.at(cat.id));
    c.values.push_back(std::move(row));
  }
  return c;
}

DumbbellChart dumbbell_data(const ScoreMatrix& matrix, const std::string& category_a, const std::string& category_b) {
  const auto a = matrix.column(category_a);
  const auto b = matrix.column(category_b);
  std::vector<std::size_t> order(a.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    const double gx = a[x] - b[x];
    const double gy = a[y] - b[y];
    if (gx != gy) return gx > gy;
    return matrix.jurisdictions[x].name < matrix.jurisdictions[y].name;
  });

  DumbbellChart c;
  c.a_name = matrix.category(category_a).display_name;
  c.b_name = matrix.category(category_b).display_name;
  c.title = fmt::format("{} vs {}", c.a_name, c.b_name);
  for (std::size_t i : order) {
    c.labels.push_back(matrix.jurisdictions[i].name);
    c.a_values.push_back(a[i]);
    c.b_values.push_back(b[i]);
  }
  return c;
}

GroupedBarsChart grouped_bars_data(const ScoreMatrix& matrix, const GroupBreakdown& breakdown) {
  if (breakdown.groups.size() != 2) {
    throw Error(ErrorKind::PreconditionViolation, "grouped bars need a two-group breakdown");
  }
  GroupedBarsChart c;
  c.title = fmt::format("Category means by {}", breakdown.dimension);
  for (const auto& g : breakdown.groups) {
    c.series_names.push_back(fmt::format("{} (n = {})", g.label, g.size));
    std::vector<double> values;
    for (const auto& cat : matrix.categories) values.push_back(g.category_means.at(cat.id));
    c.series_values.push_back(std::move(values));
  }
  for (const auto& cat : matrix.categories) c.categories.push_back(cat.display_name);
  return c;
}

}  // namespace sri
