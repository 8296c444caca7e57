#include <algorithm>
#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "sri/aggregate.hpp"
#include "sri/charts.hpp"
#include "sri/groups.hpp"
#include "support.hpp"

using namespace sri;
using sri::test::reported_overall;
using sri::test::sri_data;

namespace {

std::vector<RankingEntry> ranking() {
  const auto cfg = default_sri_config();
  return rank_matrix(sri_data(), cfg.weights, AggregationMethod::WeightedArithmetic, cfg.tiers, true);
}

std::size_t count(const std::string& svg, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = svg.find(needle); pos != std::string::npos; pos = svg.find(needle, pos + 1)) ++n;
  return n;
}

void expect_well_formed(const std::string& svg) {
  std::istringstream in(svg);
  boost::property_tree::ptree tree;
  EXPECT_NO_THROW(boost::property_tree::read_xml(in, tree));
  EXPECT_EQ(tree.count("svg"), 1u);
}

}  // namespace

TEST(Lollipop, MarksAndLines) {
  const auto data = lollipop_data(ranking(), default_sri_config().tiers);
  EXPECT_EQ(data.reference_lines, (std::vector<double>{20, 40, 60}));
  EXPECT_NEAR(data.mean_line, 33.03, 0.005);
  EXPECT_EQ(data.points.front().label, "United Kingdom");
  const auto svg = render_chart(data);
  expect_well_formed(svg);
  EXPECT_EQ(count(svg, "class=\"mark\""), 31u);
  EXPECT_EQ(count(svg, "class=\"tier-boundary\""), 3u);
  EXPECT_NE(svg.find("data-value=\"40\""), std::string::npos);
  EXPECT_EQ(count(svg, "class=\"mean-line\""), 1u);
}

TEST(Heatmap, CellCount) {
  const auto data = heatmap_data(sri_data(), ranking());
  EXPECT_EQ(data.row_labels.front(), "United Kingdom");
  const auto svg = render_chart(ChartKind::Heatmap, data);
  expect_well_formed(svg);
  EXPECT_EQ(count(svg, "class=\"mark\""), 186u);
}

TEST(Dumbbell, SortedByGap) {
  const auto data = dumbbell_data(sri_data(), "research_environment", "professional_readiness");
  ASSERT_GE(data.labels.size(), 2u);
  EXPECT_EQ(data.labels[0], "Canada");
  EXPECT_EQ(data.labels[1], "Japan");
  EXPECT_EQ(data.labels.back(), "Russia");
  const auto svg = render_chart(data);
  expect_well_formed(svg);
  EXPECT_EQ(count(svg, "class=\"mark\""), 31u);
}

TEST(GroupedBars, Governance) {
  const auto b = group_breakdown(sri_data(), "governance", reported_overall());
  const auto data = grouped_bars_data(sri_data(), b);
  EXPECT_EQ(data.series_names, (std::vector<std::string>{"democracy (n = 24)", "hybrid/authoritarian (n = 7)"}));
  const auto svg = render_chart(data);
  expect_well_formed(svg);
  EXPECT_EQ(count(svg, "class=\"mark\""), 6u);
  const auto region = group_breakdown(sri_data(), "region", reported_overall());
  EXPECT_SRI_ERROR(grouped_bars_data(sri_data(), region), ErrorKind::PreconditionViolation);
}

TEST(Charts, Errors) {
  EXPECT_SRI_ERROR(render_chart(LollipopChart{}), ErrorKind::EmptyData);
  EXPECT_SRI_ERROR(render_chart(HeatmapChart{}), ErrorKind::EmptyData);
  const auto data = lollipop_data(ranking(), default_sri_config().tiers);
  EXPECT_SRI_ERROR(render_chart(ChartKind::Heatmap, data), ErrorKind::PreconditionViolation);
  EXPECT_SRI_ERROR(parse_chart_kind("pie"), ErrorKind::ParseError);
  EXPECT_SRI_ERROR(write_chart(ChartKind::Lollipop, data, "/nonexistent-dir/x.svg"), ErrorKind::IoError);
}

TEST(Charts, EscapesLabels) {
  LollipopChart c;
  c.title = "A & B";
  c.points = {{"<Tag>", 10, 0}};
  c.tier_names = {"t"};
  const auto svg = render_chart(c);
  expect_well_formed(svg);
  EXPECT_NE(svg.find("&lt;Tag&gt;"), std::string::npos);
}
