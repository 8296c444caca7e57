#include "sri/aggregate.hpp"
#include "sri/report.hpp"
#include "sri/robustness.hpp"
#include "json.hpp"
#include "support.hpp"

using namespace sri;
using sri::test::sri_data;

namespace {
std::vector<RankingEntry> reported_ranking() {
  const auto cfg = default_sri_config();
  return rank_matrix(sri_data(), cfg.weights, AggregationMethod::WeightedArithmetic, cfg.tiers, true);
}
}  // namespace

TEST(Format, PValues) {
  EXPECT_EQ(format_p(0.0004), "<.001");
  EXPECT_EQ(format_p(0.5123), ".512");
  EXPECT_EQ(format_p(0.001), ".001");
  EXPECT_EQ(format_p(1.0), "1.000");
  EXPECT_SRI_ERROR(parse_table_format("xml"), ErrorKind::ParseError);
}

TEST(Ranking, MarkdownFirstRow) {
  const auto md = render_table(reported_ranking(), sri_data().categories, TableFormat::Markdown);
  EXPECT_NE(md.find("| 1 | United Kingdom | 49.00 | Partially Prepared | 55.00 |"), std::string::npos) << md;
  EXPECT_NE(md.find("| ---: | --- | ---: | --- |"), std::string::npos);
}

TEST(Ranking, CsvHeaderAndRows) {
  const auto csv = render_table(reported_ranking(), sri_data().categories, TableFormat::Csv);
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "Rank,Jurisdiction,Score,Tier,Policy Environment,Institutional Engagement,Research Environment,"
            "Professional Readiness,Public Discourse,Adaptive Capacity");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 32);
}

TEST(Ranking, JsonTypes) {
  const auto doc = nlohmann::json::parse(render_table(reported_ranking(), sri_data().categories, TableFormat::Json));
  const auto& rows = doc.at("ranking");
  ASSERT_EQ(rows.size(), 31u);
  EXPECT_TRUE(rows[0]["Rank"].is_number_integer());
  EXPECT_EQ(rows[0]["Jurisdiction"], "United Kingdom");
  EXPECT_DOUBLE_EQ(rows[0]["Score"].get<double>(), 49.0);
}

TEST(Ranking, Deterministic) {
  for (const auto format : {TableFormat::Markdown, TableFormat::Csv, TableFormat::Json}) {
    EXPECT_EQ(render_table(reported_ranking(), sri_data().categories, format),
              render_table(reported_ranking(), sri_data().categories, format));
  }
}

TEST(Tables, MultipleTablesInCsv) {
  Table a{"a", "First", {"x", "y"}, {{"p", Cell::num(1.5, 1)}}};
  Table b{"b", "Second", {"z"}, {{Cell::integer(3)}}};
  const auto one = render_tables({a}, TableFormat::Csv);
  EXPECT_EQ(one, "x,y\np,1.5\n");
  const auto two = render_tables({a, b}, TableFormat::Csv);
  EXPECT_NE(two.find("# First"), std::string::npos);
  EXPECT_NE(two.find("# Second"), std::string::npos);
  const auto doc = nlohmann::json::parse(render_tables({a, b}, TableFormat::Json));
  EXPECT_EQ(doc["a"][0]["y"], 1.5);
  EXPECT_EQ(doc["b"][0]["z"], 3);
}

TEST(Tables, CsvQuoting) {
  Table t{"t", "T", {"name"}, {{"a, \"b\""}}};
  EXPECT_EQ(render_tables({t}, TableFormat::Csv), "name\n\"a, \"\"b\"\"\"\n");
}

TEST(Tables, EmptyCellIsJsonNull) {
  Table t{"t", "T", {"v"}, {{""}}};
  EXPECT_TRUE(nlohmann::json::parse(render_tables({t}, TableFormat::Json))["t"][0]["v"].is_null());
}

TEST(Tables, StabilityWithUndefinedSd) {
  const auto r = stability({{"Once", {{"a", 33}}}, {"Twice", {{"a", 30}, {"b", 34}}}}, 2, default_sri_config().tiers);
  const auto md = render_table(r, TableFormat::Markdown);
  EXPECT_NE(md.find("Once"), std::string::npos);
  EXPECT_NO_THROW(nlohmann::json::parse(render_table(r, TableFormat::Json)));
}
