#include "sri/report.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "json.hpp"

namespace sri {

TableFormat parse_table_format(std::string_view text) {
  if (text == "markdown" || text == "md") return TableFormat::Markdown;
  if (text == "csv") return TableFormat::Csv;
  if (text == "json") return TableFormat::Json;
  throw Error(ErrorKind::ParseError, fmt::format("format must be markdown, csv or json, got '{}'", text));
}

std::string format_p(double p) {
  if (p < 0.001) return "<.001";
  std::string s = fmt::format("{:.3f}", p);
  if (s.rfind("0.", 0) == 0) s.erase(0, 1);
  return s;
}

Cell Cell::num(double v, int decimals) {
  Cell c(fmt::format("{:.{}f}", v, decimals));
  if (c.text == fmt::format("-{:.{}f}", 0.0, decimals)) c.text.erase(0, 1);
  c.number = v;
  return c;
}

Cell Cell::integer(long long v) {
  Cell c(fmt::format("{}", v));
  c.number = static_cast<double>(v);
  c.integral = true;
  return c;
}

Cell Cell::p_value(double p) {
  Cell c(format_p(p));
  c.number = p;
  return c;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out.push_back('"');
    out.push_back(ch);
  }
  return out + "\"";
}

std::string md_field(const std::string& s) {
  std::string out;
  for (char ch : s) {
    if (ch == '|') out += "\\|";
    else out.push_back(ch);
  }
  return out;
}

Cell opt_num(const std::optional<double>& v, int decimals) {
  return v ? Cell::num(*v, decimals) : Cell("");
}

}  // namespace

std::string render_tables(const std::vector<Table>& tables, TableFormat format) {
  if (format == TableFormat::Json) {
    nlohmann::ordered_json doc = nlohmann::ordered_json::object();
    for (const auto& t : tables) {
      auto rows = nlohmann::ordered_json::array();
      for (const auto& row : t.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t c = 0; c < t.header.size() && c < row.size(); ++c) {
          if (row[c].number && row[c].integral) obj[t.header[c]] = static_cast<long long>(*row[c].number);
          else if (row[c].number) obj[t.header[c]] = *row[c].number;
          else if (row[c].text.empty()) obj[t.header[c]] = nullptr;
          else obj[t.header[c]] = row[c].text;
        }
        rows.push_back(std::move(obj));
      }
      doc[t.key] = std::move(rows);
    }
    return doc.dump(2) + "\n";
  }

  std::string out;
  for (std::size_t i = 0; i < tables.size(); ++i) {
    const auto& t = tables[i];
    if (format == TableFormat::Markdown) {
      if (i > 0) out += "\n";
      out += fmt::format("### {}\n\n", t.title);
      out += "|";
      for (const auto& h : t.header) out += " " + md_field(h) + " |";
      out += "\n|";
      for (std::size_t c = 0; c < t.header.size(); ++c) {
        const bool numeric = !t.rows.empty() && std::all_of(t.rows.begin(), t.rows.end(), [c](const auto& row) {
          return c < row.size() && (row[c].number.has_value() || row[c].text.empty());
        });
        out += numeric ? " ---: |" : " --- |";
      }
      out += "\n";
      for (const auto& row : t.rows) {
        out += "|";
        for (const auto& cell : row) out += " " + md_field(cell.text) + " |";
        out += "\n";
      }
    } else {
      if (tables.size() > 1) {
        if (i > 0) out += "\n";
        out += fmt::format("# {}\n", t.title);
      }
      for (std::size_t c = 0; c < t.header.size(); ++c) out += (c ? "," : "") + csv_field(t.header[c]);
      out += "\n";
      for (const auto& row : t.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) out += (c ? "," : "") + csv_field(row[c].text);
        out += "\n";
      }
    }
  }
  return out;
}

std::string render_table(const std::vector<RankingEntry>& ranking, const std::vector<CategorySpec>& categories,
                         TableFormat format) {
  Table t{"ranking", "Rankings", {"Rank", "Jurisdiction", "Score", "Tier"}, {}};
  for (const auto& c : categories) t.header.push_back(c.display_name);
  for (const auto& e : ranking) {
    std::vector<Cell> row{Cell::integer(e.rank), e.jurisdiction, Cell::num(e.overall, 2), e.tier};
    for (const auto& c : categories) row.push_back(Cell::num(e.category_scores.at(c.id), 2));
    t.rows.push_back(std::move(row));
  }
  return render_tables({t}, format);
}

std::string render_table(const std::vector<CategorySummary>& categories, TableFormat format) {
  Table t{"category_statistics",
          "Category-Level Descriptive Statistics",
          {"Category", "Mean", "Median", "SD", "Min", "Max", "Range", "IQR", "CV"},
          {}};
  for (const auto& c : categories) {
    const auto& s = c.summary;
    t.rows.push_back({c.display_name, Cell::num(s.mean, 2), Cell::num(s.median, 1), Cell::num(s.sd, 2),
                      Cell::num(s.min, 0), Cell::num(s.max, 0), Cell::num(s.range, 0), Cell::num(s.iqr, 1),
                      opt_num(s.cv, 2)});
  }
  return render_tables({t}, format);
}

std::string render_table(const DescriptiveSummary& s, const std::optional<NormalityResult>& normality,
                         TableFormat format) {
  Table t{"distribution", "Distribution of Overall Scores", {"Statistic", "Value"}, {}};
  t.rows = {
      {"n", Cell::integer(static_cast<long long>(s.n))},
      {"mean", Cell::num(s.mean, 2)},
      {"sd", Cell::num(s.sd, 2)},
      {"median", Cell::num(s.median, 2)},
      {"min", Cell::num(s.min, 2)},
      {"max", Cell::num(s.max, 2)},
      {"range", Cell::num(s.range, 2)},
      {"iqr", Cell::num(s.iqr, 2)},
      {"cv", opt_num(s.cv, 3)},
      {"skewness", opt_num(s.skewness, 3)},
      {"excess_kurtosis", opt_num(s.excess_kurtosis, 3)},
      {"gini", opt_num(s.gini, 3)},
  };
  if (normality) {
    t.rows.push_back({"shapiro_wilk_w", Cell::num(normality->w_statistic, 3)});
    t.rows.push_back({"shapiro_wilk_p", Cell::p_value(normality->p_value)});
  }
  return render_tables({t}, format);
}

std::string render_table(const GapAnalysis& gap, TableFormat format) {
  Table summary{"gap_summary",
                fmt::format("{} minus {}", display_name_for(gap.category_a), display_name_for(gap.category_b)),
                {"Statistic", "Value"},
                {}};
  summary.rows = {
      {"n", Cell::integer(static_cast<long long>(gap.gaps.size()))},
      {"positive gaps", Cell::integer(static_cast<long long>(gap.positive_count))},
      {"mean gap", Cell::num(gap.mean_gap, 2)},
      {"median gap", Cell::num(gap.median_gap, 2)},
      {"min gap", Cell::num(gap.min_gap, 2)},
      {"min at", fmt::format("{}", fmt::join(gap.min_jurisdictions, "; "))},
      {"max gap", Cell::num(gap.max_gap, 2)},
      {"max at", fmt::format("{}", fmt::join(gap.max_jurisdictions, "; "))},
  };
  if (gap.test) {
    const auto& r = *gap.test;
    summary.rows.push_back({"t", Cell::num(r.t_statistic, 2)});
    summary.rows.push_back({"df", Cell::integer(r.df)});
    summary.rows.push_back({"p", Cell::p_value(r.p_value)});
    summary.rows.push_back({"cohens_d", Cell::num(r.cohens_d, 2)});
    summary.rows.push_back({"wilcoxon_w", Cell::num(r.wilcoxon_w, 1)});
    summary.rows.push_back({"wilcoxon_p", Cell::p_value(r.wilcoxon_p)});
    summary.rows.push_back({"matched_rank_biserial", Cell::num(r.matched_rank_biserial, 2)});
  } else if (gap.degenerate) {
    summary.rows.push_back({"degenerate", std::string(to_string(*gap.degenerate))});
  }

  Table rows{"gaps", "Per-jurisdiction gaps", {"Jurisdiction", "Gap"}, {}};
  auto sorted = gap.gaps;
  std::stable_sort(sorted.begin(), sorted.end(), [](const NamedValue& a, const NamedValue& b) {
    if (a.value != b.value) return a.value > b.value;
    return a.jurisdiction < b.jurisdiction;
  });
  for (const auto& g : sorted) rows.rows.push_back({g.jurisdiction, Cell::num(g.value, 2)});
  return render_tables({summary, rows}, format);
}

std::string render_table(const CorrelationMatrix& cm, TableFormat format) {
  Table t{"correlations",
          fmt::format("Pairwise {} correlations", cm.kind == CorrelationKind::Pearson ? "Pearson" : "Spearman"),
          {"Category A", "Category B", "r", "p"},
          {}};
  for (std::size_t i = 0; i < cm.categories.size(); ++i) {
    for (std::size_t j = i + 1; j < cm.categories.size(); ++j) {
      t.rows.push_back({display_name_for(cm.categories[i]), display_name_for(cm.categories[j]),
                        Cell::num(cm.coefficients(i, j), 3), Cell::p_value(cm.p_values(i, j))});
    }
  }
  return render_tables({t}, format);
}

std::string render_table(const PcaResult& result, TableFormat format) {
  Table variance{"explained_variance",
                 result.standardized ? "PCA (correlation matrix)" : "PCA (covariance matrix)",
                 {"Component", "Eigenvalue", "Explained", "Cumulative"},
                 {}};
  double cumulative = 0.0;
  for (std::size_t k = 0; k < result.component_count; ++k) {
    cumulative += result.explained_variance_ratio[k];
    variance.rows.push_back({fmt::format("PC{}", k + 1), Cell::num(result.eigenvalues[k], 3),
                             Cell::num(result.explained_variance_ratio[k], 3), Cell::num(cumulative, 3)});
  }
  Table loadings{"loadings", "Loadings", {"Category"}, {}};
  for (std::size_t k = 0; k < result.component_count; ++k) loadings.header.push_back(fmt::format("PC{}", k + 1));
  for (std::size_t c = 0; c < result.categories.size(); ++c) {
    std::vector<Cell> row{display_name_for(result.categories[c])};
    for (std::size_t k = 0; k < result.component_count; ++k) row.push_back(Cell::num(result.loadings(k, c), 3));
    loadings.rows.push_back(std::move(row));
  }
  return render_tables({variance, loadings}, format);
}

std::string render_table(const GroupBreakdown& b, TableFormat format) {
  Table groups{"groups", fmt::format("Groups by {}", b.dimension), {"Group", "n", "Mean overall"}, {}};
  for (const auto& g : b.groups) {
    groups.rows.push_back({g.label, Cell::integer(static_cast<long long>(g.size)), Cell::num(g.mean_overall, 2)});
  }

  Table test{"test", "Test", {"Statistic", "Value"}, {}};
  const bool mw = b.test.statistic_kind == GroupStatisticKind::MannWhitneyU;
  test.rows.push_back({"test", mw ? "Mann-Whitney U" : "Kruskal-Wallis H"});
  test.rows.push_back({mw ? "U" : "H", Cell::num(b.test.statistic, 2)});
  if (b.test.df) test.rows.push_back({"df", Cell::integer(*b.test.df)});
  test.rows.push_back({"p", Cell::p_value(b.test.p_value)});
  test.rows.push_back({mw ? "rank_biserial" : "eta_squared", Cell::num(b.test.effect_size, 3)});
  if (mw) test.rows.push_back({"oriented_to", b.groups.front().label});
  if (!b.untagged.empty()) test.rows.push_back({"untagged", fmt::format("{}", fmt::join(b.untagged, "; "))});

  std::vector<Table> tables{groups, test};
  if (!b.category_differentials.empty()) {
    Table diffs{"differentials",
                fmt::format("Category differentials ({} minus {})", b.groups[0].label, b.groups[1].label),
                {"Category", "Differential"},
                {}};
    for (const auto& [id, d] : b.category_differentials) diffs.rows.push_back({display_name_for(id), Cell::num(d, 2)});
    tables.push_back(std::move(diffs));
  }
  return render_tables(tables, format);
}

std::string render_table(const std::vector<SchemeComparison>& comparisons, TableFormat format) {
  Table t{"schemes",
          "Ranking robustness",
          {"Scheme", "Spearman rho", "Kendall tau", "Tier changes", "Mean |rank change|", "Max |rank change|",
           "Largest mover"},
          {}};
  for (const auto& c : comparisons) {
    std::string mover;
    if (!c.movers.empty()) {
      const auto& m = c.movers.front();
      mover = fmt::format("{} ({} -> {})", m.jurisdiction, m.old_rank, m.new_rank);
    }
    t.rows.push_back({c.scheme_name, Cell::num(c.spearman_vs_baseline, 3), Cell::num(c.kendall_vs_baseline, 3),
                      Cell::integer(static_cast<long long>(c.tier_changes)), Cell::num(c.mean_abs_rank_change, 2),
                      Cell::num(c.max_abs_rank_change, 0), mover});
  }
  return render_tables({t}, format);
}

std::string render_table(const StabilityReport& report, TableFormat format) {
  Table t{"stability",
          "Scoring stability",
          {"Jurisdiction", "Runs", "Mean", "SD", "Min", "Max", "Range", "Tiers", "Included"},
          {}};
  for (const auto& j : report.jurisdictions) {
    t.rows.push_back({j.jurisdiction, Cell::integer(static_cast<long long>(j.run_count)), Cell::num(j.mean, 2),
                      opt_num(j.sd, 2), Cell::num(j.min, 2), Cell::num(j.max, 2), Cell::num(j.range, 2),
                      fmt::format("{}", fmt::join(j.tiers, "; ")), j.qualifies ? "yes" : "no"});
  }
  Table summary{"stability_summary", "Summary", {"Statistic", "Value"}, {}};
  summary.rows.push_back({"runs_threshold", Cell::integer(static_cast<long long>(report.runs_threshold))});
  summary.rows.push_back({"qualifying", Cell::integer(static_cast<long long>(report.qualifying))});
  summary.rows.push_back({"mean_within_sd", opt_num(report.mean_within_sd, 2)});
  return render_tables({t, summary}, format);
}

std::string render_table(const std::vector<Violation>& violations, TableFormat format) {
  Table t{"violations", "Validation", {"Kind", "Jurisdiction", "Category", "Message"}, {}};
  for (const auto& v : violations) {
    t.rows.push_back({std::string(to_string(v.kind)), v.jurisdiction, v.category, v.message});
  }
  return render_tables({t}, format);
}

}  // namespace sri
