// sri: score, analyse and chart composite readiness index data.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "sri/acceptance.hpp"
#include "sri/aggregate.hpp"
#include "sri/charts.hpp"
#include "sri/groups.hpp"
#include "sri/io.hpp"
#include "sri/multivariate.hpp"
#include "sri/report.hpp"
#include "sri/robustness.hpp"
#include "sri/stats.hpp"

namespace {

using namespace sri;

struct Globals {
  std::string data;
  std::string config;
  std::string format = "markdown";
  std::string out;
  bool use_reported = false;
};

struct Context {
  AnalysisConfig config;
  ScoreMatrix matrix;
  TableFormat format = TableFormat::Markdown;
};

std::filesystem::path data_path(const Globals& g) {
  return g.data.empty() ? resolve_data_path(bundled_dataset_path()) : resolve_data_path(g.data);
}

AnalysisConfig config_for(const Globals& g) {
  return g.config.empty() ? default_analysis_config() : load_config(g.config);
}

Context load(const Globals& g) {
  Context ctx;
  ctx.format = parse_table_format(g.format);
  ctx.config = config_for(g);
  const auto path = data_path(g);
  ctx.matrix = load_matrix(path, format_for_path(path), ctx.config.weights);
  return ctx;
}

void emit(const Globals& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(g.out, std::ios::binary);
  if (!out) throw Error(ErrorKind::IoError, fmt::format("{}: cannot write", g.out));
  out << text;
}

std::string join_sections(const std::vector<std::string>& parts, TableFormat format) {
  if (format != TableFormat::Json) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? "\n" : "") + parts[i];
    return out;
  }
  std::string out = "[\n";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    std::string part = parts[i];
    while (!part.empty() && part.back() == '\n') part.pop_back();
    out += part + (i + 1 < parts.size() ? ",\n" : "\n");
  }
  return out + "]\n";
}

std::vector<std::string> default_targets(const WeightScheme& weights) {
  auto sorted = weights.weights;
  std::stable_sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  std::vector<std::string> out;
  for (std::size_t i = 0; i < std::min<std::size_t>(2, sorted.size()); ++i) out.push_back(sorted[i].first);
  return out;
}

int run_validate(const Globals& g) {
  const auto format = parse_table_format(g.format);
  const auto cfg = config_for(g);
  const auto path = data_path(g);
  const auto matrix = read_matrix(path, format_for_path(path), cfg.weights);
  const auto violations = validate_matrix(matrix);
  emit(g, render_table(violations, format));
  if (!violations.empty()) {
    std::cerr << fmt::format("ERROR:{}: {} violation(s) in {}\n", to_string(ErrorKind::ValidationError),
                             violations.size(), path.string());
    return 1;
  }
  std::cerr << fmt::format("{}: {} jurisdictions x {} categories, valid\n", path.string(), matrix.size(),
                           matrix.categories.size());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Composite readiness index scoring and analysis"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--data", g.data, "Dataset path (CSV or JSON); defaults to the bundled dataset");
  app.add_option("--config", g.config, "JSON configuration with weights, tiers and analysis options");
  app.add_option("--format", g.format, "Table format")->check(CLI::IsMember({"markdown", "csv", "json"}));
  app.add_option("--out", g.out, "Write results to this file instead of standard output");
  app.add_flag("--use-reported", g.use_reported, "Use the dataset's reported overall scores");

  std::string aggregation;
  auto* validate = app.add_subcommand("validate", "Check the dataset against the model invariants");
  auto* score = app.add_subcommand("score", "Aggregate, classify and rank");
  score->add_option("--aggregation", aggregation, "arithmetic or geometric (overrides config)");
  auto* stats_cmd = app.add_subcommand("stats", "Category and overall descriptive statistics");

  std::string gap_a = "research_environment";
  std::string gap_b = "professional_readiness";
  auto* gap = app.add_subcommand("gap", "Paired gap between two categories");
  gap->add_option("--a", gap_a, "Minuend category id");
  gap->add_option("--b", gap_b, "Subtrahend category id");

  std::string method = "pearson";
  auto* correlations = app.add_subcommand("correlations", "Pairwise category correlations");
  correlations->add_option("--method", method)->check(CLI::IsMember({"pearson", "spearman"}));

  bool covariance = false;
  auto* pca_cmd = app.add_subcommand("pca", "Principal components of the category scores");
  pca_cmd->add_flag("--covariance", covariance, "Use the covariance instead of the correlation matrix");

  std::string dimension;
  auto* groups = app.add_subcommand("groups", "Compare overall scores across a tag dimension");
  groups->add_option("--dimension", dimension, "Tag column, e.g. governance, region, income")->required();

  bool robust_weights = false;
  bool robust_aggregation = false;
  auto* robustness = app.add_subcommand("robustness", "Rank stability under alternative weights or aggregation");
  auto* w_flag = robustness->add_flag("--weights", robust_weights, "Perturbation family, equal and extreme weights");
  auto* a_flag = robustness->add_flag("--aggregation", robust_aggregation, "Arithmetic versus geometric aggregation");
  w_flag->excludes(a_flag);
  robustness->require_option(1);

  std::string runs_path;
  std::optional<std::size_t> threshold;
  auto* stability_cmd = app.add_subcommand("stability", "Dispersion of overall scores across scoring runs");
  stability_cmd->add_option("--runs", runs_path, "Run file (jurisdiction,run_id,overall)")->required();
  stability_cmd->add_option("--threshold", threshold, "Minimum runs for a jurisdiction to qualify");

  std::string chart_kind;
  std::string chart_dimension = "governance";
  auto* chart = app.add_subcommand("chart", "Render an SVG figure");
  chart->add_option("--kind", chart_kind, "lollipop, heatmap, dumbbell or grouped_bars")->required();
  chart->add_option("--a", gap_a, "Dumbbell first category");
  chart->add_option("--b", gap_b, "Dumbbell second category");
  chart->add_option("--dimension", chart_dimension, "Two-group tag dimension for grouped bars");

  bool full = false;
  std::optional<int> criterion;
  auto* report = app.add_subcommand("report", "Reproduce every reference statistic with PASS/FAIL checks");
  report->add_flag("--full", full, "Run the complete acceptance suite")->required();
  report->add_option("--criterion", criterion, "Run a single criterion")->check(CLI::Range(1, kCriterionCount));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (validate->parsed()) return run_validate(g);

    if (stability_cmd->parsed()) {
      const auto format = parse_table_format(g.format);
      const auto cfg = config_for(g);
      const auto runs = load_runs(runs_path);
      emit(g, render_table(stability(runs, threshold.value_or(cfg.options.runs_threshold), cfg.tiers), format));
      return 0;
    }

    const auto ctx = load(g);
    const auto& m = ctx.matrix;
    const auto& cfg = ctx.config;
    const auto overall_method = aggregation.empty() ? cfg.options.aggregation : parse_aggregation_method(aggregation);

    if (score->parsed()) {
      const auto ranking = rank_matrix(m, cfg.weights, overall_method, cfg.tiers, g.use_reported);
      emit(g, render_table(ranking, m.categories, ctx.format));
    } else if (stats_cmd->parsed()) {
      const auto overall = overall_scores(m, cfg.weights, overall_method, g.use_reported);
      const auto summary = describe(overall, {MomentEstimator::Population, GiniVariant::Population});
      emit(g, join_sections({render_table(summary, shapiro_wilk(overall), ctx.format),
                             render_table(describe_categories(m), ctx.format)},
                            ctx.format));
    } else if (gap->parsed()) {
      emit(g, render_table(gap_analysis(m, gap_a, gap_b), ctx.format));
    } else if (correlations->parsed()) {
      const auto kind = method == "spearman" ? CorrelationKind::SpearmanRho : CorrelationKind::Pearson;
      emit(g, render_table(correlation_matrix(m, kind), ctx.format));
    } else if (pca_cmd->parsed()) {
      emit(g, render_table(pca(m, !covariance), ctx.format));
    } else if (groups->parsed()) {
      const auto overall = overall_scores(m, cfg.weights, overall_method, g.use_reported);
      emit(g, render_table(group_breakdown(m, dimension, overall), ctx.format));
    } else if (robustness->parsed()) {
      if (robust_aggregation) {
        emit(g, render_table(std::vector<SchemeComparison>{compare_aggregation(m, cfg.weights, cfg.tiers)}, ctx.format));
      } else {
        const auto targets =
            cfg.options.perturbation_targets.empty() ? default_targets(cfg.weights) : cfg.options.perturbation_targets;
        auto schemes = perturbation_family(cfg.weights, targets, cfg.options.perturbation_delta, cfg.options.redistribution);
        schemes.push_back(equal_weights(m.category_ids()));
        if (m.categories.size() > 2) {
          // Two categories at 30%, the rest sharing the remainder.
          WeightScheme extreme{"extreme", {}};
          const double rest = 0.4 / static_cast<double>(m.categories.size() - 2);
          for (const auto& id : m.category_ids()) {
            const bool heavy = id == "research_environment" || id == "adaptive_capacity";
            extreme.weights.emplace_back(id, heavy ? 0.30 : rest);
          }
          if (validate_weights(extreme, m.category_ids()).empty()) schemes.push_back(extreme);
        }
        emit(g, render_table(compare_schemes(m, cfg.weights, schemes, AggregationMethod::WeightedArithmetic, cfg.tiers),
                             ctx.format));
      }
    } else if (chart->parsed()) {
      const auto kind = parse_chart_kind(chart_kind);
      ChartData data;
      const auto ranking = rank_matrix(m, cfg.weights, overall_method, cfg.tiers, g.use_reported);
      switch (kind) {
        case ChartKind::Lollipop: data = lollipop_data(ranking, cfg.tiers); break;
        case ChartKind::Heatmap: data = heatmap_data(m, ranking); break;
        case ChartKind::Dumbbell: data = dumbbell_data(m, gap_a, gap_b); break;
        case ChartKind::GroupedBars: {
          const auto overall = overall_scores(m, cfg.weights, overall_method, g.use_reported);
          data = grouped_bars_data(m, group_breakdown(m, chart_dimension, overall));
          break;
        }
      }
      emit(g, render_chart(kind, data));
    } else if (report->parsed()) {
      const auto result = run_acceptance(m, cfg, criterion);
      emit(g, render_acceptance(result, ctx.format));
      std::cerr << fmt::format("acceptance finished in {:.2f} s\n", result.elapsed_seconds);
      return result.passed() ? 0 : 1;
    }
    return 0;
  } catch (const Error& e) {
    std::cerr << fmt::format("ERROR:{}: {}\n", to_string(e.kind()), e.what());
    return 1;
  } catch (const std::exception& e) {
    std::cerr << fmt::format("ERROR:{}: {}\n", to_string(ErrorKind::IoError), e.what());
    return 1;
  }
}
