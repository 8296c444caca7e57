#include "sri/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include "json.hpp"

namespace sri {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

const std::string kJurisdictionColumn = "jurisdiction";
const std::string kOverallColumn = "overall";

struct CsvRow {
  std::size_t line = 0;
  std::vector<std::string> fields;
};

// RFC 4180-style reader. Lines whose first character is '#' are comments.
std::vector<CsvRow> parse_csv(std::string_view text, std::string_view source) {
  std::vector<CsvRow> rows;
  std::size_t line = 1;
  std::size_t i = 0;
  if (text.substr(0, 3) == "\xEF\xBB\xBF") i = 3;

  while (i < text.size()) {
    if (text[i] == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
      ++i;
      ++line;
      continue;
    }
    CsvRow row;
    row.line = line;
    std::string field;
    bool in_quotes = false;
    bool row_done = false;
    while (!row_done) {
      if (i >= text.size()) {
        if (in_quotes) throw Error(ErrorKind::ParseError, fmt::format("{}:{}: unterminated quoted field", source, row.line));
        row.fields.push_back(std::move(field));
        break;
      }
      const char c = text[i++];
      if (in_quotes) {
        if (c == '"') {
          if (i < text.size() && text[i] == '"') {
            field.push_back('"');
            ++i;
          } else {
            in_quotes = false;
          }
        } else {
          if (c == '\n') ++line;
          field.push_back(c);
        }
      } else if (c == '"') {
        in_quotes = true;
      } else if (c == ',') {
        row.fields.push_back(std::move(field));
        field.clear();
      } else if (c == '\r') {
        continue;
      } else if (c == '\n') {
        row.fields.push_back(std::move(field));
        row_done = true;
        ++line;
      } else {
        field.push_back(c);
      }
    }
    const bool blank = row.fields.size() == 1 && row.fields[0].empty();
    if (!blank) rows.push_back(std::move(row));
  }
  return rows;
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return std::string(s.substr(first, last - first + 1));
}

double parse_number(const std::string& cell, std::string_view where) {
  const std::string t = trim(cell);
  double value = 0.0;
  const auto* begin = t.data();
  const auto* end = t.data() + t.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (t.empty() || ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw Error(ErrorKind::ParseError, fmt::format("{}: '{}' is not a number", where, cell));
  }
  return value;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::vector<std::string> tag_dimensions(const ScoreMatrix& matrix) {
  static const std::vector<std::string> preferred = {"region", "governance", "income"};
  std::set<std::string> all;
  for (const auto& j : matrix.jurisdictions) {
    for (const auto& [dim, label] : j.tags) all.insert(dim);
  }
  std::vector<std::string> out;
  for (const auto& p : preferred) {
    if (all.erase(p)) out.push_back(p);
  }
  out.insert(out.end(), all.begin(), all.end());
  return out;
}

std::vector<CategorySpec> categories_for(const WeightScheme& weights) {
  std::vector<CategorySpec> out;
  for (const auto& [id, w] : weights.weights) out.push_back({id, display_name_for(id), w});
  return out;
}

void throw_if_invalid(const ScoreMatrix& matrix, std::string_view source) {
  const auto violations = validate_matrix(matrix);
  if (violations.empty()) return;
  std::vector<std::string> parts;
  for (const auto& v : violations) {
    std::string where = v.jurisdiction;
    if (!v.category.empty()) where += where.empty() ? v.category : "/" + v.category;
    parts.push_back(where.empty() ? v.message : fmt::format("{}: {}", where, v.message));
  }
  std::string joined;
  for (std::size_t i = 0; i < parts.size(); ++i) joined += (i ? "; " : "") + parts[i];
  throw Error(ErrorKind::ValidationError, fmt::format("{}: {}", source, joined));
}

ScoreMatrix parse_matrix_csv(std::string_view text, const WeightScheme& weights, std::string_view source) {
  const auto rows = parse_csv(text, source);
  if (rows.empty()) throw Error(ErrorKind::ParseError, fmt::format("{}: no header row", source));

  std::vector<std::string> header;
  for (const auto& h : rows.front().fields) header.push_back(trim(h));
  auto column_of = [&](std::string_view name) -> std::ptrdiff_t {
    auto it = std::find(header.begin(), header.end(), name);
    return it == header.end() ? -1 : it - header.begin();
  };

  const auto name_col = column_of(kJurisdictionColumn);
  if (name_col < 0) {
    throw Error(ErrorKind::ValidationError, fmt::format("{}: header lacks a '{}' column", source, kJurisdictionColumn));
  }
  std::vector<std::string> missing;
  std::map<std::string, std::size_t> category_cols;
  for (const auto& [id, w] : weights.weights) {
    const auto col = column_of(id);
    if (col < 0) missing.push_back(id);
    else category_cols[id] = static_cast<std::size_t>(col);
  }
  if (!missing.empty()) {
    std::string list;
    for (std::size_t i = 0; i < missing.size(); ++i) list += (i ? ", " : "") + missing[i];
    throw Error(ErrorKind::ValidationError, fmt::format("{}: header lacks category column(s): {}", source, list));
  }
  const auto overall_col = column_of(kOverallColumn);
  std::vector<std::pair<std::size_t, std::string>> tag_cols;
  for (std::size_t c = 0; c < header.size(); ++c) {
    const auto& h = header[c];
    if (h == kJurisdictionColumn || h == kOverallColumn || weights.contains(h) || h.empty()) continue;
    tag_cols.emplace_back(c, h);
  }

  ScoreMatrix matrix;
  matrix.categories = categories_for(weights);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.fields.size() != header.size()) {
      throw Error(ErrorKind::ParseError, fmt::format("{}:{}: expected {} fields, found {}", source, row.line,
                                                     header.size(), row.fields.size()));
    }
    JurisdictionRecord rec;
    rec.name = trim(row.fields[static_cast<std::size_t>(name_col)]);
    if (rec.name.empty()) {
      throw Error(ErrorKind::ParseError, fmt::format("{}:{}: empty jurisdiction name", source, row.line));
    }
    for (const auto& [id, col] : category_cols) {
      if (trim(row.fields[col]).empty()) continue;  // reported as a missing score by validation
      rec.category_scores[id] = parse_number(
          row.fields[col], fmt::format("{}:{}: row {} column {} ({})", source, row.line, r, col + 1, id));
    }
    if (overall_col >= 0) {
      const auto& cell = row.fields[static_cast<std::size_t>(overall_col)];
      if (!trim(cell).empty()) {
        rec.reported_overall = parse_number(
            cell, fmt::format("{}:{}: row {} column {} (overall)", source, row.line, r, overall_col + 1));
      }
    }
    for (const auto& [col, dim] : tag_cols) {
      auto label = trim(row.fields[col]);
      if (!label.empty()) rec.tags[dim] = std::move(label);
    }
    matrix.jurisdictions.push_back(std::move(rec));
  }
  return matrix;
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

ordered_json parse_json(std::string_view text, std::string_view source) {
  try {
    return ordered_json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    const auto [line, col] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
    throw Error(ErrorKind::ParseError, fmt::format("{}:{}:{}: malformed JSON", source, line, col));
  }
}

double json_number(const ordered_json& value, std::string_view where) {
  if (!value.is_number()) {
    throw Error(ErrorKind::ParseError, fmt::format("{}: '{}' is not a number", where, value.dump()));
  }
  return value.get<double>();
}

ScoreMatrix parse_matrix_json(std::string_view text, const WeightScheme& weights, std::string_view source) {
  const auto doc = parse_json(text, source);
  if (!doc.is_array()) {
    throw Error(ErrorKind::ParseError, fmt::format("{}: expected a top-level array of jurisdiction rows", source));
  }
  ScoreMatrix matrix;
  matrix.categories = categories_for(weights);
  for (std::size_t r = 0; r < doc.size(); ++r) {
    const auto& row = doc[r];
    const auto where = [&](std::string_view field) { return fmt::format("{}: row {} field {}", source, r + 1, field); };
    if (!row.is_object()) throw Error(ErrorKind::ParseError, fmt::format("{}: row {} is not an object", source, r + 1));
    if (!row.contains(kJurisdictionColumn) || !row[std::string(kJurisdictionColumn)].is_string()) {
      throw Error(ErrorKind::ParseError, fmt::format("{}: missing or non-string jurisdiction", where(kJurisdictionColumn)));
    }
    JurisdictionRecord rec;
    rec.name = row[std::string(kJurisdictionColumn)].get<std::string>();
    for (const auto& [key, value] : row.items()) {
      if (key == kJurisdictionColumn) continue;
      if (weights.contains(key)) {
        if (value.is_null()) continue;
        rec.category_scores[key] = json_number(value, where(key));
      } else if (key == kOverallColumn) {
        if (!value.is_null()) rec.reported_overall = json_number(value, where(key));
      } else if (value.is_string()) {
        if (!value.get<std::string>().empty()) rec.tags[key] = value.get<std::string>();
      } else if (!value.is_null()) {
        throw Error(ErrorKind::ParseError, fmt::format("{}: tag values must be strings", where(key)));
      }
    }
    matrix.jurisdictions.push_back(std::move(rec));
  }
  // Category columns must exist somewhere; a column absent from every row is a schema error.
  for (const auto& [id, w] : weights.weights) {
    const bool present = std::any_of(matrix.jurisdictions.begin(), matrix.jurisdictions.end(),
                                     [&](const auto& j) { return j.category_scores.count(id) > 0; });
    if (!present && !matrix.jurisdictions.empty()) {
      throw Error(ErrorKind::ValidationError, fmt::format("{}: no row carries category '{}'", source, id));
    }
  }
  return matrix;
}

double round2(double v) { return std::round(v * 100.0) / 100.0; }

}  // namespace

DataFormat parse_data_format(std::string_view text) {
  if (text == "csv") return DataFormat::Csv;
  if (text == "json") return DataFormat::Json;
  throw Error(ErrorKind::ParseError, fmt::format("data format must be 'csv' or 'json', got '{}'", text));
}

DataFormat format_for_path(const fs::path& path) {
  return path.extension() == ".json" ? DataFormat::Json : DataFormat::Csv;
}

std::string read_text_file(const fs::path& path) {
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) {
    throw Error(ErrorKind::FileNotFound, fmt::format("{}: no such file", path.string()));
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, fmt::format("{}: cannot open", path.string()));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

ScoreMatrix parse_matrix(std::string_view text, DataFormat format, const WeightScheme& weights,
                         std::string_view source) {
  return format == DataFormat::Csv ? parse_matrix_csv(text, weights, source)
                                   : parse_matrix_json(text, weights, source);
}

ScoreMatrix read_matrix(const fs::path& path, DataFormat format, const WeightScheme& weights) {
  return parse_matrix(read_text_file(path), format, weights, path.string());
}

ScoreMatrix load_matrix(const fs::path& path, DataFormat format, const WeightScheme& weights) {
  auto matrix = read_matrix(path, format, weights);
  throw_if_invalid(matrix, path.string());
  return matrix;
}

ScoreMatrix load_matrix(const fs::path& path) {
  return load_matrix(path, format_for_path(path), default_sri_config().weights);
}

std::string format_score(double value) {
  std::string s = fmt::format("{:.2f}", round2(value));
  if (s.find('.') != std::string::npos) {
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
  }
  if (s == "-0") s = "0";
  return s;
}

std::string serialize_matrix(const ScoreMatrix& matrix, DataFormat format) {
  const auto dims = tag_dimensions(matrix);
  const bool has_overall = std::any_of(matrix.jurisdictions.begin(), matrix.jurisdictions.end(),
                                       [](const auto& j) { return j.reported_overall.has_value(); });
  if (format == DataFormat::Json) {
    ordered_json doc = ordered_json::array();
    for (const auto& j : matrix.jurisdictions) {
      ordered_json row;
      row[std::string(kJurisdictionColumn)] = j.name;
      for (const auto& c : matrix.categories) row[c.id] = round2(j.score(c.id));
      if (has_overall) row[std::string(kOverallColumn)] = j.reported_overall ? ordered_json(round2(*j.reported_overall)) : ordered_json();
      for (const auto& d : dims) row[d] = j.tag(d) ? ordered_json(*j.tag(d)) : ordered_json();
      doc.push_back(std::move(row));
    }
    return doc.dump(2) + "\n";
  }

  std::string out(kJurisdictionColumn);
  for (const auto& c : matrix.categories) out += "," + csv_escape(c.id);
  if (has_overall) out += "," + std::string(kOverallColumn);
  for (const auto& d : dims) out += "," + csv_escape(d);
  out += "\n";
  for (const auto& j : matrix.jurisdictions) {
    out += csv_escape(j.name);
    for (const auto& c : matrix.categories) out += "," + format_score(j.score(c.id));
    if (has_overall) out += "," + (j.reported_overall ? format_score(*j.reported_overall) : std::string());
    for (const auto& d : dims) out += "," + csv_escape(j.tag(d).value_or(""));
    out += "\n";
  }
  return out;
}

std::vector<MultiRunRecord> parse_runs(std::string_view text, std::string_view source) {
  const auto rows = parse_csv(text, source);
  if (rows.empty()) throw Error(ErrorKind::ParseError, fmt::format("{}: no header row", source));
  const auto& header = rows.front().fields;
  auto col = [&](std::string_view name) -> std::size_t {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (trim(header[i]) == name) return i;
    }
    throw Error(ErrorKind::ValidationError, fmt::format("{}: run file lacks a '{}' column", source, name));
  };
  const auto name_col = col("jurisdiction");
  const auto run_col = col("run_id");
  const auto score_col = col("overall");

  std::vector<MultiRunRecord> out;
  std::map<std::string, std::size_t> index;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.fields.size() != header.size()) {
      throw Error(ErrorKind::ParseError, fmt::format("{}:{}: expected {} fields, found {}", source, row.line,
                                                     header.size(), row.fields.size()));
    }
    const auto name = trim(row.fields[name_col]);
    const auto run_id = trim(row.fields[run_col]);
    const double score = parse_number(row.fields[score_col], fmt::format("{}:{}: column overall", source, row.line));
    if (!(score >= kMinScore && score <= kMaxScore)) {
      throw Error(ErrorKind::ValidationError, fmt::format("{}:{}: run score {} outside [0,100]", source, row.line, score));
    }
    auto [it, inserted] = index.emplace(name, out.size());
    if (inserted) out.push_back({name, {}});
    auto& record = out[it->second];
    for (const auto& [existing, s] : record.run_scores) {
      if (existing == run_id) {
        throw Error(ErrorKind::ValidationError,
                    fmt::format("{}:{}: run id '{}' repeated for '{}'", source, row.line, run_id, name));
      }
    }
    record.run_scores.emplace_back(run_id, score);
  }
  return out;
}

std::vector<MultiRunRecord> load_runs(const fs::path& path) { return parse_runs(read_text_file(path), path.string()); }

std::string serialize_runs(const std::vector<MultiRunRecord>& runs) {
  std::string out = "jurisdiction,run_id,overall\n";
  for (const auto& r : runs) {
    for (const auto& [run_id, score] : r.run_scores) {
      out += fmt::format("{},{},{}\n", csv_escape(r.jurisdiction), csv_escape(run_id), format_score(score));
    }
  }
  return out;
}

AnalysisConfig default_analysis_config() {
  const auto defaults = default_sri_config();
  return {defaults.weights, defaults.tiers, {}};
}

AnalysisConfig parse_config(std::string_view text, std::string_view source) {
  AnalysisConfig config = default_analysis_config();
  if (trim(text).empty()) return config;
  const auto doc = parse_json(text, source);
  if (!doc.is_object()) throw Error(ErrorKind::ParseError, fmt::format("{}: config must be a JSON object", source));

  if (doc.contains("weights")) {
    const auto& w = doc["weights"];
    if (!w.is_object()) throw Error(ErrorKind::ParseError, fmt::format("{}: 'weights' must be an object", source));
    WeightScheme scheme{"configured", {}};
    for (const auto& [id, value] : w.items()) {
      scheme.weights.emplace_back(id, json_number(value, fmt::format("{}: weights.{}", source, id)));
    }
    std::vector<std::string> ids;
    for (const auto& [id, value] : scheme.weights) ids.push_back(id);
    const auto problems = validate_weights(scheme, ids);
    if (!problems.empty()) {
      throw Error(ErrorKind::InvalidWeights, fmt::format("{}: {}", source, problems.front()));
    }
    config.weights = std::move(scheme);
  }

  if (doc.contains("tiers")) {
    const auto& t = doc["tiers"];
    if (!t.is_array()) throw Error(ErrorKind::ParseError, fmt::format("{}: 'tiers' must be an array", source));
    TierScheme tiers;
    for (std::size_t i = 0; i < t.size(); ++i) {
      const auto& band = t[i];
      const auto where = fmt::format("{}: tiers[{}]", source, i);
      if (!band.is_object() || !band.contains("name") || !band["name"].is_string() || !band.contains("lo") ||
          !band.contains("hi")) {
        throw Error(ErrorKind::ParseError, fmt::format("{}: expected {{name, lo, hi}}", where));
      }
      tiers.bands.push_back({band["name"].get<std::string>(), json_number(band["lo"], where + ".lo"),
                             json_number(band["hi"], where + ".hi")});
    }
    const auto problems = validate_tiers(tiers);
    if (!problems.empty()) throw Error(ErrorKind::InvalidTiers, fmt::format("{}: {}", source, problems.front()));
    config.tiers = std::move(tiers);
  }

  if (doc.contains("aggregation")) {
    if (!doc["aggregation"].is_string()) {
      throw Error(ErrorKind::ParseError, fmt::format("{}: 'aggregation' must be a string", source));
    }
    config.options.aggregation = parse_aggregation_method(doc["aggregation"].get<std::string>());
  }
  if (doc.contains("runs_threshold")) {
    const double v = json_number(doc["runs_threshold"], fmt::format("{}: runs_threshold", source));
    if (v < 2 || v != std::floor(v)) {
      throw Error(ErrorKind::ParseError, fmt::format("{}: runs_threshold must be an integer >= 2", source));
    }
    config.options.runs_threshold = static_cast<std::size_t>(v);
  }
  if (doc.contains("perturbation_delta")) {
    config.options.perturbation_delta = json_number(doc["perturbation_delta"], fmt::format("{}: perturbation_delta", source));
  }
  if (doc.contains("perturbation_targets")) {
    const auto& targets = doc["perturbation_targets"];
    if (!targets.is_array()) throw Error(ErrorKind::ParseError, fmt::format("{}: 'perturbation_targets' must be an array", source));
    for (const auto& t : targets) {
      if (!t.is_string()) throw Error(ErrorKind::ParseError, fmt::format("{}: perturbation targets must be strings", source));
      config.options.perturbation_targets.push_back(t.get<std::string>());
    }
  }
  if (doc.contains("redistribution")) {
    const auto policy = doc["redistribution"].is_string() ? doc["redistribution"].get<std::string>() : std::string();
    if (policy == "equal_spread") config.options.redistribution = RedistributionPolicy::EqualSpread;
    else if (policy == "proportional") config.options.redistribution = RedistributionPolicy::Proportional;
    else throw Error(ErrorKind::ParseError, fmt::format("{}: redistribution must be 'equal_spread' or 'proportional'", source));
  }
  return config;
}

AnalysisConfig load_config(const fs::path& path) { return parse_config(read_text_file(path), path.string()); }

fs::path data_directory() {
  if (const char* env = std::getenv("SRI_DATA_DIR"); env != nullptr && *env != '\0') return fs::path(env);
  return fs::path(SRI_BUNDLED_DATA_DIR);
}

fs::path bundled_dataset_path() { return data_directory() / "sri_2025.csv"; }

fs::path resolve_data_path(const fs::path& path) {
  std::error_code ec;
  if (fs::exists(path, ec)) return path;
  if (path.is_relative()) {
    const auto candidate = data_directory() / path;
    if (fs::exists(candidate, ec)) return candidate;
  }
  throw Error(ErrorKind::FileNotFound, fmt::format("{}: no such file", path.string()));
}

}  // namespace sri
