#include "sri/core_model.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <set>

#include <fmt/format.h>

namespace sri {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::PreconditionViolation: return "PreconditionViolation";
    case ErrorKind::GeometricZeroScore: return "GeometricZeroScore";
    case ErrorKind::MissingReportedOverall: return "MissingReportedOverall";
    case ErrorKind::DegenerateInput: return "DegenerateInput";
    case ErrorKind::ConstantVector: return "ConstantVector";
    case ErrorKind::SampleSizeOutOfRange: return "SampleSizeOutOfRange";
    case ErrorKind::AllZeroDifferences: return "AllZeroDifferences";
    case ErrorKind::DegenerateVariance: return "DegenerateVariance";
    case ErrorKind::EmptyGroup: return "EmptyGroup";
    case ErrorKind::TooFewObservations: return "TooFewObservations";
    case ErrorKind::InvalidDf: return "InvalidDf";
    case ErrorKind::ConstantColumn: return "ConstantColumn";
    case ErrorKind::NegativeWeightProduced: return "NegativeWeightProduced";
    case ErrorKind::UnknownCategory: return "UnknownCategory";
    case ErrorKind::UnknownJurisdiction: return "UnknownJurisdiction";
    case ErrorKind::SingleGroup: return "SingleGroup";
    case ErrorKind::OverlappingSets: return "OverlappingSets";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
    case ErrorKind::InvalidWeights: return "InvalidWeights";
    case ErrorKind::InvalidTiers: return "InvalidTiers";
    case ErrorKind::EmptyData: return "EmptyData";
    case ErrorKind::FileNotFound: return "FileNotFound";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(message), kind_(kind) {}

double WeightScheme::weight_of(std::string_view id) const {
  for (const auto& [cat, w] : weights) {
    if (cat == id) return w;
  }
  throw Error(ErrorKind::UnknownCategory,
              fmt::format("weight scheme '{}' has no category '{}'", name, id));
}

bool WeightScheme::contains(std::string_view id) const noexcept {
  return std::any_of(weights.begin(), weights.end(),
                     [&](const auto& entry) { return entry.first == id; });
}

double WeightScheme::sum() const noexcept {
  double total = 0.0;
  for (const auto& entry : weights) total += entry.second;
  return total;
}

double JurisdictionRecord::score(std::string_view category_id) const {
  auto it = category_scores.find(std::string(category_id));
  if (it == category_scores.end()) {
    throw Error(ErrorKind::UnknownCategory,
                fmt::format("jurisdiction '{}' has no score for '{}'", name, category_id));
  }
  return it->second;
}

std::optional<std::string> JurisdictionRecord::tag(std::string_view dimension) const {
  auto it = tags.find(std::string(dimension));
  if (it == tags.end() || it->second.empty()) return std::nullopt;
  return it->second;
}

std::vector<std::string> ScoreMatrix::category_ids() const {
  std::vector<std::string> ids;
  ids.reserve(categories.size());
  for (const auto& c : categories) ids.push_back(c.id);
  return ids;
}

const CategorySpec& ScoreMatrix::category(std::string_view id) const {
  for (const auto& c : categories) {
    if (c.id == id) return c;
  }
  throw Error(ErrorKind::UnknownCategory, fmt::format("unknown category '{}'", id));
}

const JurisdictionRecord& ScoreMatrix::jurisdiction(std::string_view name) const {
  for (const auto& j : jurisdictions) {
    if (j.name == name) return j;
  }
  throw Error(ErrorKind::UnknownJurisdiction, fmt::format("unknown jurisdiction '{}'", name));
}

std::vector<double> ScoreMatrix::column(std::string_view category_id) const {
  category(category_id);
  std::vector<double> out;
  out.reserve(jurisdictions.size());
  for (const auto& j : jurisdictions) out.push_back(j.score(category_id));
  return out;
}

WeightScheme ScoreMatrix::weight_scheme(std::string name) const {
  WeightScheme scheme{std::move(name), {}};
  for (const auto& c : categories) scheme.weights.emplace_back(c.id, c.weight);
  return scheme;
}

std::size_t TierScheme::index_of(double score) const {
  if (bands.empty()) throw Error(ErrorKind::InvalidTiers, "tier scheme has no bands");
  if (!(score >= bands.front().lo && score <= bands.back().hi)) {
    throw Error(ErrorKind::PreconditionViolation,
                fmt::format("score {} outside tier coverage [{}, {}]", score, bands.front().lo,
                            bands.back().hi));
  }
  for (std::size_t i = 0; i + 1 < bands.size(); ++i) {
    if (score < bands[i].hi) return i;
  }
  return bands.size() - 1;
}

std::string_view to_string(Violation::Kind kind) noexcept {
  switch (kind) {
    case Violation::Kind::Range: return "range";
    case Violation::Kind::MissingScore: return "missing_score";
    case Violation::Kind::DuplicateJurisdiction: return "duplicate_jurisdiction";
    case Violation::Kind::DuplicateCategory: return "duplicate_category";
    case Violation::Kind::Shape: return "shape";
    case Violation::Kind::Weight: return "weight";
  }
  return "unknown";
}

namespace {

std::string lowercase(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

bool in_score_range(double v) { return std::isfinite(v) && v >= kMinScore && v <= kMaxScore; }

}  // namespace

std::vector<Violation> validate_matrix(const ScoreMatrix& matrix) {
  std::vector<Violation> out;
  using K = Violation::Kind;

  if (matrix.categories.size() < 2) {
    out.push_back({K::Shape, "", "",
                   fmt::format("need at least 2 categories, have {}", matrix.categories.size())});
  }
  if (matrix.jurisdictions.size() < 3) {
    out.push_back({K::Shape, "", "",
                   fmt::format("need at least 3 jurisdictions, have {}",
                               matrix.jurisdictions.size())});
  }

  std::set<std::string> seen_categories;
  for (const auto& c : matrix.categories) {
    if (!seen_categories.insert(c.id).second) {
      out.push_back({K::DuplicateCategory, "", c.id, fmt::format("category '{}' repeated", c.id)});
    }
    if (!(c.weight >= 0.0 && c.weight <= 1.0)) {
      out.push_back({K::Weight, "", c.id, fmt::format("weight {} outside [0,1]", c.weight)});
    }
  }
  if (!matrix.categories.empty()) {
    const double total = matrix.weight_scheme().sum();
    if (std::abs(total - 1.0) > kWeightSumTolerance) {
      out.push_back({K::Weight, "", "", fmt::format("category weights sum to {}, not 1", total)});
    }
  }

  std::set<std::string> seen_names;
  for (const auto& j : matrix.jurisdictions) {
    if (!seen_names.insert(lowercase(j.name)).second) {
      out.push_back({K::DuplicateJurisdiction, j.name, "",
                     fmt::format("jurisdiction '{}' duplicates an earlier name", j.name)});
    }
    for (const auto& c : matrix.categories) {
      auto it = j.category_scores.find(c.id);
      if (it == j.category_scores.end()) {
        out.push_back({K::MissingScore, j.name, c.id, "missing score"});
      } else if (!in_score_range(it->second)) {
        out.push_back({K::Range, j.name, c.id,
                       fmt::format("score {} outside [0,100]", it->second)});
      }
    }
    if (j.reported_overall && !in_score_range(*j.reported_overall)) {
      out.push_back({K::Range, j.name, "overall",
                     fmt::format("reported overall {} outside [0,100]", *j.reported_overall)});
    }
  }
  return out;
}

std::vector<std::string> validate_weights(const WeightScheme& weights,
                                          const std::vector<std::string>& category_ids) {
  std::vector<std::string> problems;
  std::set<std::string> seen;
  for (const auto& [id, w] : weights.weights) {
    if (!seen.insert(id).second) problems.push_back(fmt::format("category '{}' weighted twice", id));
    if (std::find(category_ids.begin(), category_ids.end(), id) == category_ids.end()) {
      problems.push_back(fmt::format("unknown category '{}'", id));
    }
    if (!(w >= 0.0 && w <= 1.0)) problems.push_back(fmt::format("weight {} for '{}' outside [0,1]", w, id));
  }
  for (const auto& id : category_ids) {
    if (!seen.count(id)) problems.push_back(fmt::format("category '{}' has no weight", id));
  }
  const double total = weights.sum();
  if (std::abs(total - 1.0) > kWeightSumTolerance) {
    problems.push_back(fmt::format("weights sum to {:.6g}, not 1", total));
  }
  return problems;
}

std::vector<std::string> validate_tiers(const TierScheme& tiers) {
  std::vector<std::string> problems;
  if (tiers.bands.empty()) {
    problems.emplace_back("no tier bands");
    return problems;
  }
  if (tiers.bands.front().lo != kMinScore) {
    problems.push_back(fmt::format("gap at [{:g},{:g})", kMinScore, tiers.bands.front().lo));
  }
  if (tiers.bands.back().hi != kMaxScore) {
    problems.push_back(fmt::format("bands end at {:g}, not {:g}", tiers.bands.back().hi, kMaxScore));
  }
  for (std::size_t i = 0; i < tiers.bands.size(); ++i) {
    const auto& b = tiers.bands[i];
    if (!(b.lo < b.hi)) problems.push_back(fmt::format("band '{}' is empty or inverted", b.name));
    if (i + 1 < tiers.bands.size()) {
      const auto& next = tiers.bands[i + 1];
      if (next.lo > b.hi) {
        problems.push_back(fmt::format("gap at [{:g},{:g})", b.hi, next.lo));
      } else if (next.lo < b.hi) {
        problems.push_back(fmt::format("overlap at [{:g},{:g})", next.lo, b.hi));
      }
    }
  }
  return problems;
}

std::string display_name_for(std::string_view category_id) {
  static const std::map<std::string, std::string, std::less<>> known = {
      {"policy_environment", "Policy Environment"},
      {"institutional_engagement", "Institutional Engagement"},
      {"research_environment", "Research Environment"},
      {"professional_readiness", "Professional Readiness"},
      {"public_discourse", "Public Discourse"},
      {"adaptive_capacity", "Adaptive Capacity"},
  };
  if (auto it = known.find(category_id); it != known.end()) return it->second;

  std::string out;
  bool word_start = true;
  for (char c : category_id) {
    if (c == '_' || c == '-') {
      out.push_back(' ');
      word_start = true;
    } else {
      out.push_back(word_start ? static_cast<char>(std::toupper(static_cast<unsigned char>(c))) : c);
      word_start = false;
    }
  }
  return out;
}

std::vector<CategorySpec> default_sri_categories() {
  const std::vector<std::pair<std::string, double>> weights = {
      {"policy_environment", 0.20},     {"institutional_engagement", 0.15},
      {"research_environment", 0.15},   {"professional_readiness", 0.20},
      {"public_discourse", 0.15},       {"adaptive_capacity", 0.15},
  };
  std::vector<CategorySpec> out;
  for (const auto& [id, w] : weights) out.push_back({id, display_name_for(id), w});
  return out;
}

SriConfig default_sri_config() {
  SriConfig config;
  config.weights.name = "baseline";
  for (const auto& c : default_sri_categories()) config.weights.weights.emplace_back(c.id, c.weight);
  config.tiers.bands = {
      {"Unprepared", 0.0, 20.0},
      {"Minimally Prepared", 20.0, 40.0},
      {"Partially Prepared", 40.0, 60.0},
      {"Moderately Prepared", 60.0, 80.0},
      {"Well Prepared", 80.0, 100.0},
  };
  return config;
}

}  // namespace sri
