#pragma once

#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "sri/core_model.hpp"
#include "sri/io.hpp"

namespace sri::test {

inline const ScoreMatrix& sri_data() {
  static const ScoreMatrix m = load_matrix(bundled_dataset_path());
  return m;
}

inline std::vector<double> reported_overall(const ScoreMatrix& m = sri_data()) {
  std::vector<double> out;
  for (const auto& j : m.jurisdictions) out.push_back(*j.reported_overall);
  return out;
}

/// Small matrix over the default six categories, one row per score list.
inline ScoreMatrix make_matrix(const std::vector<std::pair<std::string, std::vector<double>>>& rows) {
  ScoreMatrix m;
  m.categories = default_sri_categories();
  for (const auto& [name, scores] : rows) {
    JurisdictionRecord r;
    r.name = name;
    for (std::size_t k = 0; k < m.categories.size(); ++k) r.category_scores[m.categories[k].id] = scores.at(k);
    m.jurisdictions.push_back(std::move(r));
  }
  return m;
}

}  // namespace sri::test

#define EXPECT_SRI_ERROR(stmt, expected_kind)                                  \
  do {                                                                         \
    try {                                                                      \
      stmt;                                                                    \
      ADD_FAILURE() << "expected " << ::sri::to_string(expected_kind);         \
    } catch (const ::sri::Error& e) {                                          \
      EXPECT_EQ(e.kind(), expected_kind) << e.what();                          \
    }                                                                          \
  } while (0)
