// Acceptance runner: prints one PASS/FAIL line per criterion.
// Usage: sri_acceptance [criterion-number]

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "sri/acceptance.hpp"
#include "sri/io.hpp"

int main(int argc, char** argv) {
  std::optional<int> only;
  if (argc > 1) only = std::atoi(argv[1]);
  try {
    const auto config = sri::default_analysis_config();
    const auto matrix = sri::load_matrix(sri::bundled_dataset_path());
    const auto report = sri::run_acceptance(matrix, config, only);
    std::cout << sri::render_acceptance(report, sri::TableFormat::Markdown);
    return report.passed() ? 0 : 1;
  } catch (const sri::Error& e) {
    std::cerr << "ERROR:" << sri::to_string(e.kind()) << ": " << e.what() << "\n";
    return 1;
  }
}
