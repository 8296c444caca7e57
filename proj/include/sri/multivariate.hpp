#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "sri/core_model.hpp"
#include "sri/stats.hpp"

namespace sri {

/// Dense row-major matrix; small sizes only (category count squared).
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Matrix transposed() const;
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

struct EigenDecomposition {
  std::vector<double> values;  // descending
  Matrix vectors;              // column k is the eigenvector for values[k]
  int sweeps = 0;
};

/// Cyclic Jacobi rotations until the off-diagonal Frobenius norm drops
/// below `tolerance`. Input must be symmetric.
EigenDecomposition jacobi_eigen(const Matrix& symmetric, double tolerance = 1e-12, int max_sweeps = 100);

struct PcaResult {
  std::vector<std::string> categories;
  std::vector<double> eigenvalues;
  std::vector<double> explained_variance_ratio;
  Matrix loadings;  // component x category, rows orthonormal
  std::size_t component_count = 0;
  bool standardized = true;
};

/// Correlation-matrix PCA when `standardized`, covariance PCA otherwise.
/// Each component is signed so its largest-magnitude loading is positive.
PcaResult pca(const ScoreMatrix& matrix, bool standardized = true);

struct CorrelationMatrix {
  std::vector<std::string> categories;
  CorrelationKind kind = CorrelationKind::Pearson;
  Matrix coefficients;
  Matrix p_values;
};

/// Accepts Pearson or SpearmanRho.
CorrelationMatrix correlation_matrix(const ScoreMatrix& matrix, CorrelationKind kind = CorrelationKind::Pearson);

}  // namespace sri
