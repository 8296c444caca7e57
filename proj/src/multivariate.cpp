#include "sri/multivariate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

namespace sri {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  }
  return t;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorKind::PreconditionViolation, "matrix shapes do not conform");
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

namespace {

double off_diagonal_norm(const Matrix& m) {
  double total = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (i != j) total += m(i, j) * m(i, j);
    }
  }
  return std::sqrt(total);
}

}  // namespace

EigenDecomposition jacobi_eigen(const Matrix& symmetric, double tolerance, int max_sweeps) {
  const std::size_t n = symmetric.rows();
  if (symmetric.cols() != n) throw Error(ErrorKind::PreconditionViolation, "eigen-solver needs a square matrix");

  Matrix a = symmetric;
  Matrix v = Matrix::identity(n);
  int sweep = 0;
  while (off_diagonal_norm(a) >= tolerance && sweep < max_sweeps) {
    ++sweep;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        // Rotation angle zeroing a(p,q): tan(2 theta) = 2 apq / (aqq - app).
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return a(x, x) > a(y, y); });

  EigenDecomposition out;
  out.sweeps = sweep;
  out.vectors = Matrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values.push_back(a(order[k], order[k]));
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, k) = v(r, order[k]);
  }
  return out;
}

namespace {

Matrix dispersion_matrix(const ScoreMatrix& matrix, bool standardized) {
  const auto ids = matrix.category_ids();
  const std::size_t k = ids.size();
  std::vector<std::vector<double>> columns;
  for (const auto& id : ids) columns.push_back(matrix.column(id));

  std::vector<double> means(k);
  std::vector<double> sds(k);
  for (std::size_t i = 0; i < k; ++i) {
    means[i] = mean(columns[i]);
    sds[i] = sample_sd(columns[i]);
    if (standardized && sds[i] == 0.0) {
      throw Error(ErrorKind::ConstantColumn, fmt::format("category '{}' is constant", ids[i]));
    }
  }

  const double denom = static_cast<double>(matrix.size()) - 1.0;
  Matrix m(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i; j < k; ++j) {
      double s = 0.0;
      for (std::size_t r = 0; r < matrix.size(); ++r) {
        s += (columns[i][r] - means[i]) * (columns[j][r] - means[j]);
      }
      double value = s / denom;
      if (standardized) value = (i == j) ? 1.0 : value / (sds[i] * sds[j]);
      m(i, j) = value;
      m(j, i) = value;
    }
  }
  return m;
}

}  // namespace

PcaResult pca(const ScoreMatrix& matrix, bool standardized) {
  if (matrix.size() < 3) {
    throw Error(ErrorKind::TooFewObservations, fmt::format("PCA needs >= 3 jurisdictions, got {}", matrix.size()));
  }
  const Matrix dispersion = dispersion_matrix(matrix, standardized);
  const auto eig = jacobi_eigen(dispersion);
  const std::size_t k = eig.values.size();

  PcaResult result;
  result.categories = matrix.category_ids();
  result.standardized = standardized;
  result.component_count = k;
  result.eigenvalues = eig.values;
  result.loadings = Matrix(k, k);

  double total = 0.0;
  for (double v : eig.values) total += std::max(0.0, v);
  for (double v : eig.values) result.explained_variance_ratio.push_back(total > 0 ? std::max(0.0, v) / total : 0.0);

  for (std::size_t comp = 0; comp < k; ++comp) {
    std::size_t dominant = 0;
    for (std::size_t c = 1; c < k; ++c) {
      if (std::abs(eig.vectors(c, comp)) > std::abs(eig.vectors(dominant, comp)) + 1e-12) dominant = c;
    }
    const double sign = eig.vectors(dominant, comp) < 0 ? -1.0 : 1.0;
    for (std::size_t c = 0; c < k; ++c) result.loadings(comp, c) = sign * eig.vectors(c, comp);
  }
  return result;
}

CorrelationMatrix correlation_matrix(const ScoreMatrix& matrix, CorrelationKind kind) {
  if (kind == CorrelationKind::KendallTauB) {
    throw Error(ErrorKind::PreconditionViolation, "correlation matrix supports pearson and spearman");
  }
  if (matrix.size() < 3) {
    throw Error(ErrorKind::TooFewObservations, "correlation matrix needs >= 3 jurisdictions");
  }
  const auto ids = matrix.category_ids();
  const std::size_t k = ids.size();
  std::vector<std::vector<double>> columns;
  for (const auto& id : ids) columns.push_back(matrix.column(id));

  CorrelationMatrix out{ids, kind, Matrix(k, k), Matrix(k, k)};
  for (std::size_t i = 0; i < k; ++i) {
    out.coefficients(i, i) = 1.0;
    out.p_values(i, i) = 0.0;
    for (std::size_t j = i + 1; j < k; ++j) {
      const auto r = kind == CorrelationKind::Pearson ? pearson(columns[i], columns[j])
                                                      : spearman(columns[i], columns[j]);
      out.coefficients(i, j) = out.coefficients(j, i) = r.coefficient;
      out.p_values(i, j) = out.p_values(j, i) = r.p_value;
    }
  }
  return out;
}

}  // namespace sri
