#pragma once

#include <cstddef>
#include <vector>

#include "hrix/error.hpp"

namespace hrix {

// Dense row-major matrix, sized for the small problems this toolkit solves
// (dozens of columns, not thousands).
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<double> col(std::size_t j) const;
  std::vector<double> row(std::size_t i) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix matmul(const Matrix& a, const Matrix& b);
Matrix transpose(const Matrix& a);
std::vector<double> matvec(const Matrix& a, const std::vector<double>& v);

// Cholesky factor of a symmetric positive definite matrix; throws
// RankDeficient when a pivot falls below tol relative to the largest diagonal.
Matrix cholesky(const Matrix& a, double rel_tol = 1e-12);
std::vector<double> solve_spd(const Matrix& a, const std::vector<double>& b,
                              double rel_tol = 1e-12);
Matrix inverse_spd(const Matrix& a, double rel_tol = 1e-12);

struct EigenSym {
  std::vector<double> values;  // descending
  Matrix vectors;              // column k is the eigenvector for values[k], unit norm
};

// Cyclic Jacobi eigendecomposition of a symmetric matrix. Sweeps until the
// largest off-diagonal entry is below tol * max(1, max|diag|); more than
// max_sweeps passes is a hard error.
EigenSym jacobi_eigen(Matrix a, double tol = 1e-12, int max_sweeps = 100);

}  // namespace hrix
