#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace gossip {

/// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  double& operator()(std::size_t r, std::size_t c) noexcept {
    return data_[r * cols_ + c];
  }
  double operator()(std::size_t r, std::size_t c) const noexcept {
    return data_[r * cols_ + c];
  }

  std::span<double> row(std::size_t r) noexcept {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<const double> row(std::size_t r) const noexcept {
    return {data_.data() + r * cols_, cols_};
  }

  std::vector<double> column(std::size_t c) const;

  std::span<const double> data() const noexcept { return data_; }
  std::span<double> data() noexcept { return data_; }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix transpose(const Matrix& a);
Matrix multiply(const Matrix& a, const Matrix& b);
/// aᵀ·a, accumulated in row order.
Matrix gram(const Matrix& a);
Matrix subtract(const Matrix& a, const Matrix& b);
double frobenius_norm(const Matrix& a);
double max_abs(const Matrix& a);
double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);

struct SymEigen {
  std::vector<double> values;  // descending
  Matrix vectors;              // column i pairs with values[i]
};

/// Full spectrum of a symmetric matrix by cyclic Jacobi rotations.
///
/// Sweeps run until the off-diagonal Frobenius norm drops below
/// 1e-12 * ||m||_F. Values are stably sorted in descending order and every
/// eigenvector is signed so its largest-magnitude entry (first on ties) is
/// positive. Throws InvalidInput for non-square or asymmetric input.
SymEigen sym_eigen(const Matrix& m);

/// Lower-triangular L with L·Lᵀ = r. Throws NotPositiveDefinite carrying the
/// 0-based index of the first pivot that is not strictly positive and finite.
Matrix cholesky(const Matrix& r);

/// x with x·Lᵀ = row, i.e. forward substitution L·x = row.
std::vector<double> solve_transposed_lower(std::span<const double> row, const Matrix& l);

}  // namespace gossip
