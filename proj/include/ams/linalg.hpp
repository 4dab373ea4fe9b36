// Dense matrices over Scalar and the linear solves shared by the Markov-chain
// code: Cesaro limits, absorption probabilities and hitting probabilities.

#pragma once

#include <cstddef>
#include <vector>

#include "ams/scalar.hpp"

namespace ams {

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<Scalar> data);

  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<Vector>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vector row(std::size_t i) const;
  Matrix to_mode(Arith mode) const;
  bool exact() const;

  friend bool operator==(const Matrix& a, const Matrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
/// Row vector times matrix.
Vector operator*(const Vector& v, const Matrix& m);

/// Every entry in the unit interval and every row summing to one (exactly in
/// rational mode).
bool is_row_stochastic(const Matrix& m);
bool is_probability_vector(const Vector& v);

/// Solves A X = B for square nonsingular A. Exact inputs go through
/// fraction-free (Bareiss) elimination on integer-scaled rows; anything else
/// uses partial-pivoting Gaussian elimination in double.
Matrix solve(const Matrix& a, const Matrix& b);
Vector solve(const Matrix& a, const Vector& b);

}  // namespace ams
