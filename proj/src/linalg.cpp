#include "ams/linalg.hpp"

#include <cmath>
#include <utility>

#include "ams/errors.hpp"

namespace ams {

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<Scalar> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_) throw InvariantViolation("matrix data size mismatch");
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(const std::vector<Vector>& rows) {
  std::size_t cols = rows.empty() ? 0 : rows.front().size();
  Matrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw InvariantViolation("ragged matrix rows");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Vector Matrix::row(std::size_t i) const {
  return Vector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

Matrix Matrix::to_mode(Arith mode) const {
  return Matrix(rows_, cols_, ams::to_mode(data_, mode));
}

bool Matrix::exact() const { return all_exact(data_); }

bool operator==(const Matrix& a, const Matrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw InvariantViolation("matrix product shape mismatch");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Scalar& aik = a(i, k);
      if (aik.exact() && sgn(aik.rational()) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

Vector operator*(const Vector& v, const Matrix& m) {
  if (v.size() != m.rows()) throw InvariantViolation("vector-matrix shape mismatch");
  Vector out(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (v[i].exact() && sgn(v[i].rational()) == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] += v[i] * m(i, j);
  }
  return out;
}

bool is_probability_vector(const Vector& v) {
  for (const auto& x : v) {
    if (x.negative() || x > Scalar(1)) return false;
  }
  return sum(v).is_one();
}

bool is_row_stochastic(const Matrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (!is_probability_vector(m.row(i))) return false;
  }
  return true;
}

namespace {

Matrix solve_exact(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.rows();
  const std::size_t m = b.cols();
  const std::size_t w = n + m;
  // Scale each augmented row by the lcm of its denominators.
  std::vector<mpz_class> z(n * w);
  for (std::size_t i = 0; i < n; ++i) {
    mpz_class l = 1;
    auto den = [&](std::size_t j) -> const mpz_class& {
      return j < n ? a(i, j).rational().get_den() : b(i, j - n).rational().get_den();
    };
    for (std::size_t j = 0; j < w; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), den(j).get_mpz_t());
    for (std::size_t j = 0; j < w; ++j) {
      const mpq_class& q = j < n ? a(i, j).rational() : b(i, j - n).rational();
      z[i * w + j] = q.get_num() * (l / q.get_den());
    }
  }
  auto at = [&](std::size_t i, std::size_t j) -> mpz_class& { return z[i * w + j]; };

  mpz_class prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && at(p, k) == 0) ++p;
    if (p == n) throw InvariantViolation("singular linear system");
    if (p != k) {
      for (std::size_t j = 0; j < w; ++j) std::swap(at(p, j), at(k, j));
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < w; ++j) {
        mpz_class t = at(i, j) * at(k, k) - at(i, k) * at(k, j);
        mpz_divexact(at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      at(i, k) = 0;
    }
    prev = at(k, k);
  }

  Matrix x(n, m);
  for (std::size_t c = 0; c < m; ++c) {
    for (std::size_t ii = n; ii-- > 0;) {
      mpq_class acc(at(ii, n + c));
      for (std::size_t j = ii + 1; j < n; ++j) acc -= mpq_class(at(ii, j)) * x(j, c).rational();
      acc /= mpq_class(at(ii, ii));
      x(ii, c) = Scalar(std::move(acc));
    }
  }
  return x;
}

Matrix solve_float(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.rows();
  const std::size_t m = b.cols();
  std::vector<double> lhs(n * n);
  std::vector<double> rhs(n * m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) lhs[i * n + j] = a(i, j).to_double();
    for (std::size_t j = 0; j < m; ++j) rhs[i * m + j] = b(i, j).to_double();
  }
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::fabs(lhs[i * n + k]) > std::fabs(lhs[p * n + k])) p = i;
    }
    if (std::fabs(lhs[p * n + k]) < 1e-300) throw InvariantViolation("singular linear system");
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lhs[p * n + j], lhs[k * n + j]);
      for (std::size_t j = 0; j < m; ++j) std::swap(rhs[p * m + j], rhs[k * m + j]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      double f = lhs[i * n + k] / lhs[k * n + k];
      if (f == 0.0) continue;
      for (std::size_t j = k; j < n; ++j) lhs[i * n + j] -= f * lhs[k * n + j];
      for (std::size_t j = 0; j < m; ++j) rhs[i * m + j] -= f * rhs[k * m + j];
    }
  }
  Matrix x(n, m);
  for (std::size_t c = 0; c < m; ++c) {
    for (std::size_t ii = n; ii-- > 0;) {
      double acc = rhs[ii * m + c];
      for (std::size_t j = ii + 1; j < n; ++j) acc -= lhs[ii * n + j] * x(j, c).to_double();
      x(ii, c) = Scalar(acc / lhs[ii * n + ii]);
    }
  }
  return x;
}

}  // namespace

Matrix solve(const Matrix& a, const Matrix& b) {
  if (!a.square() || a.rows() != b.rows()) throw InvariantViolation("solve shape mismatch");
  if (a.rows() == 0) return Matrix(0, b.cols());
  if (a.exact() && b.exact()) return solve_exact(a, b);
  return solve_float(a, b);
}

Vector solve(const Matrix& a, const Vector& b) {
  Matrix rhs(b.size(), 1, b);
  Matrix x = solve(a, rhs);
  Vector out(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = x(i, 0);
  return out;
}

}  // namespace ams
