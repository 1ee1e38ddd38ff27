#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "holocalc/errors.hpp"

namespace holocalc {

using Complex = std::complex<double>;
using Vector = std::vector<Complex>;

/// Dense complex matrix, row major. All operations are value semantic;
/// instances are immutable after construction by convention (nothing in the
/// library mutates a matrix it did not create).
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n);
  static Matrix zero(std::size_t n) { return Matrix(n, n); }
  static Matrix diagonal(const Vector& d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Complex& operator()(std::size_t i, std::size_t j) {
    return data_[i * cols_ + j];
  }
  const Complex& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  const std::vector<Complex>& data() const { return data_; }

  Matrix& operator+=(const Matrix& rhs);
  Matrix& operator-=(const Matrix& rhs);
  Matrix& operator*=(Complex s);

  friend Matrix operator+(Matrix lhs, const Matrix& rhs) { return lhs += rhs; }
  friend Matrix operator-(Matrix lhs, const Matrix& rhs) { return lhs -= rhs; }
  Matrix operator-() const { return *this * Complex(-1.0); }
  friend Matrix operator*(Matrix lhs, Complex s) { return lhs *= s; }
  friend Matrix operator*(Complex s, Matrix rhs) { return rhs *= s; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);

  Vector apply(const Vector& x) const;
  Matrix conjugate_transpose() const;
  Complex trace() const;

  /// max_i sum_j |a_ij|
  double inf_norm() const;
  /// max_ij |a_ij|
  double max_abs() const;
  double frobenius_norm() const;

  bool all_finite() const;

private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Complex> data_;
};

inline void require_square(const Matrix& a, const char* who) {
  if (!a.square()) throw DimensionError(std::string(who) + ": matrix must be square");
}

inline void require_same_dim(const Matrix& a, const Matrix& b, const char* who) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError(std::string(who) + ": matrix dimensions differ");
}

/// Commutator norm ||AB - BA||_inf.
double commutator_norm(const Matrix& a, const Matrix& b);

double vector_norm2(const Vector& x);
double vector_max_abs(const Vector& x);
bool all_finite(const Vector& x);

}  // namespace holocalc
