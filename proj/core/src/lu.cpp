#include "holocalc/lu.hpp"

#include <cmath>
#include <limits>
#include <utility>

namespace holocalc {

LuFactorization::LuFactorization(Matrix a, double singular_tol)
    : lu_(std::move(a)) {
  require_square(lu_, "LuFactorization");
  const std::size_t n = lu_.rows();
  perm_.resize(n);
  for (std::size_t i = 0; i < n; ++i) perm_[i] = i;
  min_pivot_ = std::numeric_limits<double>::infinity();

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::abs(lu_(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const double cand = std::abs(lu_(i, k));
      if (cand > best) {
        best = cand;
        piv = i;
      }
    }
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(piv, j));
      std::swap(perm_[k], perm_[piv]);
      perm_sign_ = -perm_sign_;
    }
    min_pivot_ = std::min(min_pivot_, best);
    if (singular_tol > 0.0 && best <= singular_tol)
      throw SingularError("LuFactorization: pivot " + std::to_string(best) +
                          " at column " + std::to_string(k) +
                          " below tolerance " + std::to_string(singular_tol));
    if (best == 0.0) continue;  // defer failure to solve time when unchecked
    const Complex inv_piv = 1.0 / lu_(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const Complex l = lu_(i, k) * inv_piv;
      lu_(i, k) = l;
      if (l == Complex(0.0)) continue;
      for (std::size_t j = k + 1; j < n; ++j) lu_(i, j) -= l * lu_(k, j);
    }
  }
  if (n == 0) min_pivot_ = 0.0;
}

Vector LuFactorization::solve(const Vector& b) const {
  const std::size_t n = dim();
  if (b.size() != n) throw DimensionError("LuFactorization::solve: size mismatch");
  Vector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[perm_[i]];
  // forward substitution, unit lower triangle
  for (std::size_t i = 1; i < n; ++i) {
    Complex acc = x[i];
    for (std::size_t j = 0; j < i; ++j) acc -= lu_(i, j) * x[j];
    x[i] = acc;
  }
  // back substitution
  for (std::size_t ii = n; ii-- > 0;) {
    Complex acc = x[ii];
    for (std::size_t j = ii + 1; j < n; ++j) acc -= lu_(ii, j) * x[j];
    x[ii] = acc / lu_(ii, ii);
  }
  return x;
}

Matrix LuFactorization::solve(const Matrix& b) const {
  const std::size_t n = dim();
  if (b.rows() != n) throw DimensionError("LuFactorization::solve: size mismatch");
  Matrix x(n, b.cols());
  Vector col(n);
  for (std::size_t j = 0; j < b.cols(); ++j) {
    for (std::size_t i = 0; i < n; ++i) col[i] = b(i, j);
    Vector sol = solve(col);
    for (std::size_t i = 0; i < n; ++i) x(i, j) = sol[i];
  }
  return x;
}

Matrix LuFactorization::inverse() const { return solve(Matrix::identity(dim())); }

Complex LuFactorization::determinant() const {
  Complex d = perm_sign_;
  for (std::size_t i = 0; i < dim(); ++i) d *= lu_(i, i);
  return d;
}

Vector lu_solve(const Matrix& a, const Vector& b, double singular_tol) {
  return LuFactorization(a, singular_tol).solve(b);
}

Matrix lu_inverse(const Matrix& a, double singular_tol) {
  return LuFactorization(a, singular_tol).inverse();
}

}  // namespace holocalc
