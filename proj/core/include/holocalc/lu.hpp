#pragma once

#include "holocalc/matrix.hpp"

namespace holocalc {

/// LU factorization with partial pivoting of a square complex matrix.
/// Factors once, solves many right-hand sides.
class LuFactorization {
public:
  /// Throws SingularError when a pivot falls at or below singular_tol.
  /// singular_tol <= 0 disables the check (pivots may be exactly zero, in
  /// which case solves will produce non-finite values).
  explicit LuFactorization(Matrix a, double singular_tol = 0.0);

  std::size_t dim() const { return lu_.rows(); }
  double min_pivot() const { return min_pivot_; }
  bool singular(double tol) const { return min_pivot_ <= tol; }

  Vector solve(const Vector& b) const;
  Matrix solve(const Matrix& b) const;
  Matrix inverse() const;
  Complex determinant() const;

private:
  Matrix lu_;
  std::vector<std::size_t> perm_;
  double min_pivot_ = 0.0;
  int perm_sign_ = 1;
};

/// One-shot solve of a x = b.
Vector lu_solve(const Matrix& a, const Vector& b, double singular_tol = 0.0);

/// Inverse with a singularity guard scaled to the matrix magnitude.
Matrix lu_inverse(const Matrix& a, double singular_tol = 0.0);

}  // namespace holocalc
