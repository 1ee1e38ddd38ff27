#pragma once

#include "holocalc/matrix.hpp"

namespace holocalc {

/// Point spectrum of a dense matrix, counted with algebraic multiplicity.
struct Spectrum {
  Vector eigenvalues;  // size n
  double radius = 0.0; // max modulus
};

enum class EigMethod {
  Auto,        // characteristic polynomial for n <= 4, QR iteration above
  CharPoly,    // Faddeev-LeVerrier + Durand-Kerner (n <= 8)
  QrIteration  // Hessenberg reduction + shifted QR
};

struct EigenPair {
  Complex value;
  Vector vector;
  double residual;  // ||Tv - value v||_2 / ||v||_2
};

struct EigOptions {
  EigMethod method = EigMethod::Auto;
  double residual_tol = 1e-9;
  std::size_t max_sweeps_per_eigenvalue = 100;
};

/// Eigenvalues with a residual contract: every reported value admits a unit
/// vector with ||Tv - lambda v|| <= residual_tol (values are refined by
/// Rayleigh iteration until the contract holds).
Spectrum eigenvalues(const Matrix& t, const EigOptions& opts = {});

/// Monic characteristic polynomial coefficients [c_1..c_n] with
/// p(x) = x^n + c_1 x^{n-1} + ... + c_n  (Faddeev-LeVerrier recurrence).
Vector characteristic_polynomial(const Matrix& t);

/// Roots of a monic polynomial given by trailing coefficients as above.
Vector monic_roots(const Vector& coeffs);

/// Inverse/Rayleigh iteration started at lambda0.
EigenPair recover_pair(const Matrix& t, Complex lambda0, int max_iters = 10);

/// Orthonormal kernel basis of a (column-pivoted QR rank reveal).
std::vector<Vector> null_space(const Matrix& a, double tol);

double spectrum_distance(const Vector& eigenvalues, Complex z);

}  // namespace holocalc
