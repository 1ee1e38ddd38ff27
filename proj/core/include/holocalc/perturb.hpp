#pragma once

#include "holocalc/funcalc.hpp"

namespace holocalc {

struct PerturbationResult {
  Matrix value;                   // sum_n f^(n)(T) S^n / n!
  std::size_t terms_used = 0;     // terms summed before the tail fell under tol
  double tail_estimate = 0.0;     // size of the first dropped term
  double direct_deviation = 0.0;  // ||series - f(T+S)||_P via a fresh contour
  double spectrum_in_domain_margin = 0.0;  // min dist of sigma(T+S) to the complement
};

struct PerturbOptions {
  std::size_t max_terms = 120;
  std::size_t initial_nodes = 128;
  std::size_t max_nodes = 4096;
  double gap = 0.05;
  /// relative commutation tolerance against ||T|| ||S||
  double commutation_tol = 1e-12;
  std::size_t radius_n_max = 60;
  bool compute_direct = true;  // also evaluate f(T+S) directly for the report
};

/// f(T + S) = sum_n f^(n)(T) S^n / n! for commuting S with certified radius
/// below dist(sigma(T), complement of D). Every f^(n)(T) is quadrature over
/// one shared contour with cached resolvent values, so each extra term only
/// costs the scalar derivative at the nodes and a multiplication by S.
PerturbationResult perturbation_series(const Calibration& p, const Matrix& t,
                                       const Matrix& s, const HoloFun& f,
                                       const Domain& d, double tol,
                                       const PerturbOptions& opts = {});

struct QuasinilpotentReport {
  bool quasinilpotent = false;
  double inf_form_radius = 0.0;   // certified upper value at n_max
  double max_eigen_modulus = 0.0;
  bool equivalence_consistent = true;  // radius verdict agrees with sigma == {0}
};

/// r_P(T) = 0 at desk scale: the inf-form estimate at n_max falls below
/// 1e-8 and every eigenvalue has modulus below 1e-8. The report cross-checks
/// the two certificates against each other.
QuasinilpotentReport is_quasinilpotent(const Calibration& p, const Matrix& t,
                                       std::size_t n_max);

}  // namespace holocalc
