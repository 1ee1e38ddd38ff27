#pragma once

#include "holocalc/funcalc.hpp"

namespace holocalc {

struct ProjectionOptions {
  double gap = 0.05;          // clopen separation for spectral sets
  std::size_t initial_nodes = 128;
  std::size_t max_nodes = 4096;
};

struct ProjectionReport {
  Matrix projector;
  SpectralSet set;
  double idempotency_defect = 0.0;   // ||P^2 - P||_P
  double commutation_defect = 0.0;   // ||P T - T P||_P
  double trace_defect = 0.0;         // |trace(P) - multiplicity of the set|
  std::size_t multiplicity = 0;      // algebraic multiplicity enclosed
  std::size_t nodes_used = 0;
};

/// Riesz projection onto the spectral set H: quadrature of R(lambda, T) over
/// a contour enclosing exactly the selected clusters. H is named by cluster
/// indices (the clopen invariant holds by construction of the clustering).
/// The empty set maps to the zero operator without building a contour.
ProjectionReport spectral_projection(const Calibration& p, const Matrix& t,
                                     const SpectralSet& h, double tol,
                                     const ProjectionOptions& opts = {});

struct ProjectionAlgebraReport {
  double intersection_defect = 0.0;  // ||P_{H int K} - P_H P_K||_P
  double union_defect = 0.0;         // ||P_{H u K} - P_H - P_K||_P (disjoint H, K)
  bool union_checked = false;
};

/// Boolean-algebra laws of the Riesz projections on two spectral sets. The
/// union law is only evaluated when H and K are disjoint.
ProjectionAlgebraReport projection_algebra_check(const Calibration& p, const Matrix& t,
                                                 const SpectralSet& h,
                                                 const SpectralSet& k, double tol,
                                                 const ProjectionOptions& opts = {});

struct PowerBoundReport {
  /// Per member: sup over samples and n <= n_max of eps0^n phat(R(lambda)^n);
  /// finite and eventually nonincreasing in n when the distance precondition
  /// holds.
  std::vector<double> envelope;
  bool bounded_in_n = true;
  double max_envelope = 0.0;
};

/// Resolvent power bound away from the spectrum: for samples lambda with
/// dist(lambda, sigma) > eps0, the scaled powers eps0^n phat(R^n) stay below
/// a finite envelope.
PowerBoundReport verify_resolvent_power_bound(const Calibration& p, const Matrix& t,
                                              const Vector& samples, double eps0,
                                              std::size_t n_max);

struct LowerBoundReport {
  struct Entry {
    double opnorm_resolvent;
    double inverse_distance;  // 1 / dist(lambda, sigma)
    bool holds;
  };
  std::vector<Entry> per_calibration;
  bool all_hold = true;
};

/// ||R(lambda, T)||_P >= 1/dist(lambda, sigma(T)) for every calibration that
/// makes both T and R universally bounded.
LowerBoundReport resolvent_lower_bound_check(const Matrix& t, Complex lambda,
                                             const std::vector<Calibration>& calibrations);

}  // namespace holocalc
