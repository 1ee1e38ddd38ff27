#pragma once

#include <map>
#include <string>

#include "holocalc/boundedness.hpp"
#include "holocalc/eig.hpp"
#include "holocalc/matrix.hpp"
#include "holocalc/seminorm.hpp"

namespace holocalc {

/// Walks T, T^2, T^3, ... keeping each power normalized by its largest entry
/// with the magnitude tracked in the log domain, so power sequences up to
/// n_max ~ 200 neither overflow nor underflow.
class PowerSequence {
public:
  explicit PowerSequence(const Matrix& t);

  std::size_t exponent() const { return exponent_; }
  const Matrix& normalized() const { return power_; }
  double log_scale() const { return log_scale_; }
  bool vanished() const { return vanished_; }  // T^n == 0 exactly

  void advance();

private:
  Matrix base_;
  Matrix power_;
  double log_scale_ = 0.0;
  std::size_t exponent_ = 1;
  bool vanished_ = false;
};

struct SpectralRadiusEstimate {
  /// keyed by formula tag: "inf_over_n" (certified upper value),
  /// "limsup_sup" (tail-slope estimate, advisory), "eigen_oracle".
  std::map<std::string, double> by_formula;
  std::size_t n_max = 0;
  bool converged = false;

  double certified_upper() const { return by_formula.at("inf_over_n"); }
  double eigen_radius() const { return by_formula.at("eigen_oracle"); }
};

/// P-spectral radius estimates:
///   inf_over_n  = max over members p of min_{1<=n<=n_max} phat(T^n)^(1/n),
///                 a certified upper bound, nonincreasing in n_max;
///   limsup_sup  = slope of log phat(T^n) over the last quarter of the run;
///   eigen_oracle = max |lambda| from the eigenvalue solver.
/// Requires is_quotient_bounded(p, t) and n_max >= 2.
SpectralRadiusEstimate spectral_radius(const Calibration& p, const Matrix& t,
                                       std::size_t n_max);

struct ResolventOptions {
  /// Relative singularity tolerance; the absolute pivot threshold is
  /// sing_tol_rel * max(|lambda|, ||T||_inf).
  double sing_tol_rel = 1e-12;
  bool iterative_refinement = true;
};

/// R(lambda, T) = (lambda I - T)^{-1} by LU with partial pivoting.
/// Throws SingularError when lambda sits on the spectrum to tolerance.
Matrix resolvent_direct(const Matrix& t, Complex lambda,
                        const ResolventOptions& opts = {});

struct NeumannResult {
  Matrix resolvent;
  std::size_t terms_used = 0;  // terms summed before the tail fell under tol
  double tail_bound = 0.0;     // operator-norm size of the first dropped term
};

struct NeumannOptions {
  std::size_t radius_n_max = 60;  // depth of the certified radius estimate
  std::size_t max_terms = 200000;
  double divergence_factor = 1e9;  // term growth that flags divergence early
};

/// Partial sums of sum_n T^n / lambda^{n+1} until max_p phat(term) < tol.
/// Precondition |lambda| > certified radius (the inf-form upper value), which
/// makes convergence a theorem rather than an observation.
NeumannResult neumann_resolvent(const Calibration& p, const Matrix& t, Complex lambda,
                                double tol, const NeumannOptions& opts = {});

struct ResolventIdentityReport {
  double first_identity_defect = 0.0;   // R(l)-R(m) - (m-l) R(l) R(m)
  double derivative_defect_rel = 0.0;   // d^n/dl^n R vs finite differences
  double infinity_probe_defect = 0.0;   // ||lambda R - I|| at huge lambda
  double infinity_probe_lambda = 0.0;
};

/// Checks the resolvent equation, the n-th derivative formula
/// d^n/dl^n R = (-1)^n n! R^{n+1} against 4th order central differences with
/// step 1e-3 * dist(lambda, spectrum), and the lambda R -> I limit at
/// |lambda| = 1e6 * ||T||.
ResolventIdentityReport verify_resolvent_identities(const Matrix& t, Complex lambda,
                                                    Complex mu, int n);

}  // namespace holocalc
