#pragma once

#include <optional>
#include <string>

#include "holocalc/spectral.hpp"

namespace holocalc {

struct RenormMemberInfo {
  double lower_const = 1.0;   // lower_const * base <= renormed (pointwise)
  double upper_const = 0.0;   // renormed <= upper_const * base[partner]
  std::size_t upper_partner = 0;
  bool upper_available = true;  // false when the base family is not directed
};

/// Result of a renorming construction: a new calibration Q-equivalent to the
/// base one under which the operator(s) become universally bounded.
struct RenormedCalibration {
  RenormedCalibration(Calibration base_family, Calibration renormed_family)
      : base(std::move(base_family)), renormed(std::move(renormed_family)) {}

  Calibration base;
  Calibration renormed;
  std::vector<RenormMemberInfo> members;
  std::string mode;  // "locally_bounded" | "spectral_scaling" | "joint_commuting"

  double operator_bound = 0.0;  // ||T||_{P'}: exact for weighted_sup output
  bool bound_exact = true;      // false when sampled (derived members)
  double bound_claim = 0.0;     // the constructive bound the mode guarantees

  double mu_a = 0.0, mu_b = 0.0;  // scaling parameters when applicable
  std::size_t n_sup = 0;          // truncation depth of derived stacks
  double operator_bound_b = 0.0;  // second operator, joint construction only
};

/// Locally-bounded renorming: q'(x) = max(q(x), m_{p0 q}(T) p0(x)) for a
/// witness member p0 with every m_{p0 q}(T) finite. Output stays weighted_sup
/// (componentwise weight maxima), so all certificates are closed form:
/// ||T||_{P'} <= c0 max_q m_{p0 q}(T) with c0 = max(1, phat(p0, T)).
/// When p0 is not given, members are searched in order. Throws when no
/// valid witness exists.
RenormedCalibration renorm_bounded(const Calibration& p, const Matrix& t,
                                   std::optional<std::size_t> p0 = std::nullopt);

struct SpectralRenormOptions {
  std::size_t n_sup_cap = 400;
  double tail_rel = 1e-12;          // tail term below this fraction of the head
  std::size_t stabilization_run = 25;  // head unchanged this long before the cap
};

/// Spectral-scaling renorming: p'(x) = max_{0<=n<=N} p(T^n x) / mu^n with N
/// chosen so the dropped tail is below tail_rel of the head. Requires
/// mu > r_P(T); a non-stabilizing head within the cap is reported as a
/// precondition failure. Output members are derived (evaluatable only);
/// p <= p' <= M_p p holds with M_p = max_n phat(T^n)/mu^n and
/// ||T||_{P'} <= mu up to the certified tail slack.
RenormedCalibration renorm_spectral(const Calibration& p, const Matrix& t, double mu,
                                    const SpectralRenormOptions& opts = {});

struct JointRenormOptions {
  std::size_t n_sup = 40;       // per-axis truncation of the double stack
  double prune_rel = 1e-13;     // drop stack entries below this of the head
  double commutation_tol = 1e-12;
  std::size_t bound_samples = 600;  // sampled operator-bound certificates
};

/// Joint renorming of a commuting pair: p'(x) = max_{n,m <= N}
/// p(A^n B^m x) / (mu_a^n mu_b^m). Both operators come out universally
/// bounded for the derived family (sampled bounds near mu_a, mu_b).
RenormedCalibration joint_renorm_commuting(const Calibration& p, const Matrix& a,
                                           const Matrix& b, double mu_a, double mu_b,
                                           const JointRenormOptions& opts = {});

/// min over 1 <= n <= n_max of ||T^n||_P^(1/n); requires T universally
/// bounded for P. Exact on weighted_sup calibrations.
double lb_radius(const Calibration& p, const Matrix& t, std::size_t n_max,
                 std::size_t samples = 1024);

struct SpectrumWitness {
  Complex lambda;
  std::size_t member = 0;  // calibration member achieving the ratio
  Vector x;
  double ratio = 0.0;      // p((lambda I - T) x) / p(x)
};

struct PointEigenvalue {
  Complex value;
  std::size_t algebraic_multiplicity = 0;
  std::size_t geometric_multiplicity = 0;
  Vector witness;      // kernel vector
  double residual = 0.0;
};

struct SpectrumClassification {
  std::vector<PointEigenvalue> point;
  std::vector<SpectrumWitness> approximate;  // point witnesses + grid hits
  /// Ladder levels a grid scan may certify; hits are recorded per level.
  std::vector<double> probe_ladder{1e-2, 1e-4, 1e-6};
  std::string finite_dimension_note;
  // continuous and residual spectra are structurally empty here; the note
  // records the rank-nullity justification
};

struct ClassifyOptions {
  std::size_t grid_rings = 2;
  std::size_t grid_angles = 8;
  double ring_scale = 0.25;  // ring radii as fractions of the spectrum scale
  std::size_t search_samples = 400;
  std::size_t refine_iters = 40;
};

SpectrumClassification classify_spectrum(const Calibration& p, const Matrix& t,
                                         double tol, const ClassifyOptions& opts = {});

/// Sampling minimizer of p((lambda I - T)x)/p(x) over members and vectors;
/// one-sided evidence only (a small ratio is a witness, a large one proves
/// nothing).
SpectrumWitness min_ratio_witness(const Calibration& p, const Matrix& t, Complex lambda,
                                  std::size_t samples, std::size_t refine_iters,
                                  std::uint64_t seed = 0);

struct IntersectionEntry {
  Complex lambda;
  bool witness_found = false;
  double norm_t = 0.0;  // sampled ||T||_{P'}
  double norm_r = 0.0;  // sampled ||R||_{P'}
  std::string detail;
};

struct IntersectionReport {
  std::vector<IntersectionEntry> entries;
  bool all_succeeded = true;
};

/// For each sample lambda off the spectrum, builds a joint calibration
/// making T and R(lambda, T) universally bounded, witnessing that lambda is
/// in the resolvent set of the universally-bounded algebra.
IntersectionReport spectrum_intersection_check(const Calibration& p, const Matrix& t,
                                               const Vector& lambda_samples,
                                               const JointRenormOptions& opts = {});

}  // namespace holocalc
