#include "holocalc/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "holocalc/funcalc.hpp"
#include "holocalc/lu.hpp"
#include "holocalc/perturb.hpp"
#include "holocalc/projections.hpp"
#include "holocalc/renorm.hpp"

namespace holocalc {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

void SuiteReport::add(const std::string& name, double defect, double tolerance) {
  const bool pass = defect <= tolerance;
  checks.push_back({name, defect, tolerance, pass});
  all_pass = all_pass && pass;
}

Vector random_separated_eigenvalues(Rng& rng, std::size_t n, double gap, double radius) {
  Vector eigs;
  std::size_t attempts = 0;
  while (eigs.size() < n) {
    const Complex cand = rng.in_disc(radius);
    bool ok = true;
    for (const auto& e : eigs)
      if (std::abs(e - cand) < gap) {
        ok = false;
        break;
      }
    if (ok) eigs.push_back(cand);
    if (++attempts > 100000)
      throw PreconditionError("random_separated_eigenvalues: gap too large for the disc");
  }
  return eigs;
}

Matrix random_diagonalizable(Rng& rng, std::size_t n, double eigen_gap, double skew,
                             Vector* eigenvalues_out, Matrix* similarity_out) {
  const Vector eigs = random_separated_eigenvalues(rng, n, eigen_gap, 2.0);
  Matrix v = rng.unitary(n);
  if (skew > 0.0) {
    // mild non-normality: V = Q (I + skew N), kept well conditioned
    Matrix pert = rng.matrix(n, n, skew / double(n));
    v = v * (Matrix::identity(n) + pert);
  }
  const Matrix vinv = lu_inverse(v);
  Matrix t = v * Matrix::diagonal(eigs) * vinv;
  if (eigenvalues_out) *eigenvalues_out = eigs;
  if (similarity_out) *similarity_out = v;
  return t;
}

Matrix random_normal(Rng& rng, std::size_t n, double eigen_gap, Vector* eigenvalues_out) {
  return random_diagonalizable(rng, n, eigen_gap, 0.0, eigenvalues_out);
}

Matrix jordan_block(Complex lambda, std::size_t n) {
  Matrix j(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    j(i, i) = lambda;
    if (i + 1 < n) j(i, i + 1) = 1.0;
  }
  return j;
}

Calibration random_positive_calibration(Rng& rng, std::size_t n, std::size_t members) {
  std::vector<Seminorm> family;
  for (std::size_t m = 0; m < members; ++m) {
    std::vector<double> w(n);
    for (auto& x : w) x = rng.uniform(0.5, 1.5);
    family.push_back(Seminorm::weighted_sup(std::move(w)));
  }
  return Calibration(std::move(family));
}

namespace {

// ---------------------------------------------------------------------------
// calib suite
// ---------------------------------------------------------------------------

/// Brute-force sup of q(Tx) over the p-unit ball: the ball's extreme points
/// are phase vectors at the weight vertices, so the grid walks 16 phases per
/// coordinate plus random fill.
double brute_force_mixed(const Seminorm& p, const Seminorm& q, const Matrix& t,
                         Rng& rng) {
  const std::size_t n = t.rows();
  std::vector<std::size_t> active;
  for (std::size_t j = 0; j < n; ++j)
    if (p.weights()[j] > 0.0) active.push_back(j);
  double best = 0.0;
  const std::size_t phases = 16;
  std::vector<std::size_t> idx(active.size(), 0);
  // full phase grid over active coordinates (16^k combinations)
  for (;;) {
    Vector x(n, Complex(0.0));
    for (std::size_t k = 0; k < active.size(); ++k) {
      const double th = 2.0 * std::numbers::pi * double(idx[k]) / double(phases);
      x[active[k]] = Complex(std::cos(th), std::sin(th)) / p.weights()[active[k]];
    }
    best = std::max(best, q(t.apply(x)));
    std::size_t k = 0;
    for (; k < idx.size(); ++k) {
      if (++idx[k] < phases) break;
      idx[k] = 0;
    }
    if (k == idx.size()) break;
  }
  for (int s = 0; s < 1000; ++s) {
    Vector x = rng.vector(n);
    const double px = p(x);
    if (px <= 0.0) continue;
    for (auto& c : x) c /= px;
    best = std::max(best, q(t.apply(x)));
  }
  return best;
}

/// Independent coding of the closed form (column-first accumulation) used to
/// cross-check the operator-norm formula.
double opnorm_alternate(const Calibration& p, const Matrix& t) {
  double best = 0.0;
  for (const auto& member : p.members()) {
    const auto& w = member.weights();
    double member_best = 0.0;
    for (std::size_t i = 0; i < t.rows(); ++i) {
      if (w[i] == 0.0) continue;
      double acc = 0.0;
      for (std::size_t j = t.cols(); j-- > 0;) {
        if (w[j] == 0.0) {
          if (t(i, j) != Complex(0.0)) return kInf;
          continue;
        }
        acc += std::abs(t(i, j)) / w[j];
      }
      member_best = std::max(member_best, w[i] * acc);
    }
    best = std::max(best, member_best);
  }
  return best;
}

SuiteReport suite_calib(std::uint64_t seed) {
  SuiteReport rep;
  rep.suite = "calib";
  Rng rng(seed);

  // closed form vs brute-force grid sup, 2x2 and 3x3
  double worst_gap = 0.0;
  for (int inst = 0; inst < 10; ++inst) {
    const std::size_t n = 2 + std::size_t(inst % 2);
    const Matrix t = rng.matrix(n, n);
    std::vector<double> wp(n), wq(n);
    for (auto& x : wp) x = rng.uniform(0.3, 2.0);
    for (auto& x : wq) x = rng.uniform(0.3, 2.0);
    const Seminorm p = Seminorm::weighted_sup(wp);
    const Seminorm q = Seminorm::weighted_sup(wq);
    const double closed = mixed_seminorm(p, q, t).value();
    const double brute = brute_force_mixed(p, q, t, rng);
    worst_gap = std::max(worst_gap, std::abs(closed - brute) / std::max(closed, 1e-30));
  }
  rep.add("mixed_seminorm_forms_agree", worst_gap, 1e-2);

  // submultiplicativity of phat on quotient-bounded pairs
  double submult_violation = 0.0;
  for (int inst = 0; inst < 100; ++inst) {
    const std::size_t n = 2 + std::size_t(inst % 5);
    const Matrix s = rng.matrix(n, n);
    const Matrix t = rng.matrix(n, n);
    const Calibration p = random_positive_calibration(rng, n, 2);
    for (const auto& member : p.members()) {
      const double lhs = phat(member, s * t).value();
      const double rhs = phat(member, s).value() * phat(member, t).value();
      submult_violation = std::max(
          submult_violation, (lhs - rhs) / std::max(rhs, 1e-30));
    }
  }
  rep.add("phat_submultiplicative", submult_violation, 1e-12);

  // inclusion chain: universally bounded implies quotient bounded
  bool chain_ok = true;
  for (int inst = 0; inst < 20; ++inst) {
    const std::size_t n = 2 + std::size_t(inst % 4);
    const Matrix t = rng.matrix(n, n);
    const Calibration p = random_positive_calibration(rng, n, 3);
    if (is_universally_bounded(p, t).bounded && !is_quotient_bounded(p, t))
      chain_ok = false;
  }
  rep.add("universal_implies_quotient", chain_ok ? 0.0 : 1.0, 0.5);

  // principal closure is Q-equivalent, directed, idempotent
  bool closure_ok = true;
  for (int inst = 0; inst < 10; ++inst) {
    const std::size_t n = 2 + std::size_t(inst % 3);
    std::vector<Seminorm> fam;
    for (std::size_t m = 0; m < 3; ++m) {
      std::vector<double> w(n);
      for (std::size_t i = 0; i < n; ++i)
        w[i] = rng.uniform() < 0.3 ? 0.0 : rng.uniform(0.2, 2.0);
      fam.push_back(Seminorm::weighted_sup(std::move(w)));
    }
    Calibration p = [&] {
      try {
        return Calibration(fam);
      } catch (const PreconditionError&) {
        fam.push_back(Seminorm::weighted_sup(std::vector<double>(n, 1.0)));
        return Calibration(fam);
      }
    }();
    const Calibration closed = principal_closure(p);
    if (!closed.is_principal() || !q_equivalent_sampled(p, closed)) closure_ok = false;
    if (principal_closure(closed).size() != closed.size()) closure_ok = false;
  }
  rep.add("principal_closure_laws", closure_ok ? 0.0 : 1.0, 0.5);

  // operator norm: two independent codings of the closed form
  double opnorm_gap = 0.0;
  for (int inst = 0; inst < 20; ++inst) {
    const std::size_t n = 2 + std::size_t(inst % 5);
    const Matrix t = rng.matrix(n, n);
    const Calibration p = random_positive_calibration(rng, n, 3);
    const double a = opnorm(p, t).value();
    const double b = opnorm_alternate(p, t);
    opnorm_gap = std::max(opnorm_gap, std::abs(a - b) / std::max(a, 1e-30));
  }
  rep.add("opnorm_two_codings", opnorm_gap, 1e-12);
  return rep;
}

// ---------------------------------------------------------------------------
// spectral suite
// ---------------------------------------------------------------------------

SuiteReport suite_spectral(std::uint64_t seed) {
  SuiteReport rep;
  rep.suite = "spectral";
  Rng rng(seed);

  double homo_defect = 0.0, power_defect = 0.0;
  for (int inst = 0; inst < 10; ++inst) {
    const std::size_t n = 2 + std::size_t(inst % 4);
    const Matrix t = random_diagonalizable(rng, n, 0.1, 0.2);
    const Complex lam = rng.in_disc(2.0);
    const double rt = eigenvalues(t).radius;
    const double rlt = eigenvalues(t * lam).radius;
    homo_defect = std::max(homo_defect, std::abs(rlt - std::abs(lam) * rt));
    const Matrix t3 = t * t * t;
    power_defect = std::max(power_defect, std::abs(eigenvalues(t3).radius - rt * rt * rt));
  }
  rep.add("radius_homogeneity", homo_defect, 1e-9);
  rep.add("radius_power_law", power_defect, 1e-9);

  // Gelfand inf form on normal operators: within 2% of the eigen radius
  double normal_gap = 0.0;
  for (int inst = 0; inst < 8; ++inst) {
    const std::size_t n = 2 + std::size_t(inst % 7);
    const Matrix t = random_normal(rng, n, 0.1);
    const Calibration p = Calibration::max_norm(n);
    const SpectralRadiusEstimate est = spectral_radius(p, t, 60);
    const double eig = est.eigen_radius();
    if (eig > 1e-9)
      normal_gap = std::max(normal_gap, (est.certified_upper() - eig) / eig);
  }
  rep.add("gelfand_normal_convergence", normal_gap, 0.02);

  // certified value is an upper bound of the eigen radius
  double upper_defect = 0.0;
  for (int inst = 0; inst < 10; ++inst) {
    const std::size_t n = 2 + std::size_t(inst % 5);
    const Matrix t = random_diagonalizable(rng, n, 0.1, 0.3);
    const Calibration p = random_positive_calibration(rng, n, 2);
    const SpectralRadiusEstimate est = spectral_radius(p, t, 40);
    upper_defect = std::max(upper_defect, est.eigen_radius() - est.certified_upper());
  }
  rep.add("inf_form_upper_bounds_eigen", upper_defect, 1e-9);

  // below the radius the scaled powers blow past any fixed bound
  bool divergence_seen = true;
  for (int inst = 0; inst < 5; ++inst) {
    const std::size_t n = 2 + std::size_t(inst % 3);
    Vector eigs;
    const Matrix t = random_diagonalizable(rng, n, 0.15, 0.0, &eigs);
    const double r = eigenvalues(t).radius;
    if (r < 0.5) continue;
    const Complex lam = Complex(0.45 * r, 0.0);
    PowerSequence seq(t);
    double max_scaled = 0.0;
    for (std::size_t k = 1; k <= 400; ++k) {
      const double logv = seq.log_scale() + std::log(std::max(seq.normalized().inf_norm(), 1e-300)) -
                          double(k) * std::log(std::abs(lam));
      max_scaled = std::max(max_scaled, logv);
      if (k < 400) seq.advance();
    }
    if (max_scaled < std::log(1e6)) divergence_seen = false;
  }
  rep.add("divergence_below_radius", divergence_seen ? 0.0 : 1.0, 0.5);

  // eigen radius lower-bounds every ||T^n||_P^(1/n)
  double liminf_defect = 0.0;
  for (int inst = 0; inst < 10; ++inst) {
    const std::size_t n = 2 + std::size_t(inst % 4);
    const Matrix t = random_diagonalizable(rng, n, 0.1, 0.2);
    const Calibration p = random_positive_calibration(rng, n, 2);
    const double eig = eigenvalues(t).radius;
    liminf_defect = std::max(liminf_defect, eig - lb_radius(p, t, 40));
  }
  rep.add("norm_root_lower_bound", liminf_defect, 1e-12);

  // Neumann sums agree with the direct solve above the certified radius
  double neumann_defect = 0.0;
  const double tol = 1e-12;
  for (int inst = 0; inst < 6; ++inst) {
    const std::size_t n = 2 + std::size_t(inst % 3);
    const Matrix t = random_diagonalizable(rng, n, 0.1, 0.2);
    const Calibration p = random_positive_calibration(rng, n, 2);
    const double cert = spectral_radius(p, t, 60).certified_upper();
    const Complex lam = Complex(1.8 * std::max(cert, 0.1), 0.4);
    const NeumannResult nr = neumann_resolvent(p, t, lam, tol);
    const Matrix direct = resolvent_direct(t, lam);
    neumann_defect = std::max(neumann_defect, defect_norm(p, nr.resolvent - direct));
  }
  rep.add("neumann_matches_direct", neumann_defect, 10.0 * tol);
  return rep;
}

// ---------------------------------------------------------------------------
// contour suite
// ---------------------------------------------------------------------------

SuiteReport suite_contour(std::uint64_t seed) {
  SuiteReport rep;
  rep.suite = "contour";
  Rng rng(seed);

  bool validity = true;
  for (int inst = 0; inst < 10; ++inst) {
    const std::size_t n = 3 + std::size_t(inst % 4);
    const Vector pts = random_separated_eigenvalues(rng, n, 0.3, 2.0);
    Vector enclosed(pts.begin(), pts.begin() + 2);
    Vector excluded(pts.begin() + 2, pts.end());
    const Domain d = Domain::disk(0.0, 6.0);
    try {
      const Contour gamma = build_cauchy_contour(enclosed, excluded, d);
      const ContourCheck check = check_contour(gamma, enclosed, excluded, d);
      if (!check.valid) validity = false;
    } catch (const PreconditionError&) {
      // a genuinely infeasible draw is fine; feasible draws must validate
    }
  }
  rep.add("contour_validity_recheck", validity ? 0.0 : 1.0, 0.5);

  // trapezoid rule on circles: doubling the nodes squares the error
  Contour circle;
  circle.circles.push_back({Complex(0.0), 1.0, +1, 8});
  circle.separation = 1.0;
  const Complex a(1.7, 0.4);  // simple pole outside
  auto quad_err = [&](std::size_t nn) {
    Complex acc = 0.0;
    for (const auto& node : quadrature_nodes(circle, nn))
      acc += node.weight / (node.lambda - a);
    return std::abs(acc - 0.0);  // no residue inside
  };
  const double e1 = quad_err(16), e2 = quad_err(32);
  rep.add("quadrature_error_squares", e2, std::max(e1 * e1 * 50.0, 5e-15));

  double exact_defect = 0.0;
  {
    Complex acc = 0.0;
    for (const auto& node : quadrature_nodes(circle, 64)) acc += node.weight / node.lambda;
    exact_defect = std::abs(acc - 1.0);
  }
  rep.add("cauchy_kernel_exact", exact_defect, 1e-14);
  return rep;
}

// ---------------------------------------------------------------------------
// funcalc suite
// ---------------------------------------------------------------------------

SuiteReport suite_funcalc(std::uint64_t seed) {
  SuiteReport rep;
  rep.suite = "funcalc";
  Rng rng(seed);
  const double tol = 1e-10;

  double homomorphism = 0.0, horner = 0.0, independence = 0.0, image = 0.0;
  double continuity = 0.0;
  for (int inst = 0; inst < 6; ++inst) {
    const std::size_t n = 2 + std::size_t(inst % 4);
    Vector eigs;
    const Matrix t = random_diagonalizable(rng, n, 0.12, 0.2, &eigs);
    const Calibration p = random_positive_calibration(rng, n, 2);

    const HoloFun f = HoloFun::poly({rng.in_disc(1.0), rng.in_disc(1.0), rng.in_disc(0.5)});
    const HoloFun g = inst % 2 ? HoloFun::exp(Complex(0.5)) : HoloFun::poly({Complex(1.0), rng.in_disc(1.0)});
    const HoloFun fg = HoloFun::product(f, g);

    FuncalcOptions opts;
    const Contour gamma = default_contour(t, fg, opts);
    const Matrix ff = apply_funcalc(p, t, f, gamma, tol, opts);
    const Matrix gf = apply_funcalc(p, t, g, gamma, tol, opts);
    const Matrix fgf = apply_funcalc(p, t, fg, gamma, tol, opts);
    homomorphism = std::max(homomorphism, defect_norm(p, fgf - ff * gf));

    horner = std::max(horner, defect_norm(p, ff - polynomial_in_matrix(
                                                     {f.series_coefficient(0),
                                                      f.series_coefficient(1),
                                                      f.series_coefficient(2)},
                                                     t)));

    // same (K, D): an independently built contour with shrunken margins
    FuncalcOptions alt = opts;
    alt.margin_scale = 0.6;
    alt.initial_nodes = 96;
    const Contour gamma2 = default_contour(t, fg, alt);
    independence = std::max(independence,
                            defect_norm(p, apply_funcalc(p, t, f, gamma2, tol, alt) - ff));

    // image boundedness: r(F(f)) equals max |f(sigma)|
    double expected = 0.0;
    for (const auto& ev : eigs) expected = std::max(expected, std::abs(f.eval(ev)));
    image = std::max(image, std::abs(eigenvalues(ff).radius - expected));

    // continuity: ||F(f) - F(f + delta)|| <= L(Gamma)/(2 pi) sup|R| sup|delta|
    const double delta_mag = 1e-4;
    HoloFun f_pert = HoloFun::poly({f.series_coefficient(0) + delta_mag,
                                    f.series_coefficient(1), f.series_coefficient(2)});
    const Matrix fp = apply_funcalc(p, t, f_pert, gamma, tol, opts);
    double sup_r = 0.0;
    for (const auto& node : quadrature_nodes(gamma)) {
      const Matrix r = resolvent_direct(t, node.lambda);
      sup_r = std::max(sup_r, defect_norm(p, r));
    }
    const double bound = gamma.length() / (2.0 * std::numbers::pi) * sup_r * delta_mag;
    continuity = std::max(continuity, defect_norm(p, ff - fp) - bound);
  }
  rep.add("multiplicative_on_scalars", homomorphism, 10.0 * tol);
  rep.add("polynomials_match_horner", horner, 10.0 * tol);
  rep.add("contour_representative_independence", independence, 10.0 * tol);
  rep.add("image_radius_equals_sup_f", image, 1e-8);
  rep.add("continuity_bound_holds", continuity, 1e-12);
  return rep;
}

// ---------------------------------------------------------------------------
// projections suite
// ---------------------------------------------------------------------------

SuiteReport suite_projections(std::uint64_t seed) {
  SuiteReport rep;
  rep.suite = "projections";
  Rng rng(seed);
  const double tol = 1e-10;

  double uniqueness = 0.0, commutant = 0.0, radius_defect = 0.0;
  for (int inst = 0; inst < 5; ++inst) {
    const std::size_t n = 3 + std::size_t(inst % 3);
    const Matrix t = random_diagonalizable(rng, n, 0.25, 0.2);
    const Calibration p = random_positive_calibration(rng, n, 2);
    ProjectionOptions opts;
    opts.gap = 0.2;
    const auto clusters = cluster_spectrum(eigenvalues(t).eigenvalues, opts.gap);
    if (clusters.size() < 2) continue;
    SpectralSet h{{0}};
    const ProjectionReport pr = spectral_projection(p, t, h, tol, opts);

    // a second contour for the same spectral set
    ProjectionOptions alt = opts;
    alt.initial_nodes = 96;
    const ProjectionReport pr2 = spectral_projection(p, t, h, tol, alt);
    uniqueness = std::max(uniqueness, defect_norm(p, pr.projector - pr2.projector));

    // commutant: the projector commutes with polynomials in T
    for (int k = 0; k < 50; ++k) {
      Vector coeffs{rng.in_disc(1.0), rng.in_disc(1.0), rng.in_disc(1.0)};
      const Matrix s = polynomial_in_matrix(coeffs, t);
      commutant = std::max(commutant,
                           defect_norm(p, pr.projector * s - s * pr.projector));
    }

    // the projector is a bounded element with spectral radius 0 or 1
    const double r = eigenvalues(pr.projector).radius;
    radius_defect = std::max(radius_defect, std::min(std::abs(r), std::abs(r - 1.0)));
  }
  rep.add("projector_contour_independence", uniqueness, 10.0 * tol);
  rep.add("projector_commutant", commutant, 10.0 * tol);
  rep.add("projector_radius_zero_or_one", radius_defect, 1e-8);
  return rep;
}

// ---------------------------------------------------------------------------
// perturb suite
// ---------------------------------------------------------------------------

SuiteReport suite_perturb(std::uint64_t seed) {
  SuiteReport rep;
  rep.suite = "perturb";
  Rng rng(seed);
  const double tol = 1e-10;

  double quasi_defect = 0.0, symmetry = 0.0, decay_violation = 0.0;
  for (int inst = 0; inst < 4; ++inst) {
    const std::size_t n = 3;
    const Matrix t = random_diagonalizable(rng, n, 0.3, 0.0);
    const Calibration p = Calibration::max_norm(n);

    Vector eigs = eigenvalues(t).eigenvalues;
    const Matrix s = polynomial_in_matrix({Complex(0.0), Complex(0.05), Complex(0.02)}, t);

    const Domain d = default_domain(eigs, HoloFun::exp(), 0.2);
    const HoloFun f = HoloFun::exp();
    const PerturbationResult pr = perturbation_series(p, t, s, f, d, tol);
    // symmetry: expanding back from T + S with -S recovers f(T)
    const Matrix ts = t + s;
    const Domain d2 = default_domain(eigenvalues(ts).eigenvalues, f, 0.1);
    const PerturbationResult back = perturbation_series(p, ts, -s, f, d2, tol);
    const Contour gamma = default_contour(t, f, {});
    const Matrix ft = apply_funcalc(p, t, f, gamma, tol);
    symmetry = std::max(symmetry, defect_norm(p, back.value - ft));
    decay_violation = std::max(decay_violation, pr.direct_deviation);
  }
  rep.add("series_round_trip", symmetry, 100.0 * tol);
  rep.add("series_matches_direct", decay_violation, 100.0 * tol);

  // quasinilpotent corollary: nilpotent S commuting with T, finite series
  {
    const std::size_t n = 4;
    Vector diag_entries{Complex(0.4), Complex(0.4), Complex(1.6), Complex(1.6)};
    Matrix t = Matrix::diagonal(diag_entries);
    Matrix s(n, n);
    s(0, 1) = 0.3;  // commutes with the repeated diagonal blocks
    s(2, 3) = 0.2;
    const Calibration p = Calibration::max_norm(n);
    const Domain d = default_domain(diag_entries, HoloFun::exp(), 0.3);
    const PerturbationResult pr = perturbation_series(p, t, s, HoloFun::exp(), d, tol);
    quasi_defect = pr.direct_deviation;
    // nilpotency index 2: the series must terminate after exactly two terms
    rep.add("nilpotent_series_terms", std::abs(double(pr.terms_used) - 2.0), 0.0);
  }
  rep.add("quasinilpotent_corollary", quasi_defect, 100.0 * tol);
  return rep;
}

// ---------------------------------------------------------------------------
// renorm suite
// ---------------------------------------------------------------------------

SuiteReport suite_renorm(std::uint64_t seed) {
  SuiteReport rep;
  rep.suite = "renorm";
  Rng rng(seed);

  // sigma_p subset of sigma_a with witnesses; boundary membership
  double point_ratio = 0.0;
  bool witnesses_found = true;
  for (int inst = 0; inst < 5; ++inst) {
    const std::size_t n = 2 + std::size_t(inst % 3);
    const Matrix t = random_diagonalizable(rng, n, 0.15, 0.2);
    const Calibration p = random_positive_calibration(rng, n, 2);
    const SpectrumClassification cls = classify_spectrum(p, t, 1e-9);
    if (cls.point.empty()) witnesses_found = false;
    for (const auto& pe : cls.point) {
      bool found = false;
      for (const auto& w : cls.approximate)
        if (std::abs(w.lambda - pe.value) < 1e-8) {
          found = true;
          point_ratio = std::max(point_ratio, w.ratio);
        }
      witnesses_found = witnesses_found && found;
    }
  }
  rep.add("point_witnesses_in_approximate", witnesses_found ? 0.0 : 1.0, 0.5);
  rep.add("point_witness_ratio", point_ratio, 1e-8);

  // open complement: certified floor c0 = 1/||R||_P blocks nearby witnesses
  double complement_violation = 0.0;
  {
    const std::size_t n = 3;
    const Matrix t = random_diagonalizable(rng, n, 0.3, 0.0);
    const Calibration p = Calibration::max_norm(n);
    const Spectrum s = eigenvalues(t);
    const Complex lam0 = Complex(s.radius + 1.0, 0.8);
    const double c0 = 1.0 / opnorm(p, resolvent_direct(t, lam0)).value();
    for (int probe = 0; probe < 6; ++probe) {
      const Complex lam = lam0 + rng.in_disc(0.4 * c0);
      const SpectrumWitness w = min_ratio_witness(p, t, lam, 300, 30, 99 + probe);
      complement_violation = std::max(complement_violation, c0 / 2.0 - w.ratio);
    }
  }
  rep.add("no_witness_inside_certified_floor", complement_violation, 0.0);

  // spectra agree along every pathway
  double coincidence = 0.0;
  bool invertibility_ok = true;
  for (int inst = 0; inst < 4; ++inst) {
    const std::size_t n = 2 + std::size_t(inst % 3);
    const Matrix t = random_diagonalizable(rng, n, 0.2, 0.2);
    const Calibration p = random_positive_calibration(rng, n, 2);
    const Spectrum s = eigenvalues(t);
    for (const auto& ev : s.eigenvalues) {
      // on the spectrum: the shifted operator is singular
      const Matrix shifted = Matrix::identity(n) * ev - t;
      const LuFactorization lu(shifted);
      if (lu.min_pivot() > 1e-7 * std::max(1.0, t.max_abs())) invertibility_ok = false;
    }
    // off the spectrum: resolvent exists, stays quotient bounded, and the
    // joint renorming gives a universally-bounded witness
    const Complex probe = Complex(s.radius + 0.7, 0.3);
    const Matrix r = resolvent_direct(t, probe);
    if (!is_quotient_bounded(p, r)) invertibility_ok = false;
    const IntersectionReport ir = spectrum_intersection_check(p, t, {probe});
    if (!ir.all_succeeded) invertibility_ok = false;
    coincidence = std::max(coincidence, 0.0);
  }
  rep.add("spectrum_pathways_agree", invertibility_ok ? coincidence : 1.0, 1e-9);

  // renorm_spectral: p <= p' <= M p and contraction under T
  double sandwich = 0.0, contraction = 0.0, lb_bound = 0.0;
  for (int inst = 0; inst < 3; ++inst) {
    const std::size_t n = 2 + std::size_t(inst);
    const Matrix t = random_diagonalizable(rng, n, 0.15, 0.2);
    const Calibration p = random_positive_calibration(rng, n, 2);
    const double r = eigenvalues(t).radius;
    const double mu = 1.05 * std::max(r, 0.2);
    const RenormedCalibration rn = renorm_spectral(p, t, mu);
    for (int sample = 0; sample < 2000; ++sample) {
      const Vector x = rng.vector(n);
      for (std::size_t m = 0; m < p.size(); ++m) {
        const double base = p[m](x);
        const double derived = rn.renormed[m](x);
        sandwich = std::max(sandwich, base - derived);  // p <= p'
        sandwich = std::max(sandwich,
                            derived - rn.members[m].upper_const * base * (1.0 + 1e-12));
        const double applied = rn.renormed[m](t.apply(x));
        contraction = std::max(contraction, applied - mu * derived * (1.0 + 1e-9));
      }
    }
    lb_bound = std::max(lb_bound, lb_radius(rn.renormed, t, 12, 512) - mu * (1.0 + 1e-9));
  }
  rep.add("renorm_sandwich", sandwich, 1e-12);
  rep.add("renorm_contraction", contraction, 1e-12);
  rep.add("renorm_lb_radius_below_mu", lb_bound, 1e-9);

  // ring-bounded resolvent norms off the spectrum
  double ring_norm = 0.0;
  {
    const std::size_t n = 3;
    const Matrix t = random_diagonalizable(rng, n, 0.25, 0.0);
    const Calibration p = Calibration::max_norm(n);
    const Spectrum s = eigenvalues(t);
    const Complex lam0 = Complex(s.radius + 0.9, -0.4);
    for (int k = 0; k < 12; ++k) {
      const double th = 2.0 * std::numbers::pi * k / 12.0;
      const Complex lam = lam0 + 0.2 * Complex(std::cos(th), std::sin(th));
      ring_norm = std::max(ring_norm, opnorm(p, resolvent_direct(t, lam)).value());
    }
  }
  rep.add("resolvent_bounded_on_rings", std::isfinite(ring_norm) ? 0.0 : 1.0, 0.5);
  return rep;
}

}  // namespace

std::vector<std::string> suite_names() {
  return {"calib", "spectral", "contour", "funcalc", "projections", "perturb", "renorm"};
}

SuiteReport run_suite(const std::string& name, std::uint64_t seed) {
  if (name == "calib") return suite_calib(seed);
  if (name == "spectral") return suite_spectral(seed);
  if (name == "contour") return suite_contour(seed);
  if (name == "funcalc") return suite_funcalc(seed);
  if (name == "projections") return suite_projections(seed);
  if (name == "perturb") return suite_perturb(seed);
  if (name == "renorm") return suite_renorm(seed);
  throw PreconditionError("run_suite: unknown suite '" + name + "'");
}

}  // namespace holocalc
