#include "holocalc/perturb.hpp"

#include <cmath>
#include <limits>
#include <mutex>

#include "holocalc/lu.hpp"
#include "holocalc/parallel.hpp"

namespace holocalc {

namespace {

/// Quadrature nodes with the resolvents of T solved once and reused across
/// every derivative order.
struct CachedLevel {
  std::vector<QuadratureNode> nodes;
  std::vector<Matrix> resolvents;
};

CachedLevel solve_level(const Matrix& t, const Contour& gamma, std::size_t nodes) {
  CachedLevel level;
  level.nodes = quadrature_nodes(gamma, nodes);
  level.resolvents.resize(level.nodes.size());
  std::exception_ptr failure;
  std::mutex failure_mutex;
  parallel_for(level.nodes.size(), [&](std::size_t j) {
    try {
      level.resolvents[j] = resolvent_direct(t, level.nodes[j].lambda);
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  });
  if (failure) std::rethrow_exception(failure);
  return level;
}

Matrix weighted_sum(const CachedLevel& level, const HoloFun& f, int order,
                    std::size_t dim) {
  Matrix sum(dim, dim);
  for (std::size_t j = 0; j < level.nodes.size(); ++j)
    sum += level.resolvents[j] *
           (level.nodes[j].weight * f.derivative(order, level.nodes[j].lambda));
  return sum;
}

}  // namespace

PerturbationResult perturbation_series(const Calibration& p, const Matrix& t,
                                       const Matrix& s, const HoloFun& f,
                                       const Domain& d, double tol,
                                       const PerturbOptions& opts) {
  require_square(t, "perturbation_series");
  require_same_dim(t, s, "perturbation_series");
  if (p.dim() != t.rows()) throw DimensionError("perturbation_series: dimension mismatch");
  if (!(tol > 0.0)) throw PreconditionError("perturbation_series: tol must be positive");

  const double comm = commutator_norm(t, s);
  const double comm_scale = t.inf_norm() * s.inf_norm();
  if (comm > opts.commutation_tol * std::max(comm_scale, 1e-300) && comm > 0.0)
    throw PreconditionError("perturbation_series: T and S do not commute (||[T,S]|| = " +
                            std::to_string(comm) + ")");

  const Spectrum st = eigenvalues(t);
  double dist = std::numeric_limits<double>::infinity();
  for (const auto& ev : st.eigenvalues)
    dist = std::min(dist, d.distance_to_complement(ev));
  if (!(dist > 0.0))
    throw PreconditionError("perturbation_series: spectrum of T not inside the domain");

  const SpectralRadiusEstimate rs = spectral_radius(p, s, opts.radius_n_max);
  if (!(rs.certified_upper() < dist))
    throw PreconditionError("perturbation_series: certified radius of S (" +
                            std::to_string(rs.certified_upper()) +
                            ") must stay below dist(sigma(T), complement) = " +
                            std::to_string(dist));
  for (const auto& disk : d.disks)
    if (!f.analytic_at(disk.center, disk.radius))
      throw PreconditionError("perturbation_series: f is not analytic on the domain");

  ContourOptions copts;
  copts.nodes_per_circle = opts.initial_nodes;
  const Contour gamma = build_cauchy_contour(st.eigenvalues, {}, d, copts);

  const std::size_t n = t.rows();
  // adapt the node count on f itself, then keep the two finest levels
  std::size_t nodes = opts.initial_nodes;
  CachedLevel coarse = solve_level(t, gamma, nodes);
  CachedLevel fine = solve_level(t, gamma, nodes * 2);
  Matrix a0_coarse = weighted_sum(coarse, f, 0, n);
  Matrix a0 = weighted_sum(fine, f, 0, n);
  while (defect_norm(p, a0 - a0_coarse) >= tol) {
    nodes *= 2;
    if (nodes * 2 > opts.max_nodes)
      throw ConvergenceError("perturbation_series: quadrature did not stabilize");
    coarse = std::move(fine);
    a0_coarse = std::move(a0);
    fine = solve_level(t, gamma, nodes * 2);
    a0 = weighted_sum(fine, f, 0, n);
  }

  PerturbationResult out;
  out.value = a0;
  out.terms_used = 1;

  Matrix s_pow_over_fact = Matrix::identity(n);  // S^n / n!
  double prev_norm = std::numeric_limits<double>::infinity();
  std::size_t growth_streak = 0;
  for (std::size_t k = 1; k <= opts.max_terms; ++k) {
    s_pow_over_fact = s_pow_over_fact * s;
    s_pow_over_fact *= Complex(1.0 / double(k));
    if (int(k) > HoloFun::kMaxDerivative) {
      // past the closed-form derivative order the term must already be
      // negligible; otherwise the ratio guard below has failed us
      throw ConvergenceError("perturbation_series: series needs derivatives beyond "
                             "the supported order");
    }
    Matrix ak = weighted_sum(fine, f, int(k), n);
    // escalate the shared node count when a derivative term is not stable yet
    while (defect_norm(p, ak - weighted_sum(coarse, f, int(k), n)) >= tol) {
      nodes *= 2;
      if (nodes * 2 > opts.max_nodes)
        throw ConvergenceError("perturbation_series: quadrature did not stabilize "
                               "for derivative order " + std::to_string(k));
      coarse = std::move(fine);
      fine = solve_level(t, gamma, nodes * 2);
      ak = weighted_sum(fine, f, int(k), n);
    }
    const Matrix term = ak * s_pow_over_fact;
    const double tn = defect_norm(p, term);
    if (tn < tol) {
      out.tail_estimate = tn;
      break;
    }
    out.value += term;
    ++out.terms_used;
    if (tn > prev_norm) {
      if (++growth_streak >= 6)
        throw ConvergenceError("perturbation_series: terms stopped decaying; "
                               "the radius/distance precondition is too tight");
    } else {
      growth_streak = 0;
    }
    prev_norm = tn;
    if (k == opts.max_terms)
      throw ConvergenceError("perturbation_series: no convergence within " +
                             std::to_string(opts.max_terms) + " terms");
  }

  // Certified inclusion: the perturbed spectrum stays inside the domain.
  const Spectrum sts = eigenvalues(t + s);
  double margin = std::numeric_limits<double>::infinity();
  for (const auto& ev : sts.eigenvalues)
    margin = std::min(margin, d.distance_to_complement(ev));
  if (!(margin > 0.0))
    throw PreconditionError("perturbation_series: spectrum of T + S escaped the domain");
  out.spectrum_in_domain_margin = margin;

  if (opts.compute_direct) {
    const Contour gamma_ts = build_cauchy_contour(sts.eigenvalues, {}, d, copts);
    FuncalcOptions fopts;
    fopts.initial_nodes = opts.initial_nodes;
    fopts.max_nodes = opts.max_nodes;
    const Matrix direct = apply_funcalc(p, t + s, f, gamma_ts, tol, fopts);
    out.direct_deviation = defect_norm(p, out.value - direct);
  }
  return out;
}

QuasinilpotentReport is_quasinilpotent(const Calibration& p, const Matrix& t,
                                       std::size_t n_max) {
  const SpectralRadiusEstimate rad = spectral_radius(p, t, n_max);
  QuasinilpotentReport rep;
  rep.inf_form_radius = rad.certified_upper();
  rep.max_eigen_modulus = rad.eigen_radius();
  const bool by_radius = rep.inf_form_radius < 1e-8;
  const bool by_spectrum = rep.max_eigen_modulus < 1e-8;
  rep.quasinilpotent = by_radius && by_spectrum;
  rep.equivalence_consistent = by_radius == by_spectrum;
  return rep;
}

}  // namespace holocalc
