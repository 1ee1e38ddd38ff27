#include "holocalc/projections.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace holocalc {

namespace {

struct SplitSpectrum {
  Vector enclosed;
  Vector excluded;
  std::size_t multiplicity = 0;
};

SplitSpectrum split_by_set(const Vector& eigs, const std::vector<EigenCluster>& clusters,
                           const SpectralSet& h) {
  std::set<std::size_t> chosen(h.cluster_indices.begin(), h.cluster_indices.end());
  for (auto idx : chosen)
    if (idx >= clusters.size())
      throw PreconditionError("spectral set refers to cluster " + std::to_string(idx) +
                              " of " + std::to_string(clusters.size()));
  SplitSpectrum out;
  for (std::size_t ci = 0; ci < clusters.size(); ++ci) {
    for (auto mi : clusters[ci].member_indices) {
      if (chosen.count(ci)) {
        out.enclosed.push_back(eigs[mi]);
        ++out.multiplicity;
      } else {
        out.excluded.push_back(eigs[mi]);
      }
    }
  }
  return out;
}

}  // namespace

ProjectionReport spectral_projection(const Calibration& p, const Matrix& t,
                                     const SpectralSet& h, double tol,
                                     const ProjectionOptions& opts) {
  require_square(t, "spectral_projection");
  if (p.dim() != t.rows()) throw DimensionError("spectral_projection: dimension mismatch");
  const std::size_t n = t.rows();

  ProjectionReport rep;
  rep.set = h;
  if (h.cluster_indices.empty()) {
    rep.projector = Matrix::zero(n);
    return rep;
  }

  const Spectrum s = eigenvalues(t);
  const auto clusters = cluster_spectrum(s.eigenvalues, opts.gap);
  const SplitSpectrum split = split_by_set(s.eigenvalues, clusters, h);
  rep.multiplicity = split.multiplicity;

  const Domain d = default_domain(s.eigenvalues, HoloFun::constant(Complex(1.0)), opts.gap);
  ContourOptions copts;
  copts.nodes_per_circle = opts.initial_nodes;
  const Contour gamma = build_cauchy_contour(split.enclosed, split.excluded, d, copts);

  FuncalcOptions fopts;
  fopts.initial_nodes = opts.initial_nodes;
  fopts.max_nodes = opts.max_nodes;
  const FuncalcReport fc = apply_funcalc_report(p, t, HoloFun::constant(Complex(1.0)),
                                                gamma, tol, fopts);
  rep.projector = fc.value;
  rep.nodes_used = fc.nodes_used;
  rep.commutation_defect = fc.commutation_defect;
  rep.idempotency_defect = defect_norm(p, rep.projector * rep.projector - rep.projector);
  rep.trace_defect = std::abs(rep.projector.trace() - Complex(double(split.multiplicity)));
  return rep;
}

ProjectionAlgebraReport projection_algebra_check(const Calibration& p, const Matrix& t,
                                                 const SpectralSet& h,
                                                 const SpectralSet& k, double tol,
                                                 const ProjectionOptions& opts) {
  std::set<std::size_t> hs(h.cluster_indices.begin(), h.cluster_indices.end());
  std::set<std::size_t> ks(k.cluster_indices.begin(), k.cluster_indices.end());
  SpectralSet inter, uni;
  for (auto i : hs)
    if (ks.count(i)) inter.cluster_indices.push_back(i);
  for (auto i : hs) uni.cluster_indices.push_back(i);
  for (auto i : ks)
    if (!hs.count(i)) uni.cluster_indices.push_back(i);

  const Matrix ph = spectral_projection(p, t, h, tol, opts).projector;
  const Matrix pk = spectral_projection(p, t, k, tol, opts).projector;
  const Matrix pint = spectral_projection(p, t, inter, tol, opts).projector;

  ProjectionAlgebraReport rep;
  rep.intersection_defect = defect_norm(p, pint - ph * pk);
  if (inter.cluster_indices.empty()) {
    const Matrix puni = spectral_projection(p, t, uni, tol, opts).projector;
    rep.union_defect = defect_norm(p, puni - ph - pk);
    rep.union_checked = true;
  }
  return rep;
}

PowerBoundReport verify_resolvent_power_bound(const Calibration& p, const Matrix& t,
                                              const Vector& samples, double eps0,
                                              std::size_t n_max) {
  require_square(t, "verify_resolvent_power_bound");
  if (!(eps0 > 0.0))
    throw PreconditionError("verify_resolvent_power_bound: eps0 must be positive");
  const Spectrum s = eigenvalues(t);
  for (const auto& lambda : samples)
    if (!(spectrum_distance(s.eigenvalues, lambda) > eps0))
      throw PreconditionError("verify_resolvent_power_bound: sample within eps0 "
                              "of the spectrum");

  PowerBoundReport rep;
  rep.envelope.assign(p.size(), 0.0);
  // transient growth is expected for defective resolvents; only the tail of
  // the run has to be nonincreasing
  const std::size_t burn_in = std::min(n_max, std::max<std::size_t>(5, n_max / 4));
  for (const auto& lambda : samples) {
    const Matrix r = resolvent_direct(t, lambda);
    PowerSequence seq(r);
    std::vector<double> prev(p.size(), std::numeric_limits<double>::infinity());
    for (std::size_t n = 1; n <= n_max; ++n) {
      for (std::size_t m = 0; m < p.size(); ++m) {
        double log_pn;
        if (seq.vanished()) {
          log_pn = -std::numeric_limits<double>::infinity();
        } else if (p[m].kind() == Seminorm::Kind::WeightedSup) {
          log_pn = log_phat_scaled(p[m], seq.normalized(), seq.log_scale());
        } else {
          const double est = phat_estimate(p[m], seq.normalized(), 512, n);
          log_pn = est > 0.0 ? std::log(est) + seq.log_scale()
                             : -std::numeric_limits<double>::infinity();
        }
        const double scaled = std::exp(double(n) * std::log(eps0) + log_pn);
        rep.envelope[m] = std::max(rep.envelope[m], scaled);
        if (n > burn_in && scaled > prev[m] * (1.0 + 1e-9)) rep.bounded_in_n = false;
        prev[m] = scaled;
      }
      if (n < n_max) seq.advance();
    }
  }
  for (double e : rep.envelope) rep.max_envelope = std::max(rep.max_envelope, e);
  return rep;
}

LowerBoundReport resolvent_lower_bound_check(const Matrix& t, Complex lambda,
                                             const std::vector<Calibration>& calibrations) {
  require_square(t, "resolvent_lower_bound_check");
  const Spectrum s = eigenvalues(t);
  const double dist = spectrum_distance(s.eigenvalues, lambda);
  if (!(dist > 0.0))
    throw PreconditionError("resolvent_lower_bound_check: lambda on the spectrum");
  const Matrix r = resolvent_direct(t, lambda);

  LowerBoundReport rep;
  for (const auto& p : calibrations) {
    const UniversalBound bt = is_universally_bounded(p, t);
    const UniversalBound br = is_universally_bounded(p, r);
    if (!bt.bounded || !br.bounded)
      throw PreconditionError("resolvent_lower_bound_check: calibration does not "
                              "make T and R universally bounded");
    LowerBoundReport::Entry e;
    e.opnorm_resolvent = br.bound;
    e.inverse_distance = 1.0 / dist;
    e.holds = e.opnorm_resolvent >= e.inverse_distance - 1e-12;
    rep.all_hold = rep.all_hold && e.holds;
    rep.per_calibration.push_back(e);
  }
  return rep;
}

}  // namespace holocalc
