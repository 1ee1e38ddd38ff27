#include "holocalc/renorm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "holocalc/lu.hpp"
#include "holocalc/rng.hpp"

namespace holocalc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Index of a member whose weights dominate the componentwise target, if any.
std::optional<std::size_t> dominating_member(const Calibration& p,
                                             const std::vector<double>& target) {
  for (std::size_t c = 0; c < p.size(); ++c) {
    if (p[c].kind() != Seminorm::Kind::WeightedSup) continue;
    bool ok = true;
    for (std::size_t i = 0; i < target.size() && ok; ++i)
      ok = p[c].weights()[i] >= target[i];
    if (ok) return c;
  }
  return std::nullopt;
}

double sampled_operator_bound(const Calibration& p, const Matrix& t,
                              std::size_t samples, std::uint64_t seed) {
  double best = 0.0;
  for (std::size_t m = 0; m < p.size(); ++m)
    best = std::max(best, phat_estimate(p[m], t, samples, seed + m));
  return best;
}

}  // namespace

RenormedCalibration renorm_bounded(const Calibration& p, const Matrix& t,
                                   std::optional<std::size_t> p0_opt) {
  require_square(t, "renorm_bounded");
  if (p.dim() != t.rows()) throw DimensionError("renorm_bounded: dimension mismatch");
  if (!p.all_weighted_sup())
    throw PreconditionError("renorm_bounded: base calibration must be weighted_sup");

  auto witness_values = [&](std::size_t idx) -> std::optional<std::vector<double>> {
    std::vector<double> ms(p.size());
    for (std::size_t q = 0; q < p.size(); ++q) {
      const MixedValue m = mixed_seminorm(p[idx], p[q], t);
      if (!m.is_finite()) return std::nullopt;
      ms[q] = m.value();
    }
    return ms;
  };

  std::size_t p0 = 0;
  std::optional<std::vector<double>> ms;
  if (p0_opt) {
    if (*p0_opt >= p.size())
      throw PreconditionError("renorm_bounded: p0 index out of range");
    p0 = *p0_opt;
    ms = witness_values(p0);
    if (!ms)
      throw PreconditionError("renorm_bounded: chosen p0 has an infinite mixed "
                              "seminorm (kernel leaks through T)");
  } else {
    for (std::size_t idx = 0; idx < p.size() && !ms; ++idx) {
      ms = witness_values(idx);
      if (ms) p0 = idx;
    }
    if (!ms)
      throw PreconditionError("renorm_bounded: no member works as a locally-bounded "
                              "witness (every candidate has an infinite mixed seminorm)");
  }

  const auto& w0 = p[p0].weights();
  std::vector<Seminorm> renormed;
  std::vector<RenormMemberInfo> infos;
  double max_m = 0.0;
  for (std::size_t q = 0; q < p.size(); ++q) {
    const double m = (*ms)[q];
    max_m = std::max(max_m, m);
    std::vector<double> weights(p.dim());
    for (std::size_t i = 0; i < p.dim(); ++i)
      weights[i] = std::max(p[q].weights()[i], m * w0[i]);

    RenormMemberInfo info;
    info.lower_const = 1.0;  // q <= q' by construction
    std::vector<double> join(p.dim());
    for (std::size_t i = 0; i < p.dim(); ++i)
      join[i] = std::max(p[q].weights()[i], w0[i]);
    if (auto partner = dominating_member(p, join)) {
      info.upper_partner = *partner;
      info.upper_const = std::max(1.0, m);
    } else {
      info.upper_available = false;  // base family not directed at this pair
    }
    infos.push_back(info);
    renormed.push_back(Seminorm::weighted_sup(std::move(weights)));
  }

  RenormedCalibration out(p, Calibration(std::move(renormed)));
  out.members = std::move(infos);
  out.mode = "locally_bounded";

  const double c0 = std::max(1.0, phat(p[p0], t).value());
  out.bound_claim = c0 * max_m;
  const MixedValue norm = opnorm(out.renormed, t);
  if (!norm.is_finite())
    throw Error("renorm_bounded: renormed norm unexpectedly infinite");
  out.operator_bound = norm.value();
  out.bound_exact = true;
  return out;
}

RenormedCalibration renorm_spectral(const Calibration& p, const Matrix& t, double mu,
                                    const SpectralRenormOptions& opts) {
  require_square(t, "renorm_spectral");
  if (p.dim() != t.rows()) throw DimensionError("renorm_spectral: dimension mismatch");
  if (!p.all_weighted_sup())
    throw PreconditionError("renorm_spectral: base calibration must be weighted_sup");
  if (!(mu > 0.0)) throw PreconditionError("renorm_spectral: mu must be positive");
  if (!is_quotient_bounded(p, t))
    throw PreconditionError("renorm_spectral: operator is not quotient bounded");
  if (!(eigenvalues(t).radius < mu))
    throw PreconditionError("renorm_spectral: mu = " + std::to_string(mu) +
                            " does not exceed the spectral radius; the scaled "
                            "power head cannot stabilize");

  // Scaled powers U_n = T^n / mu^n. Primary stop: the operator-level tail
  // falls below tail_rel of the head. Secondary stop (keeps mu = 1.05 r
  // inside the depth cap): the tail is past its transient, monotonically
  // decaying, and below 1e-3 — the exact contraction certificate
  // p'(Tx) <= mu p'(x) only needs the dropped tail <= 1, since the n = 0
  // term already puts p(x) into the head.
  auto stack = std::make_shared<std::vector<Matrix>>();
  stack->push_back(Matrix::identity(t.rows()));
  double head = 1.0;  // n = 0 term: phat(I) = 1
  Matrix u = Matrix::identity(t.rows());
  std::size_t below_streak = 0;
  std::size_t since_head_growth = 0;
  std::size_t monotone_run = 0;
  double prev_g = kInf;
  for (std::size_t n = 1;; ++n) {
    u = t * u;
    u *= Complex(1.0 / mu);
    double g = 0.0;
    for (const auto& member : p.members()) {
      const MixedValue v = phat(member, u);
      if (!v.is_finite()) throw Error("renorm_spectral: unexpected infinite phat");
      g = std::max(g, v.value());
    }
    if (g > head) {
      head = g;
      since_head_growth = 0;
    } else {
      ++since_head_growth;
    }
    monotone_run = g <= prev_g ? monotone_run + 1 : 0;
    prev_g = g;
    if (g == 0.0) break;  // nilpotent index reached, the tail is exactly zero
    if (g < opts.tail_rel * head) {
      if (++below_streak >= 2) break;
    } else {
      below_streak = 0;
    }
    if (g <= 1e-3 && monotone_run >= opts.stabilization_run) break;
    stack->push_back(u);
    if (n >= opts.n_sup_cap) {
      const bool head_still_growing = since_head_growth < opts.stabilization_run;
      throw PreconditionError(std::string("renorm_spectral: ") +
                              (head_still_growing
                                   ? "scaled power head is still growing at the cap; "
                                     "mu does not exceed r_P(T)"
                                   : "tail did not fall below the truncation "
                                     "threshold within the cap; mu is too close "
                                     "to r_P(T)"));
    }
  }

  std::vector<Seminorm> renormed;
  std::vector<RenormMemberInfo> infos;
  for (std::size_t q = 0; q < p.size(); ++q) {
    double cap = 0.0;  // M_p = max_n phat(T^n)/mu^n, exact
    for (const auto& un : *stack) cap = std::max(cap, phat(p[q], un).value());
    RenormMemberInfo info;
    info.lower_const = 1.0;
    info.upper_const = cap;
    info.upper_partner = q;
    infos.push_back(info);
    renormed.push_back(Seminorm::derived(p[q].weights(), stack, mu));
  }

  RenormedCalibration out(p, Calibration(std::move(renormed)));
  out.members = std::move(infos);
  out.mode = "spectral_scaling";
  out.mu_a = mu;
  out.n_sup = stack->size() - 1;
  out.operator_bound = mu;  // p'(Tx) = mu * max_{1<=n<=N+1} <= mu p'(x) + tail
  out.bound_claim = mu;
  out.bound_exact = false;  // certified up to the dropped tail
  return out;
}

RenormedCalibration joint_renorm_commuting(const Calibration& p, const Matrix& a,
                                           const Matrix& b, double mu_a, double mu_b,
                                           const JointRenormOptions& opts) {
  require_square(a, "joint_renorm_commuting");
  require_same_dim(a, b, "joint_renorm_commuting");
  if (p.dim() != a.rows()) throw DimensionError("joint_renorm_commuting: dimension mismatch");
  if (!p.all_weighted_sup())
    throw PreconditionError("joint_renorm_commuting: base calibration must be weighted_sup");
  const double comm = commutator_norm(a, b);
  if (comm > opts.commutation_tol * std::max(a.inf_norm() * b.inf_norm(), 1e-300))
    throw PreconditionError("joint_renorm_commuting: operators do not commute");
  if (!(eigenvalues(a).radius < mu_a) || !(eigenvalues(b).radius < mu_b))
    throw PreconditionError("joint_renorm_commuting: mu_a/mu_b must exceed the "
                            "spectral radii");

  auto axis_powers = [&](const Matrix& op, double mu) {
    std::vector<Matrix> powers{Matrix::identity(op.rows())};
    Matrix u = Matrix::identity(op.rows());
    for (std::size_t n = 1; n <= opts.n_sup; ++n) {
      u = op * u;
      u *= Complex(1.0 / mu);
      powers.push_back(u);
    }
    return powers;
  };
  const auto pa = axis_powers(a, mu_a);
  const auto pb = axis_powers(b, mu_b);

  auto op_bound = [&](const Matrix& m) {
    double g = 0.0;
    for (const auto& member : p.members()) g = std::max(g, phat(member, m).value_or(kInf));
    return g;
  };

  // prune the double stack relative to its largest entry
  std::vector<std::pair<Matrix, double>> entries;
  double head = 0.0;
  for (const auto& ua : pa)
    for (const auto& ub : pb) {
      Matrix v = ua * ub;
      const double g = op_bound(v);
      head = std::max(head, g);
      entries.emplace_back(std::move(v), g);
    }
  auto stack = std::make_shared<std::vector<Matrix>>();
  for (auto& [v, g] : entries)
    if (g >= opts.prune_rel * head) stack->push_back(std::move(v));

  std::vector<Seminorm> renormed;
  std::vector<RenormMemberInfo> infos;
  for (std::size_t q = 0; q < p.size(); ++q) {
    double cap = 0.0;
    for (const auto& v : *stack) cap = std::max(cap, phat(p[q], v).value_or(kInf));
    RenormMemberInfo info;
    info.lower_const = 1.0;
    info.upper_const = cap;
    info.upper_partner = q;
    infos.push_back(info);
    renormed.push_back(Seminorm::derived(p[q].weights(), stack, std::max(mu_a, mu_b)));
  }

  RenormedCalibration out(p, Calibration(std::move(renormed)));
  out.members = std::move(infos);
  out.mode = "joint_commuting";
  out.mu_a = mu_a;
  out.mu_b = mu_b;
  out.n_sup = opts.n_sup;
  out.operator_bound = sampled_operator_bound(out.renormed, a, opts.bound_samples, 101);
  out.operator_bound_b = sampled_operator_bound(out.renormed, b, opts.bound_samples, 202);
  out.bound_claim = mu_a;
  out.bound_exact = false;
  return out;
}

double lb_radius(const Calibration& p, const Matrix& t, std::size_t n_max,
                 std::size_t samples) {
  require_square(t, "lb_radius");
  if (p.dim() != t.rows()) throw DimensionError("lb_radius: dimension mismatch");
  if (n_max < 1) throw PreconditionError("lb_radius: n_max must be >= 1");

  PowerSequence seq(t);
  double best = kInf;
  for (std::size_t n = 1; n <= n_max; ++n) {
    double log_norm;
    if (seq.vanished()) {
      return 0.0;  // nilpotent: the norm hits zero at the index
    }
    double g = 0.0;
    bool infinite = false;
    for (const auto& member : p.members()) {
      double v;
      if (member.kind() == Seminorm::Kind::WeightedSup) {
        const MixedValue mv = phat(member, seq.normalized());
        if (!mv.is_finite()) {
          infinite = true;
          break;
        }
        v = mv.value();
      } else {
        v = phat_estimate(member, seq.normalized(), samples, n);
      }
      g = std::max(g, v);
    }
    if (infinite)
      throw PreconditionError("lb_radius: ||T^n||_P is infinite; the operator is "
                              "not universally bounded for this calibration");
    log_norm = g > 0.0 ? std::log(g) + seq.log_scale() : -kInf;
    best = std::min(best, log_norm == -kInf ? 0.0 : std::exp(log_norm / double(n)));
    if (n < n_max) seq.advance();
  }
  return best;
}

SpectrumWitness min_ratio_witness(const Calibration& p, const Matrix& t, Complex lambda,
                                  std::size_t samples, std::size_t refine_iters,
                                  std::uint64_t seed) {
  const std::size_t n = t.rows();
  Matrix shifted = Matrix::identity(n) * lambda - t;

  SpectrumWitness best;
  best.lambda = lambda;
  best.ratio = kInf;
  auto consider = [&](const Vector& x) {
    for (std::size_t m = 0; m < p.size(); ++m) {
      const double px = p[m](x);
      if (px <= 0.0) continue;
      const double r = p[m](shifted.apply(x)) / px;
      if (r < best.ratio) {
        best.ratio = r;
        best.member = m;
        best.x = x;
      }
    }
  };

  Vector probe(n, Complex(0.0));
  for (std::size_t j = 0; j < n; ++j) {
    probe[j] = 1.0;
    consider(probe);
    probe[j] = 0.0;
  }
  Rng rng(seed ^ 0x517e55ULL);
  for (std::size_t s = 0; s < samples; ++s) consider(rng.vector(n));

  // local refinement around the best vector found
  double step = 0.5;
  for (std::size_t it = 0; it < refine_iters && !best.x.empty(); ++it) {
    Vector cand = best.x;
    for (auto& c : cand) c += step * rng.in_disc(1.0);
    const double before = best.ratio;
    consider(cand);
    if (best.ratio >= before) step *= 0.7;
  }
  return best;
}

SpectrumClassification classify_spectrum(const Calibration& p, const Matrix& t,
                                         double tol, const ClassifyOptions& opts) {
  require_square(t, "classify_spectrum");
  if (p.dim() != t.rows()) throw DimensionError("classify_spectrum: dimension mismatch");
  const std::size_t n = t.rows();
  const double scale = std::max(t.max_abs(), 1.0);

  SpectrumClassification out;
  out.finite_dimension_note =
      "finite-dimensional backend: rank-nullity makes every spectral point an "
      "eigenvalue, so the continuous and residual parts are empty and "
      "sigma = sigma_p";

  const Spectrum s = eigenvalues(t);
  // group refined eigenvalues into distinct values
  std::vector<std::pair<Complex, std::size_t>> distinct;
  for (const auto& ev : s.eigenvalues) {
    bool merged = false;
    for (auto& [val, count] : distinct) {
      if (std::abs(val - ev) <= 1e-8 * scale) {
        val = (val * double(count) + ev) / double(count + 1);
        ++count;
        merged = true;
        break;
      }
    }
    if (!merged) distinct.emplace_back(ev, 1);
  }

  for (const auto& [val, count] : distinct) {
    PointEigenvalue pe;
    pe.value = val;
    pe.algebraic_multiplicity = count;
    Matrix shifted = Matrix::identity(n) * val - t;
    const auto kernel = null_space(shifted, std::max(tol, 1e-10) * scale);
    pe.geometric_multiplicity = kernel.size();
    if (!kernel.empty()) {
      pe.witness = kernel.front();
    } else {
      pe.witness = recover_pair(t, val).vector;  // residual contract fallback
      pe.geometric_multiplicity = 1;
    }
    pe.residual = vector_norm2(shifted.apply(pe.witness));
    out.point.push_back(pe);

    SpectrumWitness w;
    w.lambda = val;
    w.x = pe.witness;
    double best = kInf;
    for (std::size_t m = 0; m < p.size(); ++m) {
      const double px = p[m](pe.witness);
      if (px <= 0.0) continue;
      const double r = p[m](shifted.apply(pe.witness)) / px;
      if (r < best) {
        best = r;
        w.member = m;
      }
    }
    w.ratio = best == kInf ? 0.0 : best;
    out.approximate.push_back(w);
  }

  // ring scan around the spectrum for additional approximate witnesses
  std::uint64_t seed = 7;
  for (const auto& [val, count] : distinct) {
    (void)count;
    for (std::size_t ring = 1; ring <= opts.grid_rings; ++ring) {
      const double rho = opts.ring_scale * scale * double(ring) / double(opts.grid_rings);
      for (std::size_t ang = 0; ang < opts.grid_angles; ++ang) {
        const double th = 2.0 * 3.14159265358979323846 * double(ang) / double(opts.grid_angles);
        const Complex lambda = val + rho * Complex(std::cos(th), std::sin(th));
        if (spectrum_distance(s.eigenvalues, lambda) <= 1e-12 * scale) continue;
        SpectrumWitness w = min_ratio_witness(p, t, lambda, opts.search_samples,
                                              opts.refine_iters, seed++);
        for (double level : out.probe_ladder) {
          if (w.ratio < level) {
            out.approximate.push_back(w);
            break;
          }
        }
      }
    }
  }
  return out;
}

IntersectionReport spectrum_intersection_check(const Calibration& p, const Matrix& t,
                                               const Vector& lambda_samples,
                                               const JointRenormOptions& opts) {
  require_square(t, "spectrum_intersection_check");
  const Spectrum s = eigenvalues(t);
  IntersectionReport rep;
  for (const auto& lambda : lambda_samples) {
    const double dist = spectrum_distance(s.eigenvalues, lambda);
    if (!(dist > 1e-12 * std::max(1.0, t.max_abs())))
      throw PreconditionError("spectrum_intersection_check: sample lambda lies on "
                              "the spectrum");
    IntersectionEntry entry;
    entry.lambda = lambda;
    try {
      const Matrix r = resolvent_direct(t, lambda);
      const double mu_a = 1.05 * std::max(s.radius, 1e-6);
      const double mu_b = 1.05 / dist;
      const RenormedCalibration joint =
          joint_renorm_commuting(p, t, r, mu_a, mu_b, opts);
      entry.norm_t = joint.operator_bound;
      entry.norm_r = joint.operator_bound_b;
      entry.witness_found = std::isfinite(entry.norm_t) && std::isfinite(entry.norm_r);
      if (!entry.witness_found) entry.detail = "sampled bounds not finite";
    } catch (const Error& e) {
      entry.witness_found = false;
      entry.detail = e.what();
    }
    rep.all_succeeded = rep.all_succeeded && entry.witness_found;
    rep.entries.push_back(entry);
  }
  return rep;
}

}  // namespace holocalc
