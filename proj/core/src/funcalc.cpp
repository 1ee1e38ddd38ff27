#include "holocalc/funcalc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>

#include "holocalc/lu.hpp"
#include "holocalc/parallel.hpp"

namespace holocalc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_analytic(const HoloFun& f, const Contour& gamma, const char* who) {
  for (const auto& c : gamma.circles)
    if (!f.analytic_for_circle(c.center, c.radius))
      throw PreconditionError(std::string(who) +
                              ": integrand is not analytic on an annulus around "
                              "a contour circle (" +
                              f.describe() + ")");
}

/// sum_j w_j m(lambda_j) R(lambda_j, T), node solves in parallel, reduction
/// in fixed node order.
Matrix quadrature_pass(const Matrix& t, const Contour& gamma, std::size_t nodes,
                       const std::function<Matrix(Complex, const Matrix&)>& integrand) {
  const auto pts = quadrature_nodes(gamma, nodes);
  const std::size_t n = t.rows();
  std::vector<Matrix> slot(pts.size());
  std::exception_ptr failure;
  std::mutex failure_mutex;
  parallel_for(pts.size(), [&](std::size_t j) {
    try {
      const Matrix r = resolvent_direct(t, pts[j].lambda);
      slot[j] = integrand(pts[j].lambda, r) * pts[j].weight;
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  });
  if (failure) {
    try {
      std::rethrow_exception(failure);
    } catch (const SingularError&) {
      throw SingularError("funcalc: resolvent singular at a quadrature node; "
                          "the contour touches the spectrum");
    }
  }
  Matrix sum(n, n);
  for (const auto& m : slot) sum += m;
  return sum;
}

FuncalcReport adaptive_quadrature(const Calibration& p, const Matrix& t,
                                  const Contour& gamma, double tol,
                                  const FuncalcOptions& opts,
                                  const std::function<Matrix(Complex, const Matrix&)>& integrand) {
  if (!(tol > 0.0)) throw PreconditionError("funcalc: tol must be positive");
  std::size_t nodes = opts.initial_nodes;
  for (const auto& c : gamma.circles) nodes = std::max(nodes, c.nodes);
  Matrix prev = quadrature_pass(t, gamma, nodes, integrand);
  while (2 * nodes <= opts.max_nodes) {
    nodes *= 2;
    Matrix next = quadrature_pass(t, gamma, nodes, integrand);
    const double delta = defect_norm(p, next - prev);
    if (delta < tol) {
      FuncalcReport rep;
      rep.value = std::move(next);
      rep.nodes_used = nodes;
      rep.last_delta = delta;
      rep.commutation_defect = defect_norm(p, rep.value * t - t * rep.value);
      return rep;
    }
    prev = std::move(next);
  }
  throw ConvergenceError("funcalc: quadrature did not stabilize below tol at " +
                         std::to_string(opts.max_nodes) +
                         " nodes; contour or analyticity metadata is suspect");
}

}  // namespace

FuncalcReport apply_funcalc_report(const Calibration& p, const Matrix& t,
                                   const HoloFun& f, const Contour& gamma, double tol,
                                   const FuncalcOptions& opts) {
  require_square(t, "apply_funcalc");
  if (p.dim() != t.rows()) throw DimensionError("apply_funcalc: dimension mismatch");
  if (gamma.circles.empty()) throw PreconditionError("apply_funcalc: empty contour");
  check_analytic(f, gamma, "apply_funcalc");
  return adaptive_quadrature(p, t, gamma, tol, opts,
                             [&](Complex lambda, const Matrix& r) { return r * f.eval(lambda); });
}

Matrix apply_funcalc(const Calibration& p, const Matrix& t, const HoloFun& f,
                     const Contour& gamma, double tol, const FuncalcOptions& opts) {
  return apply_funcalc_report(p, t, f, gamma, tol, opts).value;
}

OperatorValuedFun OperatorValuedFun::constant(const Matrix& s) {
  return {{{HoloFun::constant(Complex(1.0)), s}}};
}

OperatorValuedFun OperatorValuedFun::identity_times_lambda(std::size_t n) {
  return {{{HoloFun::identity(), Matrix::identity(n)}}};
}

Matrix apply_operator_valued(const Calibration& p, const Matrix& t,
                             const OperatorValuedFun& f, const Contour& gamma,
                             double tol, const FuncalcOptions& opts) {
  require_square(t, "apply_operator_valued");
  if (p.dim() != t.rows())
    throw DimensionError("apply_operator_valued: dimension mismatch");
  if (f.components.empty())
    throw PreconditionError("apply_operator_valued: empty integrand");
  for (const auto& comp : f.components) {
    check_analytic(comp.g, gamma, "apply_operator_valued");
    require_same_dim(comp.c, t, "apply_operator_valued");
  }
  auto integrand = [&](Complex lambda, const Matrix& r) {
    Matrix m(t.rows(), t.cols());
    for (const auto& comp : f.components) m += comp.c * comp.g.eval(lambda);
    return m * r;
  };
  return adaptive_quadrature(p, t, gamma, tol, opts, integrand).value;
}

SeriesResult funcalc_power_series(const Calibration& p, const Matrix& t,
                                  const std::function<Complex(std::size_t)>& coeff,
                                  double radius, double tol, std::size_t max_terms) {
  require_square(t, "funcalc_power_series");
  if (p.dim() != t.rows()) throw DimensionError("funcalc_power_series: dimension mismatch");
  const SpectralRadiusEstimate rad = spectral_radius(p, t, 60);
  if (!(rad.certified_upper() < radius))
    throw PreconditionError("funcalc_power_series: certified radius " +
                            std::to_string(rad.certified_upper()) +
                            " does not sit below the series radius " +
                            std::to_string(radius));

  auto member_norm = [&](const Matrix& m) {
    double best = 0.0;
    for (const auto& member : p.members()) {
      const double v = member.kind() == Seminorm::Kind::WeightedSup
                           ? phat(member, m).value_or(kInf)
                           : phat_estimate(member, m, 512, 11);
      best = std::max(best, v);
    }
    return best;
  };

  const std::size_t n = t.rows();
  SeriesResult out;
  out.value = Matrix::zero(n);
  // k = 0 term
  out.value += Matrix::identity(n) * coeff(0);
  out.terms_used = 1;

  PowerSequence seq(t);  // T^1 onward, normalized with log scale
  for (std::size_t k = 1; k <= max_terms; ++k) {
    const Complex a = coeff(k);
    double log_term;
    if (a == Complex(0.0) || seq.vanished()) {
      log_term = -kInf;
    } else {
      const double pn = member_norm(seq.normalized());
      log_term = pn > 0.0 ? std::log(std::abs(a)) + seq.log_scale() + std::log(pn)
                          : -kInf;
    }
    if (log_term < std::log(tol)) {
      out.tail_bound = log_term == -kInf ? 0.0 : std::exp(log_term);
      return out;
    }
    const Complex factor = a * std::exp(seq.log_scale());
    out.value += seq.normalized() * factor;
    ++out.terms_used;
    seq.advance();
  }
  throw ConvergenceError("funcalc_power_series: no convergence within " +
                         std::to_string(max_terms) + " terms");
}

SeriesResult funcalc_power_series(const Calibration& p, const Matrix& t,
                                  const HoloFun& f, double tol, std::size_t max_terms) {
  if (!f.has_series_form())
    throw PreconditionError("funcalc_power_series: function has no power-series form");
  return funcalc_power_series(
      p, t, [&](std::size_t k) { return f.series_coefficient(k); }, f.radius(), tol,
      max_terms);
}

Domain default_domain(const Vector& eigs, const HoloFun& f, double gap,
                      double margin_scale) {
  if (eigs.empty()) throw PreconditionError("default_domain: empty spectrum");
  const auto clusters = cluster_spectrum(eigs, gap);
  Domain d;
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    const auto& c = clusters[i];
    double margin = 1.0 + c.extent;  // cap: do not balloon for entire functions
    for (std::size_t j = 0; j < clusters.size(); ++j) {
      if (j == i) continue;
      const double hull_gap = std::abs(c.centroid - clusters[j].centroid) -
                              c.extent - clusters[j].extent;
      margin = std::min(margin, hull_gap / 2.0);
    }
    for (const auto& pole : f.poles())
      margin = std::min(margin, (std::abs(pole - c.centroid) - c.extent) / 2.0);
    if (f.radius() < kInf)
      margin = std::min(margin,
                        (f.radius() * (1.0 - 1e-9) - std::abs(c.centroid) - c.extent) / 2.0);
    margin *= margin_scale;
    if (!(margin > 0.0))
      throw PreconditionError("default_domain: no analytic margin around the "
                              "spectrum cluster at (" +
                              std::to_string(c.centroid.real()) + ", " +
                              std::to_string(c.centroid.imag()) + ")");
    d.disks.push_back({c.centroid, c.extent + margin});
  }
  return d;
}

Contour default_contour(const Matrix& t, const HoloFun& f, const FuncalcOptions& opts) {
  const Spectrum s = eigenvalues(t);
  const Domain d = default_domain(s.eigenvalues, f, opts.gap, opts.margin_scale);
  ContourOptions copts;
  copts.nodes_per_circle = opts.initial_nodes;
  return build_cauchy_contour(s.eigenvalues, {}, d, copts);
}

namespace {

/// Kuhn augmenting-path feasibility for a distance threshold.
bool perfect_matching_under(const std::vector<std::vector<double>>& dist, double thresh) {
  const std::size_t n = dist.size();
  std::vector<long> match(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<bool> seen(n, false);
    std::function<bool(std::size_t)> augment = [&](std::size_t u) -> bool {
      for (std::size_t v = 0; v < n; ++v) {
        if (seen[v] || dist[u][v] > thresh) continue;
        seen[v] = true;
        if (match[v] < 0 || augment(std::size_t(match[v]))) {
          match[v] = long(u);
          return true;
        }
      }
      return false;
    };
    if (!augment(i)) return false;
  }
  return true;
}

}  // namespace

double bottleneck_match_distance(const Vector& a, const Vector& b) {
  if (a.size() != b.size())
    throw DimensionError("bottleneck_match_distance: multiset sizes differ");
  const std::size_t n = a.size();
  if (n == 0) return 0.0;
  std::vector<std::vector<double>> dist(n, std::vector<double>(n));
  std::vector<double> all;
  all.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      dist[i][j] = std::abs(a[i] - b[j]);
      all.push_back(dist[i][j]);
    }
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  std::size_t lo = 0, hi = all.size() - 1;
  if (!perfect_matching_under(dist, all[hi])) return kInf;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (perfect_matching_under(dist, all[mid]))
      hi = mid;
    else
      lo = mid + 1;
  }
  return all[lo];
}

Matrix polynomial_in_matrix(const Vector& coeffs, const Matrix& t) {
  require_square(t, "polynomial_in_matrix");
  const std::size_t n = t.rows();
  Matrix acc(n, n);
  for (std::size_t k = coeffs.size(); k-- > 0;) {
    acc = acc * t;
    acc += Matrix::identity(n) * coeffs[k];
  }
  return acc;
}

MappingReport spectral_mapping_check(const Calibration& p, const Matrix& t,
                                     const HoloFun& f, double gap,
                                     const FuncalcOptions& opts) {
  FuncalcOptions o = opts;
  o.gap = gap;
  const Contour gamma = default_contour(t, f, o);
  const Matrix ft = apply_funcalc(p, t, f, gamma, 1e-11, o);

  MappingReport rep;
  const Spectrum st = eigenvalues(t);
  rep.mapped_spectrum.reserve(st.eigenvalues.size());
  for (const auto& ev : st.eigenvalues) rep.mapped_spectrum.push_back(f.eval(ev));
  rep.image_spectrum = eigenvalues(ft).eigenvalues;
  rep.max_matched_distance =
      bottleneck_match_distance(rep.mapped_spectrum, rep.image_spectrum);
  return rep;
}

CompositionReport composition_check(const Calibration& p, const Matrix& t,
                                    const HoloFun& f, const HoloFun& g, double tol,
                                    const FuncalcOptions& opts) {
  const HoloFun gof = HoloFun::compose(g, f);
  const Contour gamma = default_contour(t, gof, opts);

  CompositionReport rep;
  rep.composed = apply_funcalc(p, t, gof, gamma, tol, opts);
  const Matrix ft = apply_funcalc(p, t, f, gamma, tol, opts);
  const Contour gamma_inner = default_contour(ft, g, opts);
  rep.nested = apply_funcalc(p, ft, g, gamma_inner, tol, opts);
  rep.deviation = defect_norm(p, rep.composed - rep.nested);
  return rep;
}

}  // namespace holocalc
