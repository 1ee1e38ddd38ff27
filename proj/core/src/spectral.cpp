#include "holocalc/spectral.hpp"

#include <cmath>
#include <limits>

#include "holocalc/lu.hpp"

namespace holocalc {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

PowerSequence::PowerSequence(const Matrix& t) : base_(t), power_(t) {
  require_square(t, "PowerSequence");
  const double s = power_.max_abs();
  if (s == 0.0) {
    vanished_ = true;
    return;
  }
  power_ *= Complex(1.0 / s);
  log_scale_ = std::log(s);
}

void PowerSequence::advance() {
  if (vanished_) {
    ++exponent_;
    return;
  }
  power_ = base_ * power_;
  ++exponent_;
  const double s = power_.max_abs();
  if (s == 0.0) {
    vanished_ = true;
    log_scale_ = -kInf;
    return;
  }
  power_ *= Complex(1.0 / s);
  log_scale_ += std::log(s);
}

SpectralRadiusEstimate spectral_radius(const Calibration& p, const Matrix& t,
                                       std::size_t n_max) {
  require_square(t, "spectral_radius");
  if (p.dim() != t.rows()) throw DimensionError("spectral_radius: dimension mismatch");
  if (n_max < 2) throw PreconditionError("spectral_radius: n_max must be >= 2");
  if (!is_quotient_bounded(p, t))
    throw PreconditionError("spectral_radius: operator is not quotient bounded "
                            "for the calibration");

  const std::size_t members = p.size();
  // log phat(T^n) per member, n = 1..n_max
  std::vector<std::vector<double>> logs(members);
  for (auto& v : logs) v.reserve(n_max);

  PowerSequence seq(t);
  for (std::size_t n = 1; n <= n_max; ++n) {
    for (std::size_t m = 0; m < members; ++m) {
      double lp;
      if (seq.vanished()) {
        lp = -kInf;
      } else if (p[m].kind() == Seminorm::Kind::WeightedSup) {
        lp = log_phat_scaled(p[m], seq.normalized(), seq.log_scale());
      } else {
        const double est = phat_estimate(p[m], seq.normalized(), 2048, n);
        lp = est > 0.0 ? std::log(est) + seq.log_scale() : -kInf;
      }
      logs[m].push_back(lp);
    }
    if (n < n_max) seq.advance();
  }

  // certified upper value: max over members of min over n of phat(T^n)^(1/n)
  double inf_form = 0.0;
  double inf_form_prev = 0.0;  // same thing at n_max - 1, for convergence
  for (std::size_t m = 0; m < members; ++m) {
    double best = kInf, best_prev = kInf;
    for (std::size_t n = 1; n <= n_max; ++n) {
      const double root = logs[m][n - 1] == -kInf
                              ? 0.0
                              : std::exp(logs[m][n - 1] / double(n));
      best = std::min(best, root);
      if (n < n_max) best_prev = std::min(best_prev, root);
      if (best == 0.0) break;
    }
    inf_form = std::max(inf_form, best);
    inf_form_prev = std::max(inf_form_prev, best_prev);
  }

  // advisory limsup estimate: log slope over the last quarter of the run
  double limsup = 0.0;
  const std::size_t n2 = n_max;
  const std::size_t n1 = std::max<std::size_t>(1, n_max - std::max<std::size_t>(1, n_max / 4));
  for (std::size_t m = 0; m < members; ++m) {
    const double a = logs[m][n1 - 1], b = logs[m][n2 - 1];
    double est;
    if (b == -kInf)
      est = 0.0;
    else if (a == -kInf)
      est = std::exp(b / double(n2));
    else
      est = std::exp((b - a) / double(n2 - n1));
    limsup = std::max(limsup, est);
  }

  SpectralRadiusEstimate out;
  out.n_max = n_max;
  out.by_formula["inf_over_n"] = inf_form;
  out.by_formula["limsup_sup"] = limsup;
  out.by_formula["eigen_oracle"] = eigenvalues(t).radius;
  out.converged = std::abs(inf_form - inf_form_prev) <=
                  1e-3 * std::max(1.0, inf_form);
  return out;
}

Matrix resolvent_direct(const Matrix& t, Complex lambda, const ResolventOptions& opts) {
  require_square(t, "resolvent_direct");
  const std::size_t n = t.rows();
  Matrix a = Matrix::identity(n) * lambda - t;
  const double scale = std::max(std::abs(lambda), t.inf_norm());
  LuFactorization lu(a, opts.sing_tol_rel * std::max(scale, 1e-300));
  Matrix r = lu.solve(Matrix::identity(n));
  if (opts.iterative_refinement) {
    // one pass of refinement keeps the residual near roundoff even when the
    // shift sits close to the spectrum
    Matrix resid = Matrix::identity(n) - a * r;
    if (resid.max_abs() > 1e-14 * std::max(1.0, scale)) r += lu.solve(resid);
  }
  return r;
}

NeumannResult neumann_resolvent(const Calibration& p, const Matrix& t, Complex lambda,
                                double tol, const NeumannOptions& opts) {
  require_square(t, "neumann_resolvent");
  if (p.dim() != t.rows()) throw DimensionError("neumann_resolvent: dimension mismatch");
  if (!(tol > 0.0)) throw PreconditionError("neumann_resolvent: tol must be positive");

  const SpectralRadiusEstimate rad = spectral_radius(p, t, opts.radius_n_max);
  const double certified = rad.certified_upper();
  if (!(std::abs(lambda) > certified))
    throw PreconditionError("neumann_resolvent: |lambda| = " +
                            std::to_string(std::abs(lambda)) +
                            " does not exceed the certified radius " +
                            std::to_string(certified));

  const std::size_t n = t.rows();
  Matrix term = Matrix::identity(n) * (1.0 / lambda);
  Matrix sum(n, n);
  auto term_norm = [&](const Matrix& m) {
    double best = 0.0;
    for (const auto& member : p.members()) {
      const double v = member.kind() == Seminorm::Kind::WeightedSup
                           ? phat(member, m).value_or(kInf)
                           : phat_estimate(member, m, 512, 7);
      best = std::max(best, v);
    }
    return best;
  };

  const double first = term_norm(term);
  NeumannResult out;
  for (std::size_t k = 0; k < opts.max_terms; ++k) {
    const double tn = term_norm(term);
    if (tn < tol) {
      out.tail_bound = tn;
      out.resolvent = sum;
      out.terms_used = k;
      return out;
    }
    if (tn > first * opts.divergence_factor)
      throw ConvergenceError("neumann_resolvent: series diverges; the radius "
                             "estimate was too small");
    sum += term;
    term = term * (1.0 / lambda);
    term = t * term;
  }
  throw ConvergenceError("neumann_resolvent: did not converge within " +
                         std::to_string(opts.max_terms) + " terms");
}

ResolventIdentityReport verify_resolvent_identities(const Matrix& t, Complex lambda,
                                                    Complex mu, int n) {
  require_square(t, "verify_resolvent_identities");
  if (n < 0 || n > 4)
    throw PreconditionError("verify_resolvent_identities: n must be in [0, 4]");
  const Spectrum spec = eigenvalues(t);
  const double dl = spectrum_distance(spec.eigenvalues, lambda);
  const double dm = spectrum_distance(spec.eigenvalues, mu);
  if (dl <= 0.0 || dm <= 0.0)
    throw SingularError("verify_resolvent_identities: lambda or mu on the spectrum");

  ResolventIdentityReport rep;
  const Matrix rl = resolvent_direct(t, lambda);
  const Matrix rm = resolvent_direct(t, mu);
  rep.first_identity_defect = (rl - rm - (mu - lambda) * (rl * rm)).max_abs();

  if (n >= 1) {
    // closed-form n-th derivative vs 4th order central differences
    const double h = 1e-3 * dl;
    auto r_at = [&](double k) { return resolvent_direct(t, lambda + Complex(k * h, 0.0)); };
    Matrix fd(t.rows(), t.rows());
    switch (n) {
      case 1:
        fd = (r_at(-2) - 8.0 * r_at(-1) + 8.0 * r_at(1) - r_at(2)) * (1.0 / (12.0 * h));
        break;
      case 2:
        fd = (-r_at(-2) + 16.0 * r_at(-1) - 30.0 * r_at(0) + 16.0 * r_at(1) - r_at(2)) *
             (1.0 / (12.0 * h * h));
        break;
      case 3:
        fd = (r_at(-3) - 8.0 * r_at(-2) + 13.0 * r_at(-1) - 13.0 * r_at(1) +
              8.0 * r_at(2) - r_at(3)) *
             (1.0 / (8.0 * h * h * h));
        break;
      case 4:
        fd = (-r_at(-3) + 12.0 * r_at(-2) - 39.0 * r_at(-1) + 56.0 * r_at(0) -
              39.0 * r_at(1) + 12.0 * r_at(2) - r_at(3)) *
             (1.0 / (6.0 * h * h * h * h));
        break;
      default:
        break;
    }
    double factorial = 1.0;
    for (int k = 2; k <= n; ++k) factorial *= k;
    Matrix closed = rl;
    for (int k = 0; k < n; ++k) closed = closed * rl;
    closed *= Complex((n % 2 == 0 ? 1.0 : -1.0) * factorial);
    rep.derivative_defect_rel = (closed - fd).max_abs() / std::max(closed.max_abs(), 1e-300);
  }

  const double big = 1e6 * std::max(t.inf_norm(), 1.0);
  const Matrix rb = resolvent_direct(t, Complex(big, 0.0));
  rep.infinity_probe_lambda = big;
  rep.infinity_probe_defect = (rb * Complex(big, 0.0) - Matrix::identity(t.rows())).inf_norm();
  return rep;
}

}  // namespace holocalc
