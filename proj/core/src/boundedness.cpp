#include "holocalc/boundedness.hpp"

#include <cmath>
#include <limits>

#include "holocalc/rng.hpp"

namespace holocalc {

MixedValue mixed_seminorm(const Seminorm& p, const Seminorm& q, const Matrix& t) {
  if (p.kind() != Seminorm::Kind::WeightedSup || q.kind() != Seminorm::Kind::WeightedSup)
    throw PreconditionError(
        "mixed_seminorm: closed form needs weighted_sup seminorms; "
        "use mixed_seminorm_estimate for derived members");
  require_square(t, "mixed_seminorm");
  const std::size_t n = t.rows();
  if (p.dim() != n || q.dim() != n)
    throw DimensionError("mixed_seminorm: seminorm/operator dimension mismatch");
  const auto& w = p.weights();
  const auto& v = q.weights();

  for (std::size_t i = 0; i < n; ++i) {
    if (v[i] == 0.0) continue;
    for (std::size_t j = 0; j < n; ++j)
      if (w[j] == 0.0 && t(i, j) != Complex(0.0)) return MixedValue::infinite();
  }
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (v[i] == 0.0) continue;
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      if (w[j] > 0.0) row += std::abs(t(i, j)) / w[j];
    best = std::max(best, v[i] * row);
  }
  return MixedValue::finite(best);
}

double mixed_seminorm_estimate(const Seminorm& p, const Seminorm& q, const Matrix& t,
                               std::size_t samples, std::uint64_t seed) {
  require_square(t, "mixed_seminorm_estimate");
  const std::size_t n = t.rows();
  if (p.dim() != n || q.dim() != n)
    throw DimensionError("mixed_seminorm_estimate: dimension mismatch");
  if (samples < 1) throw PreconditionError("mixed_seminorm_estimate: samples >= 1");

  double best = 0.0;
  auto probe = [&](const Vector& x) {
    const double px = p(x);
    if (px <= 0.0) return;
    best = std::max(best, q(t.apply(x)) / px);
  };

  Vector x(n, Complex(0.0));
  for (std::size_t j = 0; j < n; ++j) {  // coordinate vertices with phases
    for (int ph = 0; ph < 8; ++ph) {
      const double a = 2.0 * 3.14159265358979323846 * ph / 8.0;
      x[j] = Complex(std::cos(a), std::sin(a));
      probe(x);
    }
    x[j] = 0.0;
  }
  Rng rng(seed ^ 0xb07d5eedULL);
  for (std::size_t s = 0; s < samples; ++s) probe(rng.vector(n));
  return best;
}

MixedValue phat(const Seminorm& p, const Matrix& t) { return mixed_seminorm(p, p, t); }

double phat_estimate(const Seminorm& p, const Matrix& t, std::size_t samples,
                     std::uint64_t seed) {
  return mixed_seminorm_estimate(p, p, t, samples, seed);
}

double log_phat_scaled(const Seminorm& p, const Matrix& u, double log_scale) {
  const MixedValue v = phat(p, u);
  if (!v.is_finite())
    throw PreconditionError("log_phat_scaled: phat is infinite");
  if (v.value() == 0.0) return -std::numeric_limits<double>::infinity();
  return std::log(v.value()) + log_scale;
}

bool is_quotient_bounded(const Calibration& p, const Matrix& t, std::size_t samples,
                         double estimate_cap) {
  require_square(t, "is_quotient_bounded");
  if (p.dim() != t.rows())
    throw DimensionError("is_quotient_bounded: dimension mismatch");
  std::uint64_t seed = 1;
  for (const auto& member : p.members()) {
    if (member.kind() == Seminorm::Kind::WeightedSup) {
      if (!phat(member, t).is_finite()) return false;
    } else {
      if (phat_estimate(member, t, samples, seed++) > estimate_cap) return false;
    }
  }
  return true;
}

UniversalBound is_universally_bounded(const Calibration& p, const Matrix& t,
                                      std::size_t samples, double estimate_cap) {
  require_square(t, "is_universally_bounded");
  if (p.dim() != t.rows())
    throw DimensionError("is_universally_bounded: dimension mismatch");
  UniversalBound out;
  out.bounded = true;
  std::uint64_t seed = 1;
  for (const auto& member : p.members()) {
    double b;
    if (member.kind() == Seminorm::Kind::WeightedSup) {
      const MixedValue v = phat(member, t);
      if (!v.is_finite()) return {};
      b = v.value();
    } else {
      out.exact = false;
      b = phat_estimate(member, t, samples, seed++);
      if (b > estimate_cap) return {};
    }
    out.bound = std::max(out.bound, b);
  }
  return out;
}

MixedValue opnorm(const Calibration& p, const Matrix& t, std::size_t samples) {
  const UniversalBound ub = is_universally_bounded(p, t, samples);
  if (!ub.bounded) return MixedValue::infinite();
  return MixedValue::finite(ub.bound);
}

double defect_norm(const Calibration& p, const Matrix& a) {
  const MixedValue v = opnorm(p, a);
  return v.is_finite() ? v.value() : a.inf_norm();
}

}  // namespace holocalc
