#pragma once

#include "holocalc/matrix.hpp"
#include "holocalc/seminorm.hpp"

namespace holocalc {

/// Value of a mixed operator seminorm: a nonnegative real or +infinity.
/// Infinity is an explicit state, never a sentinel float, so it cannot leak
/// into downstream arithmetic unnoticed.
class MixedValue {
public:
  static MixedValue finite(double v) { return MixedValue(v, false); }
  static MixedValue infinite() { return MixedValue(0.0, true); }

  bool is_finite() const { return !infinite_; }
  /// Throws unless finite.
  double value() const {
    if (infinite_) throw PreconditionError("MixedValue: value() on +infinity");
    return value_;
  }
  double value_or(double fallback) const { return infinite_ ? fallback : value_; }

  friend MixedValue max(const MixedValue& a, const MixedValue& b) {
    if (!a.is_finite() || !b.is_finite()) return infinite();
    return finite(std::max(a.value_, b.value_));
  }

private:
  MixedValue(double v, bool inf) : value_(v), infinite_(inf) {}
  double value_;
  bool infinite_;
};

/// m_pq(T) = sup over p(x) != 0 of q(Tx)/p(x), in closed form for
/// weighted_sup seminorms:
///   +infinity  when some entry t_ij != 0 has q-weight v_i > 0 and
///              p-weight w_j = 0 (the p-kernel leaks through T);
///   otherwise  max over rows i with v_i > 0 of v_i * sum_{j: w_j > 0}
///              |t_ij| / w_j.
/// Derived seminorms have no closed form; use mixed_seminorm_estimate.
MixedValue mixed_seminorm(const Seminorm& p, const Seminorm& q, const Matrix& t);

/// Sampling lower bound on m_pq(T): maximizes q(Tx)/p(x) over coordinate
/// vertices and seeded random vectors with p(x) > 0. Works for any seminorm
/// kinds. Returns 0 when every sample lies in ker p.
double mixed_seminorm_estimate(const Seminorm& p, const Seminorm& q, const Matrix& t,
                               std::size_t samples, std::uint64_t seed = 0);

/// p-hat(T) = m_pp(T), the submultiplicative operator seminorm.
MixedValue phat(const Seminorm& p, const Matrix& t);
double phat_estimate(const Seminorm& p, const Matrix& t, std::size_t samples,
                     std::uint64_t seed = 0);

/// log p-hat(T^n) evaluated against a scaled power u = T^n / e^log_scale:
/// returns log phat(u) + log_scale (-inf when phat(u) = 0).
double log_phat_scaled(const Seminorm& p, const Matrix& u, double log_scale);

/// Every member seminorm tolerates T: phat(p, T) finite for all p. For
/// weighted_sup calibrations this is the exact kernel-invariance test; for
/// derived members the sampled estimate is compared against estimate_cap.
bool is_quotient_bounded(const Calibration& p, const Matrix& t,
                         std::size_t samples = 4096, double estimate_cap = 1e12);

struct UniversalBound {
  bool bounded = false;
  double bound = 0.0;  // sup over p of phat(p, T) when bounded
  bool exact = true;   // false when any member bound is a sampling estimate
};

/// T is universally bounded when one constant works for every member;
/// the bound is the operator norm sup_p phat(p, T).
UniversalBound is_universally_bounded(const Calibration& p, const Matrix& t,
                                      std::size_t samples = 4096,
                                      double estimate_cap = 1e12);

/// ||T||_P = sup over members of phat. Infinite when any member blows up.
/// Exact on weighted_sup calibrations, sampled on derived members.
MixedValue opnorm(const Calibration& p, const Matrix& t, std::size_t samples = 4096);

/// Norm used for defect reporting: opnorm when finite, otherwise the
/// entrywise infinity norm (defects of structurally forbidden blocks are
/// arbitrarily amplified by opnorm, which would hide the actual magnitude).
double defect_norm(const Calibration& p, const Matrix& a);

}  // namespace holocalc
