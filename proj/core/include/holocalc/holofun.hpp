#pragma once

#include <memory>
#include <string>

#include "holocalc/matrix.hpp"

namespace holocalc {

/// Scalar holomorphic function with exact derivatives of every order up to
/// kMaxDerivative and metadata (poles / convergence radius) driving
/// analyticity preconditions. Instances are immutable and cheap to copy.
///
/// Variants: polynomial, rational, exp(scale *
/// lambda), truncated power series with a declared convergence radius,
/// composition, and product.
class HoloFun {
public:
  /// Perturbation expansions at decay ratio 1/2 need ~30 orders to reach
  /// 1e-9 tails, so the cap sits well above that.
  static constexpr int kMaxDerivative = 40;

  enum class Kind { Poly, Rational, Exp, PowerSeries, Compose, Product };

  /// Ascending coefficients: c0 + c1 x + c2 x^2 + ...
  static HoloFun poly(Vector coeffs);
  static HoloFun rational(Vector num, Vector den);
  static HoloFun exp(Complex scale = Complex(1.0));
  /// Evaluation is rejected outside |x| < radius * (1 - 1e-9).
  static HoloFun power_series(Vector coeffs, double radius);
  static HoloFun compose(HoloFun outer, HoloFun inner);
  static HoloFun product(HoloFun lhs, HoloFun rhs);

  static HoloFun constant(Complex c) { return poly({c}); }
  static HoloFun identity() { return poly({Complex(0.0), Complex(1.0)}); }

  Kind kind() const { return kind_; }

  Complex eval(Complex x) const;
  Complex operator()(Complex x) const { return eval(x); }
  /// Closed-form n-th derivative, 0 <= n <= kMaxDerivative. Compositions
  /// use the partition expansion of the chain rule, products the Leibniz
  /// rule; both only ever call the children's closed forms.
  Complex derivative(int n, Complex x) const;

  /// Finite poles (denominator roots for rationals, propagated through
  /// products; compositions report the inner function's poles).
  const Vector& poles() const { return poles_; }
  /// Convergence radius; +infinity for entire variants.
  double radius() const { return radius_; }

  /// The disc |z - x| <= clearance avoids every pole and stays inside the
  /// convergence region.
  bool analytic_at(Complex x, double clearance) const;
  /// Analyticity margin for a quadrature circle: every pole at least two
  /// radii from the center and one radius of series margin beyond the
  /// circle's reach. Compositions check the image of sampled circle points.
  bool analytic_for_circle(Complex center, double r) const;

  /// Truncated power-series coefficient c_n around 0. Defined for Poly,
  /// PowerSeries and Exp variants (used by the series route of the
  /// calculus).
  Complex series_coefficient(std::size_t n) const;
  bool has_series_form() const {
    return kind_ == Kind::Poly || kind_ == Kind::PowerSeries || kind_ == Kind::Exp;
  }

  /// Canonical spec string ("poly:1,0,2", "exp:3", ...).
  std::string describe() const;

private:
  HoloFun() = default;

  Kind kind_ = Kind::Poly;
  Vector coeffs_;  // Poly/PowerSeries coefficients, Rational numerator
  Vector den_;     // Rational denominator
  Complex scale_ = Complex(1.0);
  double radius_ = 0.0;
  Vector poles_;
  std::shared_ptr<const HoloFun> lhs_, rhs_;  // Compose: outer/inner
  // Rational: precomputed numerators a_n with f^(n) = a_n / den^(n+1)
  std::vector<Vector> deriv_numerators_;
};

/// Function mini-language:
///   poly:c0,c1,...       coefficients ascending
///   exp                  e^x,  exp:s -> e^{s x}
///   rat:NUM/DEN          both coefficient lists ascending
///   series:r=R:c0,c1,...
///   compose:OUTER|INNER  specs nested, split at the first '|'
HoloFun parse_function(const std::string& spec);

}  // namespace holocalc
