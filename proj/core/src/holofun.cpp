#include "holocalc/holofun.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "holocalc/eig.hpp"
#include "holocalc/errors.hpp"

namespace holocalc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Complex poly_eval(const Vector& c, Complex x) {
  Complex p = 0.0;
  for (std::size_t k = c.size(); k-- > 0;) p = p * x + c[k];
  return p;
}

Vector poly_derivative(const Vector& c) {
  if (c.size() <= 1) return {};
  Vector d(c.size() - 1);
  for (std::size_t k = 1; k < c.size(); ++k) d[k - 1] = double(k) * c[k];
  return d;
}

Vector poly_mul(const Vector& a, const Vector& b) {
  if (a.empty() || b.empty()) return {};
  Vector c(a.size() + b.size() - 1, Complex(0.0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

Vector poly_scale(Vector a, Complex s) {
  for (auto& v : a) v *= s;
  return a;
}

Vector poly_sub(Vector a, const Vector& b) {
  if (b.size() > a.size()) a.resize(b.size(), Complex(0.0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  return a;
}

/// Evaluates the n-th derivative of a polynomial from the falling factorial
/// form, Horner style (std::pow on complex zero is NaN for exponent 0).
Complex poly_derivative_at(const Vector& c, int n, Complex x) {
  Complex sum = 0.0;
  for (std::size_t k = c.size(); k-- > std::size_t(n);) {
    double fall = 1.0;
    for (int i = 0; i < n; ++i) fall *= double(k - std::size_t(i));
    sum = sum * x + c[k] * fall;
  }
  return sum;
}

/// Visits every integer partition of n as multiplicities m[i] of part size
/// i (1-based). Used by the chain-rule expansion for compositions.
template <typename F>
void for_each_partition(int n, F&& visit) {
  std::vector<int> parts;
  std::function<void(int, int)> rec = [&](int remaining, int max_part) {
    if (remaining == 0) {
      visit(parts);
      return;
    }
    for (int p = std::min(remaining, max_part); p >= 1; --p) {
      parts.push_back(p);
      rec(remaining - p, p);
      parts.pop_back();
    }
  };
  rec(n, n);
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

HoloFun HoloFun::poly(Vector coeffs) {
  if (coeffs.empty()) coeffs.push_back(Complex(0.0));
  HoloFun f;
  f.kind_ = Kind::Poly;
  f.coeffs_ = std::move(coeffs);
  f.radius_ = kInf;
  return f;
}

HoloFun HoloFun::rational(Vector num, Vector den) {
  while (den.size() > 1 && den.back() == Complex(0.0)) den.pop_back();
  if (den.empty() || (den.size() == 1 && den[0] == Complex(0.0)))
    throw PreconditionError("HoloFun::rational: zero denominator");
  HoloFun f;
  f.kind_ = Kind::Rational;
  f.coeffs_ = std::move(num);
  if (f.coeffs_.empty()) f.coeffs_.push_back(Complex(0.0));
  f.den_ = std::move(den);
  f.radius_ = kInf;
  if (f.den_.size() > 1) {
    // denominator roots are the poles; monic normalization for the solver
    Vector monic(f.den_.size() - 1);
    const Complex lead = f.den_.back();
    for (std::size_t k = 0; k + 1 < f.den_.size(); ++k)
      monic[f.den_.size() - 2 - k] = f.den_[k] / lead;
    f.poles_ = monic_roots(monic);
  }
  // a_0 = num; a_{n+1} = a_n' den - (n+1) a_n den'
  const Vector dprime = poly_derivative(f.den_);
  f.deriv_numerators_.reserve(kMaxDerivative + 1);
  f.deriv_numerators_.push_back(f.coeffs_);
  for (int n = 0; n < kMaxDerivative; ++n) {
    const Vector& an = f.deriv_numerators_.back();
    Vector next = poly_sub(poly_mul(poly_derivative(an), f.den_),
                           poly_scale(poly_mul(an, dprime), Complex(double(n + 1))));
    f.deriv_numerators_.push_back(std::move(next));
  }
  return f;
}

HoloFun HoloFun::exp(Complex scale) {
  HoloFun f;
  f.kind_ = Kind::Exp;
  f.scale_ = scale;
  f.radius_ = kInf;
  return f;
}

HoloFun HoloFun::power_series(Vector coeffs, double radius) {
  if (!(radius > 0.0)) throw PreconditionError("HoloFun::power_series: radius must be positive");
  if (coeffs.empty()) coeffs.push_back(Complex(0.0));
  HoloFun f;
  f.kind_ = Kind::PowerSeries;
  f.coeffs_ = std::move(coeffs);
  f.radius_ = radius;
  return f;
}

HoloFun HoloFun::compose(HoloFun outer, HoloFun inner) {
  HoloFun f;
  f.kind_ = Kind::Compose;
  f.radius_ = inner.radius_;
  f.poles_ = inner.poles_;
  f.lhs_ = std::make_shared<const HoloFun>(std::move(outer));
  f.rhs_ = std::make_shared<const HoloFun>(std::move(inner));
  return f;
}

HoloFun HoloFun::product(HoloFun lhs, HoloFun rhs) {
  HoloFun f;
  f.kind_ = Kind::Product;
  f.radius_ = std::min(lhs.radius_, rhs.radius_);
  f.poles_ = lhs.poles_;
  f.poles_.insert(f.poles_.end(), rhs.poles_.begin(), rhs.poles_.end());
  f.lhs_ = std::make_shared<const HoloFun>(std::move(lhs));
  f.rhs_ = std::make_shared<const HoloFun>(std::move(rhs));
  return f;
}

Complex HoloFun::eval(Complex x) const { return derivative(0, x); }

Complex HoloFun::derivative(int n, Complex x) const {
  if (n < 0 || n > kMaxDerivative)
    throw PreconditionError("HoloFun::derivative: order out of range");
  switch (kind_) {
    case Kind::Poly:
      return n == 0 ? poly_eval(coeffs_, x) : poly_derivative_at(coeffs_, n, x);
    case Kind::PowerSeries: {
      if (!(std::abs(x) < radius_ * (1.0 - 1e-9)))
        throw PreconditionError("HoloFun: power series evaluated at |x| >= radius");
      return n == 0 ? poly_eval(coeffs_, x) : poly_derivative_at(coeffs_, n, x);
    }
    case Kind::Exp: {
      Complex s = 1.0;
      for (int i = 0; i < n; ++i) s *= scale_;
      return s * std::exp(scale_ * x);
    }
    case Kind::Rational: {
      const Complex d = poly_eval(den_, x);
      if (d == Complex(0.0))
        throw PreconditionError("HoloFun: rational function evaluated at a pole");
      Complex dpow = d;
      for (int i = 0; i < n; ++i) dpow *= d;
      return poly_eval(deriv_numerators_[std::size_t(n)], x) / dpow;
    }
    case Kind::Compose: {
      if (n == 0) return lhs_->eval(rhs_->eval(x));
      // chain rule over integer partitions of n
      const Complex hx = rhs_->eval(x);
      Complex inner_d[kMaxDerivative + 1];
      for (int i = 1; i <= n; ++i) inner_d[i] = rhs_->derivative(i, x);
      Complex sum = 0.0;
      for_each_partition(n, [&](const std::vector<int>& parts) {
        int mult[kMaxDerivative + 1] = {};
        for (int p : parts) ++mult[p];
        double coeff = factorial(n);
        Complex prod = 1.0;
        for (int i = 1; i <= n; ++i) {
          if (mult[i] == 0) continue;
          coeff /= factorial(mult[i]);
          for (int r = 0; r < mult[i]; ++r) {
            coeff /= factorial(i);
            prod *= inner_d[i];
          }
        }
        sum += coeff * lhs_->derivative(int(parts.size()), hx) * prod;
      });
      return sum;
    }
    case Kind::Product: {
      // Leibniz rule
      Complex sum = 0.0;
      double binom = 1.0;
      for (int k = 0; k <= n; ++k) {
        sum += binom * lhs_->derivative(k, x) * rhs_->derivative(n - k, x);
        binom = binom * double(n - k) / double(k + 1);
      }
      return sum;
    }
  }
  throw Error("HoloFun: unreachable");
}

bool HoloFun::analytic_at(Complex x, double clearance) const {
  switch (kind_) {
    case Kind::Poly:
    case Kind::Exp:
      return true;
    case Kind::Rational: {
      for (const auto& p : poles_)
        if (std::abs(x - p) <= clearance) return false;
      return true;
    }
    case Kind::PowerSeries:
      return std::abs(x) + clearance < radius_ * (1.0 - 1e-9);
    case Kind::Compose: {
      if (!rhs_->analytic_at(x, clearance)) return false;
      // Lipschitz guard for the image disc
      const double grow = std::max(1.0, std::abs(rhs_->derivative(1, x)));
      return lhs_->analytic_at(rhs_->eval(x), 2.0 * grow * clearance);
    }
    case Kind::Product:
      return lhs_->analytic_at(x, clearance) && rhs_->analytic_at(x, clearance);
  }
  return false;
}

bool HoloFun::analytic_for_circle(Complex center, double r) const {
  switch (kind_) {
    case Kind::Poly:
    case Kind::Exp:
      return true;
    case Kind::Rational: {
      for (const auto& p : poles_)
        if (std::abs(p - center) < 2.0 * r) return false;
      return true;
    }
    case Kind::PowerSeries:
      return std::abs(center) + 2.0 * r < radius_ * (1.0 - 1e-9);
    case Kind::Compose: {
      // sample the circle; require analyticity of the outer function around
      // the image points
      constexpr int kSamples = 32;
      for (int j = 0; j < kSamples; ++j) {
        const double th = 2.0 * 3.14159265358979323846 * j / kSamples;
        const Complex z = center + r * Complex(std::cos(th), std::sin(th));
        if (!rhs_->analytic_at(z, 0.5 * r)) return false;
        const double grow = std::max(1.0, std::abs(rhs_->derivative(1, z)));
        if (!lhs_->analytic_at(rhs_->eval(z), grow * r)) return false;
      }
      return true;
    }
    case Kind::Product:
      return lhs_->analytic_for_circle(center, r) && rhs_->analytic_for_circle(center, r);
  }
  return false;
}

Complex HoloFun::series_coefficient(std::size_t n) const {
  switch (kind_) {
    case Kind::Poly:
    case Kind::PowerSeries:
      return n < coeffs_.size() ? coeffs_[n] : Complex(0.0);
    case Kind::Exp: {
      Complex s = 1.0;
      for (std::size_t i = 0; i < n; ++i) s *= scale_;
      return s / factorial(int(n));
    }
    default:
      throw PreconditionError("HoloFun: variant has no power-series form");
  }
}

std::string HoloFun::describe() const {
  std::ostringstream os;
  auto list = [&](const Vector& c) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i) os << ',';
      os << c[i].real();
      if (c[i].imag() != 0.0) os << (c[i].imag() > 0 ? "+" : "") << c[i].imag() << 'i';
    }
  };
  switch (kind_) {
    case Kind::Poly:
      os << "poly:";
      list(coeffs_);
      break;
    case Kind::Rational:
      os << "rat:";
      list(coeffs_);
      os << '/';
      list(den_);
      break;
    case Kind::Exp:
      os << "exp";
      if (scale_ != Complex(1.0)) os << ':' << scale_.real();
      break;
    case Kind::PowerSeries:
      os << "series:r=" << radius_ << ':';
      list(coeffs_);
      break;
    case Kind::Compose:
      os << "compose:" << lhs_->describe() << '|' << rhs_->describe();
      break;
    case Kind::Product:
      os << "product:" << lhs_->describe() << '*' << rhs_->describe();
      break;
  }
  return os.str();
}

namespace {

Vector parse_coeff_list(const std::string& text) {
  Vector out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) throw PreconditionError("parse_function: empty coefficient");
    std::size_t used = 0;
    const double v = std::stod(tok, &used);
    if (used != tok.size())
      throw PreconditionError("parse_function: bad coefficient '" + tok + "'");
    out.push_back(Complex(v));
  }
  if (out.empty()) throw PreconditionError("parse_function: empty coefficient list");
  return out;
}

}  // namespace

HoloFun parse_function(const std::string& spec) {
  if (spec == "exp") return HoloFun::exp();
  if (spec.rfind("exp:", 0) == 0) {
    const double s = std::stod(spec.substr(4));
    return HoloFun::exp(Complex(s));
  }
  if (spec.rfind("poly:", 0) == 0) return HoloFun::poly(parse_coeff_list(spec.substr(5)));
  if (spec.rfind("rat:", 0) == 0) {
    const std::string body = spec.substr(4);
    const auto slash = body.find('/');
    if (slash == std::string::npos)
      throw PreconditionError("parse_function: rat needs NUM/DEN");
    return HoloFun::rational(parse_coeff_list(body.substr(0, slash)),
                             parse_coeff_list(body.substr(slash + 1)));
  }
  if (spec.rfind("series:", 0) == 0) {
    std::string body = spec.substr(7);
    if (body.rfind("r=", 0) != 0)
      throw PreconditionError("parse_function: series needs r=RADIUS:coeffs");
    const auto colon = body.find(':');
    if (colon == std::string::npos)
      throw PreconditionError("parse_function: series needs a coefficient list");
    const double r = std::stod(body.substr(2, colon - 2));
    return HoloFun::power_series(parse_coeff_list(body.substr(colon + 1)), r);
  }
  if (spec.rfind("compose:", 0) == 0) {
    const std::string body = spec.substr(8);
    const auto bar = body.find('|');
    if (bar == std::string::npos)
      throw PreconditionError("parse_function: compose needs OUTER|INNER");
    return HoloFun::compose(parse_function(body.substr(0, bar)),
                            parse_function(body.substr(bar + 1)));
  }
  throw PreconditionError("parse_function: unrecognized function spec '" + spec + "'");
}

}  // namespace holocalc
