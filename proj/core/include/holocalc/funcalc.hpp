#pragma once

#include <functional>

#include "holocalc/boundedness.hpp"
#include "holocalc/contour.hpp"
#include "holocalc/holofun.hpp"
#include "holocalc/spectral.hpp"

namespace holocalc {

struct FuncalcOptions {
  std::size_t initial_nodes = 128;  // per circle; doubled adaptively
  std::size_t max_nodes = 4096;     // stabilization failure past this throws
  double gap = 0.05;                // cluster gap for default contours
  double margin_scale = 1.0;        // shrinks default contour margins (< 1)
};

struct FuncalcReport {
  Matrix value;
  std::size_t nodes_used = 0;       // per circle at the accepted level
  double last_delta = 0.0;          // ||S(2N) - S(N)||_P at acceptance
  double commutation_defect = 0.0;  // ||F T - T F||_P
};

/// F(f) = (1/2 pi i) contour integral of f(lambda) R(lambda, T), evaluated
/// by trapezoidal quadrature with the node count doubled until successive
/// results differ by less than tol in ||.||_P.
///
/// Preconditions: f analytic on an annulus around every circle (checked
/// against the pole/radius metadata), no quadrature node on the spectrum.
Matrix apply_funcalc(const Calibration& p, const Matrix& t, const HoloFun& f,
                     const Contour& gamma, double tol, const FuncalcOptions& opts = {});
FuncalcReport apply_funcalc_report(const Calibration& p, const Matrix& t,
                                   const HoloFun& f, const Contour& gamma, double tol,
                                   const FuncalcOptions& opts = {});

/// Operator-valued integrand f(lambda) = sum_k g_k(lambda) C_k.
struct OperatorValuedFun {
  struct Component {
    HoloFun g;
    Matrix c;
  };
  std::vector<Component> components;

  static OperatorValuedFun constant(const Matrix& s);          // k_S
  static OperatorValuedFun identity_times_lambda(std::size_t n);  // id_I
};

Matrix apply_operator_valued(const Calibration& p, const Matrix& t,
                             const OperatorValuedFun& f, const Contour& gamma,
                             double tol, const FuncalcOptions& opts = {});

struct SeriesResult {
  Matrix value;
  std::size_t terms_used = 0;
  double tail_bound = 0.0;
};

/// f(T) = sum_k alpha_k T^k, valid when the certified radius of T is below
/// the series radius. Power magnitudes are tracked in the log domain.
SeriesResult funcalc_power_series(const Calibration& p, const Matrix& t,
                                  const std::function<Complex(std::size_t)>& coeff,
                                  double radius, double tol,
                                  std::size_t max_terms = 1024);
/// Same, taking the coefficients from a series-representable HoloFun.
SeriesResult funcalc_power_series(const Calibration& p, const Matrix& t,
                                  const HoloFun& f, double tol,
                                  std::size_t max_terms = 1024);

/// Domain of disks around the spectrum clusters of the given eigenvalue
/// list, with margins limited by inter-cluster gaps and the analyticity
/// metadata of f.
Domain default_domain(const Vector& eigenvalues, const HoloFun& f, double gap,
                      double margin_scale = 1.0);

/// Contour enclosing the full spectrum of T, suitable for f.
Contour default_contour(const Matrix& t, const HoloFun& f,
                        const FuncalcOptions& opts = {});

struct MappingReport {
  double max_matched_distance = 0.0;
  Vector mapped_spectrum;  // f applied to eig(T)
  Vector image_spectrum;   // eig(F(f))
};

/// Multiset comparison of f(eig(T)) with eig(f(T)) under the optimal
/// (bottleneck) matching.
MappingReport spectral_mapping_check(const Calibration& p, const Matrix& t,
                                     const HoloFun& f, double gap,
                                     const FuncalcOptions& opts = {});

struct CompositionReport {
  double deviation = 0.0;
  Matrix composed;  // (g o f)(T)
  Matrix nested;    // g(f(T))
};

CompositionReport composition_check(const Calibration& p, const Matrix& t,
                                    const HoloFun& f, const HoloFun& g, double tol,
                                    const FuncalcOptions& opts = {});

/// Minimum over perfect matchings of the maximum pairwise distance.
/// Multisets must have equal size.
double bottleneck_match_distance(const Vector& a, const Vector& b);

/// Horner evaluation of a polynomial (ascending coefficients) at a matrix.
Matrix polynomial_in_matrix(const Vector& coeffs, const Matrix& t);

}  // namespace holocalc
