// Test-only oracles, independent of the implementation paths they check.
#pragma once

#include <cmath>
#include <functional>
#include <numbers>

#include "holocalc/lu.hpp"
#include "holocalc/matrix.hpp"
#include "holocalc/rng.hpp"
#include "holocalc/seminorm.hpp"

namespace oracle {

using holocalc::Calibration;
using holocalc::Complex;
using holocalc::Matrix;
using holocalc::Rng;
using holocalc::Seminorm;
using holocalc::Vector;

/// Brute-force sup of q(Tx) over the p-unit ball. The ball's extreme points
/// are per-coordinate phase vectors scaled by 1/w_j, so the grid walks 16
/// phases per active coordinate plus 1000 random interior points.
inline double mixed_seminorm_grid(const Seminorm& p, const Seminorm& q, const Matrix& t,
                                  std::uint64_t seed = 42) {
  const std::size_t n = t.rows();
  std::vector<std::size_t> active;
  for (std::size_t j = 0; j < n; ++j)
    if (p.weights()[j] > 0.0) active.push_back(j);

  double best = 0.0;
  constexpr std::size_t kPhases = 16;
  std::vector<std::size_t> digit(active.size(), 0);
  for (;;) {
    Vector x(n, Complex(0.0));
    for (std::size_t k = 0; k < active.size(); ++k) {
      const double th = 2.0 * std::numbers::pi * double(digit[k]) / double(kPhases);
      x[active[k]] = Complex(std::cos(th), std::sin(th)) / p.weights()[active[k]];
    }
    best = std::max(best, q(t.apply(x)));
    std::size_t k = 0;
    for (; k < digit.size(); ++k) {
      if (++digit[k] < kPhases) break;
      digit[k] = 0;
    }
    if (k == digit.size()) break;
  }
  Rng rng(seed);
  for (int s = 0; s < 1000; ++s) {
    Vector x = rng.vector(n);
    const double px = p(x);
    if (px <= 0.0) continue;
    for (auto& c : x) c /= px;
    best = std::max(best, q(t.apply(x)));
  }
  return best;
}

/// f(T) = V f(diag) V^{-1} for T built from a known eigendecomposition.
inline Matrix eigendecomposition_apply(const Matrix& v, const Vector& eigs,
                                       const std::function<Complex(Complex)>& f) {
  Vector feigs(eigs.size());
  for (std::size_t i = 0; i < eigs.size(); ++i) feigs[i] = f(eigs[i]);
  return v * Matrix::diagonal(feigs) * holocalc::lu_inverse(v);
}

/// Largest |f(lambda_i)| over a known spectrum.
inline double image_radius(const Vector& eigs, const std::function<Complex(Complex)>& f) {
  double r = 0.0;
  for (const auto& ev : eigs) r = std::max(r, std::abs(f(ev)));
  return r;
}

inline double matrix_distance(const Matrix& a, const Matrix& b) {
  return (a - b).max_abs();
}

}  // namespace oracle
