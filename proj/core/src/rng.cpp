#include "holocalc/rng.hpp"

#include <cmath>
#include <numbers>

namespace holocalc {

Complex Rng::unit_circle() {
  const double t = 2.0 * std::numbers::pi * uniform();
  return {std::cos(t), std::sin(t)};
}

Complex Rng::in_disc(double r) {
  // rejection keeps the distribution uniform over the disc
  for (;;) {
    const double x = uniform(-1.0, 1.0), y = uniform(-1.0, 1.0);
    if (x * x + y * y <= 1.0) return Complex(r * x, r * y);
  }
}

Complex Rng::gaussian() {
  const double u1 = std::max(uniform(), 1e-300);
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double t = 2.0 * std::numbers::pi * u2;
  return {r * std::cos(t), r * std::sin(t)};
}

Vector Rng::vector(std::size_t n, double scale) {
  Vector x(n);
  for (auto& v : x) v = scale * in_disc(1.0);
  return x;
}

Matrix Rng::matrix(std::size_t rows, std::size_t cols, double scale) {
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = scale * in_disc(1.0);
  return m;
}

Matrix Rng::unitary(std::size_t n) {
  Matrix g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = gaussian();
  // modified Gram-Schmidt on columns
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < j; ++k) {
      Complex proj = 0.0;
      for (std::size_t i = 0; i < n; ++i) proj += std::conj(g(i, k)) * g(i, j);
      for (std::size_t i = 0; i < n; ++i) g(i, j) -= proj * g(i, k);
    }
    double nrm = 0.0;
    for (std::size_t i = 0; i < n; ++i) nrm += std::norm(g(i, j));
    nrm = std::sqrt(nrm);
    if (nrm < 1e-12) {  // re-draw a degenerate column
      for (std::size_t i = 0; i < n; ++i) g(i, j) = gaussian();
      --j;
      continue;
    }
    for (std::size_t i = 0; i < n; ++i) g(i, j) /= nrm;
  }
  return g;
}

}  // namespace holocalc
