#include "holocalc/eig.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "holocalc/lu.hpp"
#include "holocalc/rng.hpp"

namespace holocalc {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Givens {
  double c;
  Complex s;
};

Givens make_givens(Complex f, Complex g) {
  const double af = std::abs(f), ag = std::abs(g);
  if (ag == 0.0) return {1.0, 0.0};
  if (af == 0.0) return {0.0, std::conj(g) / ag};
  const double d = std::hypot(af, ag);
  const Complex fs = f / af;
  return {af / d, fs * std::conj(g) / d};
}

/// Householder reduction to upper Hessenberg form, in place.
void hessenberg(Matrix& h) {
  const std::size_t n = h.rows();
  if (n < 3) return;
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double colnorm = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) colnorm += std::norm(h(i, k));
    colnorm = std::sqrt(colnorm);
    if (colnorm <= kEps * h.max_abs()) {
      for (std::size_t i = k + 2; i < n; ++i) h(i, k) = 0.0;
      continue;
    }
    Vector v(n - k - 1);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = h(k + 1 + i, k);
    const Complex x0 = v[0];
    const Complex phase = std::abs(x0) > 0.0 ? x0 / std::abs(x0) : Complex(1.0);
    v[0] += phase * colnorm;
    double vn = 0.0;
    for (const auto& z : v) vn += std::norm(z);
    if (vn == 0.0) continue;
    // H = I - 2 v v^H / (v^H v), applied from both sides
    for (std::size_t j = k; j < n; ++j) {
      Complex dot = 0.0;
      for (std::size_t i = 0; i < v.size(); ++i) dot += std::conj(v[i]) * h(k + 1 + i, j);
      dot *= 2.0 / vn;
      for (std::size_t i = 0; i < v.size(); ++i) h(k + 1 + i, j) -= dot * v[i];
    }
    for (std::size_t i = 0; i < n; ++i) {
      Complex dot = 0.0;
      for (std::size_t j = 0; j < v.size(); ++j) dot += h(i, k + 1 + j) * v[j];
      dot *= 2.0 / vn;
      for (std::size_t j = 0; j < v.size(); ++j) h(i, k + 1 + j) -= dot * std::conj(v[j]);
    }
    for (std::size_t i = k + 2; i < n; ++i) h(i, k) = 0.0;
  }
}

Complex wilkinson_shift(const Matrix& h, std::size_t hi) {
  const Complex a = h(hi - 1, hi - 1), b = h(hi - 1, hi);
  const Complex c = h(hi, hi - 1), d = h(hi, hi);
  const Complex tr = a + d;
  const Complex disc = std::sqrt((a - d) * (a - d) + 4.0 * b * c);
  const Complex e1 = 0.5 * (tr + disc), e2 = 0.5 * (tr - disc);
  return std::abs(e1 - d) < std::abs(e2 - d) ? e1 : e2;
}

/// One explicit shifted QR sweep on the active block [lo, hi].
void qr_sweep(Matrix& h, std::size_t lo, std::size_t hi, Complex shift) {
  std::vector<Givens> rot(hi - lo);
  for (std::size_t k = lo; k <= hi; ++k) h(k, k) -= shift;
  for (std::size_t k = lo; k < hi; ++k) {
    const Givens g = make_givens(h(k, k), h(k + 1, k));
    rot[k - lo] = g;
    for (std::size_t j = k; j <= hi; ++j) {
      const Complex t1 = h(k, j), t2 = h(k + 1, j);
      h(k, j) = g.c * t1 + g.s * t2;
      h(k + 1, j) = -std::conj(g.s) * t1 + g.c * t2;
    }
  }
  for (std::size_t k = lo; k < hi; ++k) {
    const Givens g = rot[k - lo];
    const std::size_t top = std::min(k + 2, hi);
    for (std::size_t i = lo; i <= top; ++i) {
      const Complex t1 = h(i, k), t2 = h(i, k + 1);
      h(i, k) = g.c * t1 + std::conj(g.s) * t2;
      h(i, k + 1) = -g.s * t1 + g.c * t2;
    }
  }
  for (std::size_t k = lo; k <= hi; ++k) h(k, k) += shift;
}

Vector qr_eigenvalues(Matrix h, std::size_t max_sweeps_per_eig) {
  const std::size_t n = h.rows();
  Vector out(n);
  if (n == 0) return out;
  if (n == 1) {
    out[0] = h(0, 0);
    return out;
  }
  hessenberg(h);
  const double scale = std::max(h.max_abs(), 1e-300);
  std::size_t hi = n - 1;
  std::size_t stagnant = 0;
  std::size_t budget = max_sweeps_per_eig * n;
  Rng rng(0x5eed);
  while (true) {
    // deflate negligible subdiagonals
    for (std::size_t k = 1; k <= hi; ++k) {
      const double thresh =
          kEps * (std::abs(h(k - 1, k - 1)) + std::abs(h(k, k))) + 1e-300;
      if (std::abs(h(k, k - 1)) <= std::max(thresh, kEps * scale * 0.5))
        h(k, k - 1) = 0.0;
    }
    while (hi > 0 && h(hi, hi - 1) == Complex(0.0)) {
      out[hi] = h(hi, hi);
      --hi;
      stagnant = 0;
    }
    if (hi == 0) {
      out[0] = h(0, 0);
      break;
    }
    std::size_t lo = hi;
    while (lo > 0 && h(lo, lo - 1) != Complex(0.0)) --lo;
    Complex shift = wilkinson_shift(h, hi);
    if (++stagnant % 12 == 0)  // exceptional shift to break symmetry cycles
      shift = h(hi, hi) + std::abs(h(hi, hi - 1)) * rng.unit_circle();
    qr_sweep(h, lo, hi, shift);
    if (budget-- == 0)
      throw ConvergenceError("eigenvalues: QR iteration exceeded its budget");
  }
  return out;
}

Complex horner(const Vector& coeffs, Complex x) {
  Complex p = 1.0;
  for (const auto& c : coeffs) p = p * x + c;
  return p;
}

}  // namespace

Vector characteristic_polynomial(const Matrix& t) {
  require_square(t, "characteristic_polynomial");
  const std::size_t n = t.rows();
  Vector coeffs(n);
  Matrix m = t;
  for (std::size_t k = 1; k <= n; ++k) {
    const Complex ck = -m.trace() / double(k);
    coeffs[k - 1] = ck;
    if (k == n) break;
    for (std::size_t i = 0; i < n; ++i) m(i, i) += ck;
    m = t * m;
  }
  return coeffs;
}

Vector monic_roots(const Vector& coeffs) {
  const std::size_t n = coeffs.size();
  Vector z(n);
  if (n == 0) return z;
  double bound = 0.0;
  for (const auto& c : coeffs) bound = std::max(bound, std::abs(c));
  bound = 1.0 + bound;
  // Durand-Kerner from a spiral of distinct starting points
  Complex seed(0.4, 0.9);
  Complex acc = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc *= seed;
    z[i] = bound * acc;
  }
  for (int iter = 0; iter < 600; ++iter) {
    double step = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      Complex denom = 1.0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) denom *= z[i] - z[j];
      if (denom == Complex(0.0)) denom = Complex(kEps, kEps);
      const Complex delta = horner(coeffs, z[i]) / denom;
      z[i] -= delta;
      step = std::max(step, std::abs(delta));
    }
    if (step <= 1e-15 * bound) break;
  }
  return z;
}

EigenPair recover_pair(const Matrix& t, Complex lambda0, int max_iters) {
  require_square(t, "recover_pair");
  const std::size_t n = t.rows();
  const double scale = std::max(t.max_abs(), 1.0);
  Rng rng(0xe16e);
  Vector v = rng.vector(n);
  const double vn0 = vector_norm2(v);
  for (auto& c : v) c /= vn0;

  EigenPair best{lambda0, v, std::numeric_limits<double>::infinity()};
  Complex lambda = lambda0;
  for (int it = 0; it < max_iters; ++it) {
    Matrix shifted = t;
    for (std::size_t i = 0; i < n; ++i) shifted(i, i) -= lambda;
    Vector w;
    try {
      LuFactorization lu(shifted);
      if (lu.singular(1e-300)) throw SingularError("exact eigenvalue hit");
      w = lu.solve(v);
    } catch (const SingularError&) {
      // exactly singular shift: nudge off the eigenvalue and retry
      Matrix nudged = t;
      for (std::size_t i = 0; i < n; ++i)
        nudged(i, i) -= lambda + Complex(0.0, kEps * scale * 16.0);
      w = LuFactorization(nudged).solve(v);
    }
    const double wn = vector_norm2(w);
    if (!(wn > 0.0) || !all_finite(w)) break;
    for (auto& c : w) c /= wn;
    v = w;
    // Rayleigh quotient and residual
    const Vector tv = t.apply(v);
    Complex rho = 0.0;
    for (std::size_t i = 0; i < n; ++i) rho += std::conj(v[i]) * tv[i];
    double res = 0.0;
    for (std::size_t i = 0; i < n; ++i) res += std::norm(tv[i] - rho * v[i]);
    res = std::sqrt(res);
    if (res < best.residual) best = {rho, v, res};
    if (res <= 1e-15 * scale) break;
    lambda = rho;
  }
  return best;
}

Spectrum eigenvalues(const Matrix& t, const EigOptions& opts) {
  require_square(t, "eigenvalues");
  if (!t.all_finite()) throw PreconditionError("eigenvalues: matrix has non-finite entries");
  const std::size_t n = t.rows();
  Spectrum s;
  if (n == 0) return s;

  EigMethod method = opts.method;
  if (method == EigMethod::Auto)
    method = n <= 4 ? EigMethod::CharPoly : EigMethod::QrIteration;
  if (method == EigMethod::CharPoly && n > 8)
    throw PreconditionError("eigenvalues: CharPoly method is limited to n <= 8");

  Vector raw = method == EigMethod::CharPoly
                   ? monic_roots(characteristic_polynomial(t))
                   : qr_eigenvalues(t, opts.max_sweeps_per_eigenvalue);

  // Residual contract: refine each value until it carries an eigenvector
  // witness. Defective clusters split by roughly eps^(1/k) collapse back onto
  // the true eigenvalue here.
  const double scale = std::max(t.max_abs(), 1.0);
  s.eigenvalues.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    Complex lambda = raw[i];
    EigenPair pair = recover_pair(t, lambda);
    if (pair.residual <= opts.residual_tol * scale ||
        std::abs(pair.value - lambda) <= 64.0 * kEps * scale) {
      lambda = pair.value;
    }
    if (pair.residual > opts.residual_tol * scale) {
      pair = recover_pair(t, lambda, 25);
      lambda = pair.value;
      if (pair.residual > opts.residual_tol * scale)
        throw ConvergenceError("eigenvalues: residual contract not met");
    }
    s.eigenvalues[i] = lambda;
    s.radius = std::max(s.radius, std::abs(lambda));
  }
  return s;
}

std::vector<Vector> null_space(const Matrix& a, double tol) {
  const std::size_t m = a.rows(), n = a.cols();
  Matrix r = a;
  std::vector<std::size_t> perm(n);
  for (std::size_t j = 0; j < n; ++j) perm[j] = j;

  const std::size_t steps = std::min(m, n);
  for (std::size_t k = 0; k < steps; ++k) {
    // column pivot: largest remaining column norm
    std::size_t piv = k;
    double best = -1.0;
    for (std::size_t j = k; j < n; ++j) {
      double cn = 0.0;
      for (std::size_t i = k; i < m; ++i) cn += std::norm(r(i, j));
      if (cn > best) {
        best = cn;
        piv = j;
      }
    }
    if (piv != k) {
      for (std::size_t i = 0; i < m; ++i) std::swap(r(i, k), r(i, piv));
      std::swap(perm[k], perm[piv]);
    }
    double colnorm = std::sqrt(std::max(best, 0.0));
    if (colnorm == 0.0) continue;
    Vector v(m - k);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = r(k + i, k);
    const Complex phase = std::abs(v[0]) > 0.0 ? v[0] / std::abs(v[0]) : Complex(1.0);
    v[0] += phase * colnorm;
    double vn = 0.0;
    for (const auto& z : v) vn += std::norm(z);
    if (vn == 0.0) continue;
    for (std::size_t j = k; j < n; ++j) {
      Complex dot = 0.0;
      for (std::size_t i = 0; i < v.size(); ++i) dot += std::conj(v[i]) * r(k + i, j);
      dot *= 2.0 / vn;
      for (std::size_t i = 0; i < v.size(); ++i) r(k + i, j) -= dot * v[i];
    }
  }

  const double r00 = std::abs(r(0, 0));
  const double cutoff = std::max(tol, kEps * double(std::max(m, n)) * r00);
  std::size_t rank = 0;
  for (std::size_t k = 0; k < steps; ++k)
    if (std::abs(r(k, k)) > cutoff) ++rank;
    else break;

  std::vector<Vector> basis;
  for (std::size_t f = rank; f < n; ++f) {
    Vector y(n, Complex(0.0));
    y[f] = 1.0;
    for (std::size_t ii = rank; ii-- > 0;) {
      Complex acc = -r(ii, f);
      for (std::size_t j = ii + 1; j < rank; ++j) acc -= r(ii, j) * y[j];
      y[ii] = acc / r(ii, ii);
    }
    Vector x(n, Complex(0.0));
    for (std::size_t j = 0; j < n; ++j) x[perm[j]] = y[j];
    const double nn = vector_norm2(x);
    for (auto& c : x) c /= nn;
    basis.push_back(std::move(x));
  }
  return basis;
}

double spectrum_distance(const Vector& eigenvalues, Complex z) {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& ev : eigenvalues) d = std::min(d, std::abs(z - ev));
  return d;
}

}  // namespace holocalc
