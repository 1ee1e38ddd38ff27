#pragma once

#include <string>
#include <vector>

#include "holocalc/matrix.hpp"
#include "holocalc/rng.hpp"
#include "holocalc/seminorm.hpp"

namespace holocalc {

struct CheckResult {
  std::string name;
  double defect = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;
  bool all_pass = true;

  void add(const std::string& name, double defect, double tolerance);
};

/// Named invariant suites, runnable from the CLI (`verify --suite NAME`) and
/// reused by the test binaries. Deterministic for a given seed.
/// Names: calib, spectral, contour, funcalc, projections, perturb, renorm.
SuiteReport run_suite(const std::string& name, std::uint64_t seed);
std::vector<std::string> suite_names();

// Deterministic instance generators shared by the suites and the tests.

/// T = V diag(eigs) V^{-1} with pairwise eigenvalue gaps >= eigen_gap and a
/// mildly conditioned V (unitary when skew = 0). The chosen eigenvalues and
/// similarity are reported so callers can build spectral oracles.
Matrix random_diagonalizable(Rng& rng, std::size_t n, double eigen_gap, double skew,
                             Vector* eigenvalues_out = nullptr,
                             Matrix* similarity_out = nullptr);

Matrix random_normal(Rng& rng, std::size_t n, double eigen_gap,
                     Vector* eigenvalues_out = nullptr);

Matrix jordan_block(Complex lambda, std::size_t n);

/// Strictly positive weights in [0.5, 1.5]: a norm-like calibration where
/// every operator seminorm is finite.
Calibration random_positive_calibration(Rng& rng, std::size_t n, std::size_t members);

/// Eigenvalues with pairwise gaps >= gap, drawn from a disc of the given
/// radius.
Vector random_separated_eigenvalues(Rng& rng, std::size_t n, double gap, double radius);

}  // namespace holocalc
