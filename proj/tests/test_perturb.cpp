#include <doctest.h>

#include <cmath>

#include "holocalc/perturb.hpp"
#include "holocalc/verify.hpp"
#include "oracles.hpp"

using namespace holocalc;

TEST_SUITE("perturb") {

TEST_CASE("zero perturbation returns f(T) in one term") {
  const Matrix t = Matrix::diagonal({Complex(0.2), Complex(0.9)});
  const Calibration p = Calibration::max_norm(2);
  const Domain d = default_domain({Complex(0.2), Complex(0.9)}, HoloFun::exp(), 0.3);
  const PerturbationResult pr =
      perturbation_series(p, t, Matrix::zero(2), HoloFun::exp(), d, 1e-11);
  CHECK(pr.terms_used == 1);
  CHECK(pr.direct_deviation <= 1e-9);
  CHECK(oracle::matrix_distance(
            pr.value, Matrix::diagonal({Complex(std::exp(0.2)), Complex(std::exp(0.9))})) <=
        1e-9);
}

TEST_CASE("nilpotent perturbation of the identity") {
  // exp(I + S) = e (I + S) for S^2 = 0 commuting with I
  const Matrix t = Matrix::identity(2);
  Matrix s(2, 2);
  s(0, 1) = 1.0;
  const Calibration p = Calibration::max_norm(2);
  const Domain d = Domain::disk(Complex(1.0), 1.5);
  const PerturbationResult pr = perturbation_series(p, t, s, HoloFun::exp(), d, 1e-11);
  CHECK(pr.terms_used == 2);  // nilpotency index
  const Matrix expected = (Matrix::identity(2) + s) * Complex(std::exp(1.0));
  CHECK(oracle::matrix_distance(pr.value, expected) <= 1e-9);
  CHECK(pr.direct_deviation <= 1e-9);
}

TEST_CASE("scalar expansion to machine precision") {
  const Matrix t = Matrix::diagonal({Complex(1.0), Complex(2.0)});
  const Matrix s = Matrix::identity(2) * Complex(0.01);
  const Calibration p = Calibration::max_norm(2);
  const Domain d{{{Complex(1.0), 0.6}, {Complex(2.0), 0.6}}};
  const HoloFun sq = HoloFun::poly({Complex(0.0), Complex(0.0), Complex(1.0)});
  const PerturbationResult pr = perturbation_series(p, t, s, sq, d, 1e-13);
  CHECK(oracle::matrix_distance(
            pr.value, Matrix::diagonal({Complex(1.01 * 1.01), Complex(2.01 * 2.01)})) <=
        1e-12);
}

TEST_CASE("preconditions") {
  const Calibration p = Calibration::max_norm(2);
  const Matrix t = Matrix::diagonal({Complex(1.0), Complex(2.0)});
  const Domain d{{{Complex(1.0), 0.4}, {Complex(2.0), 0.4}}};

  // non-commuting S
  Matrix nc(2, 2);
  nc(1, 0) = 1.0;
  CHECK_THROWS_AS(perturbation_series(p, t, nc, HoloFun::exp(), d, 1e-10),
                  PreconditionError);

  // radius of S beyond the spectrum clearance
  const Matrix big = Matrix::identity(2) * Complex(0.9);
  CHECK_THROWS_AS(perturbation_series(p, t, big, HoloFun::exp(), d, 1e-10),
                  PreconditionError);

  // spectrum of T outside the domain
  const Domain tiny = Domain::disk(Complex(1.0), 0.3);
  CHECK_THROWS_AS(
      perturbation_series(p, t, Matrix::zero(2), HoloFun::exp(), tiny, 1e-10),
      PreconditionError);

  // f with a pole inside the domain
  const HoloFun pole_inside =
      HoloFun::rational({Complex(1.0)}, {Complex(-1.1), Complex(1.0)});
  CHECK_THROWS_AS(
      perturbation_series(p, t, Matrix::zero(2), pole_inside, d, 1e-10),
      PreconditionError);
}

TEST_CASE("series matches the direct route on commuting polynomial pairs") {
  Rng rng(43);
  for (int i = 0; i < 5; ++i) {
    const std::size_t n = 3;
    Vector eigs;
    const Matrix t = random_diagonalizable(rng, n, 0.25, 0.2, &eigs);
    const Calibration p = Calibration::max_norm(n);
    const Domain d = default_domain(eigs, HoloFun::exp(), 0.2);
    // S = small polynomial in T, scaled below half the clearance
    Matrix s = polynomial_in_matrix({Complex(0.0), rng.in_disc(0.05), rng.in_disc(0.03)}, t);
    const PerturbationResult pr = perturbation_series(p, t, s, HoloFun::exp(), d, 1e-10);
    CHECK(pr.direct_deviation <= 1e-7);
    CHECK(pr.spectrum_in_domain_margin > 0.0);
  }
}

TEST_CASE("quasinilpotence certificates") {
  const Calibration p3 = Calibration::max_norm(3);
  Matrix strict(3, 3);
  strict(0, 1) = 2.0;
  strict(0, 2) = -1.0;
  strict(1, 2) = 0.5;
  const QuasinilpotentReport up = is_quasinilpotent(p3, strict, 3);
  CHECK(up.quasinilpotent);
  CHECK(up.equivalence_consistent);
  CHECK(up.inf_form_radius == 0.0);

  const Calibration p1 = Calibration::max_norm(1);
  const QuasinilpotentReport d =
      is_quasinilpotent(p1, Matrix::diagonal({Complex(0.1)}), 30);
  CHECK_FALSE(d.quasinilpotent);
  CHECK(d.equivalence_consistent);

  // phat(T) = 4 but T^2 = 0: the inf form hits zero at n = 2
  Matrix big_nilp(2, 2);
  big_nilp(0, 1) = 4.0;
  const Calibration p2 = Calibration::max_norm(2);
  const QuasinilpotentReport bn = is_quasinilpotent(p2, big_nilp, 2);
  CHECK(bn.quasinilpotent);
  CHECK(bn.inf_form_radius == 0.0);
}

TEST_CASE("verify suite: perturb invariants") {
  const SuiteReport rep = run_suite("perturb", 0);
  for (const auto& c : rep.checks) {
    INFO(c.name, " defect=", c.defect, " tol=", c.tolerance);
    CHECK(c.pass);
  }
}

}  // TEST_SUITE
