#include <doctest.h>

#include <cmath>

#include "holocalc/spectral.hpp"
#include "holocalc/verify.hpp"
#include "oracles.hpp"

using namespace holocalc;

TEST_SUITE("spectral") {

TEST_CASE("eigenvalue oracle examples") {
  const Spectrum diag = eigenvalues(Matrix::diagonal({Complex(1.0), Complex(2.0)}));
  CHECK(spectrum_distance(diag.eigenvalues, Complex(1.0)) <= 1e-12);
  CHECK(spectrum_distance(diag.eigenvalues, Complex(2.0)) <= 1e-12);
  CHECK(diag.radius == doctest::Approx(2.0));

  Matrix nilp(2, 2);
  nilp(0, 1) = 1.0;
  const Spectrum sn = eigenvalues(nilp);
  CHECK(sn.radius <= 1e-9);

  // rotation block: characteristic polynomial x^2 + 1, roots +-i
  Matrix rot(2, 2);
  rot(0, 1) = -1.0;
  rot(1, 0) = 1.0;
  const Vector coeffs = characteristic_polynomial(rot);
  CHECK(std::abs(coeffs[0]) <= 1e-14);
  CHECK(std::abs(coeffs[1] - Complex(1.0)) <= 1e-14);
  const Spectrum sr = eigenvalues(rot);
  CHECK(spectrum_distance(sr.eigenvalues, Complex(0.0, 1.0)) <= 1e-12);
  CHECK(spectrum_distance(sr.eigenvalues, Complex(0.0, -1.0)) <= 1e-12);
}

TEST_CASE("eigenvalue residual contract on both methods") {
  Rng rng(5);
  for (int i = 0; i < 6; ++i) {
    const std::size_t n = 3 + std::size_t(i % 5);
    const Matrix t = random_diagonalizable(rng, n, 0.1, 0.3);
    for (EigMethod method : {EigMethod::QrIteration, EigMethod::CharPoly}) {
      if (method == EigMethod::CharPoly && n > 8) continue;
      EigOptions opts;
      opts.method = method;
      const Spectrum s = eigenvalues(t, opts);
      REQUIRE(s.eigenvalues.size() == n);
      for (const auto& ev : s.eigenvalues) {
        const EigenPair pair = recover_pair(t, ev);
        CHECK(pair.residual <= 1e-9 * std::max(1.0, t.max_abs()));
      }
    }
  }
}

TEST_CASE("spectral radius formula examples") {
  const Calibration maxnorm = Calibration::max_norm(2);

  Matrix nilp(2, 2);
  nilp(0, 1) = 1.0;
  const SpectralRadiusEstimate rn = spectral_radius(maxnorm, nilp, 5);
  CHECK(rn.certified_upper() == 0.0);  // T^2 = 0 so the inf form hits 0 exactly

  const Matrix d = Matrix::diagonal({Complex(1.0), Complex(2.0)});
  const SpectralRadiusEstimate rd = spectral_radius(maxnorm, d, 30);
  CHECK(rd.certified_upper() == doctest::Approx(2.0));
  CHECK(rd.eigen_radius() == doctest::Approx(2.0));

  // Jordan block at 0.5: phat(T^n) = 0.5^n + n 0.5^(n-1) in the max norm
  const Matrix j = jordan_block(Complex(0.5), 2);
  PowerSequence seq(j);
  for (std::size_t n = 1; n <= 10; ++n) {
    const double expected = std::pow(0.5, double(n)) + double(n) * std::pow(0.5, double(n) - 1.0);
    const double actual = std::exp(
        log_phat_scaled(maxnorm[0], seq.normalized(), seq.log_scale()));
    CHECK(actual == doctest::Approx(expected).epsilon(1e-12));
    seq.advance();
  }
  const SpectralRadiusEstimate rj = spectral_radius(maxnorm, j, 60);
  CHECK(std::abs(rj.by_formula.at("limsup_sup") - 0.5) <= 1e-2);
  CHECK(rj.certified_upper() >= 0.5);
}

TEST_CASE("radius preconditions") {
  const Calibration withkernel(
      {Seminorm::weighted_sup({1.0, 0.0}), Seminorm::weighted_sup({1.0, 1.0})});
  Matrix leak(2, 2);
  leak(0, 1) = 1.0;
  CHECK_THROWS_AS(spectral_radius(withkernel, leak, 10), PreconditionError);
  CHECK_THROWS_AS(spectral_radius(Calibration::max_norm(2), leak, 1), PreconditionError);
}

TEST_CASE("resolvent direct examples") {
  const Matrix half = Matrix::diagonal({Complex(0.5)});
  const Matrix r = resolvent_direct(half, Complex(1.0));
  CHECK(std::abs(r(0, 0) - Complex(2.0)) <= 1e-14);

  // ||R|| ~ 1/|lambda| for huge lambda
  Rng rng(13);
  const Matrix t = rng.matrix(3, 3);
  const double big = 1e8;
  const Matrix rb = resolvent_direct(t, Complex(big));
  CHECK(rb.inf_norm() <= 2.0 / big);
  CHECK(rb.inf_norm() >= 0.5 / big);

  const Matrix d = Matrix::diagonal({Complex(1.0), Complex(2.0)});
  CHECK_THROWS_AS(resolvent_direct(d, Complex(2.0)), SingularError);
}

TEST_CASE("resolvent residual contract") {
  Rng rng(31);
  for (int i = 0; i < 10; ++i) {
    const std::size_t n = 2 + std::size_t(i % 6);
    const Matrix t = random_diagonalizable(rng, n, 0.1, 0.3);
    const Complex lam = Complex(3.0 + rng.uniform(), rng.uniform());
    const Matrix r = resolvent_direct(t, lam);
    const Matrix residual =
        (Matrix::identity(n) * lam - t) * r - Matrix::identity(n);
    CHECK(residual.inf_norm() <= 1e-10);
  }
}

TEST_CASE("neumann series examples") {
  const Calibration p1 = Calibration::max_norm(1);
  const Matrix half = Matrix::diagonal({Complex(0.5)});
  const NeumannResult nr = neumann_resolvent(p1, half, Complex(1.0), 1e-12);
  CHECK(std::abs(nr.resolvent(0, 0) - Complex(2.0)) <= 1e-11);
  CHECK(nr.terms_used >= 38);
  CHECK(nr.terms_used <= 42);  // 0.5^n < 1e-12 first at n = 40

  Matrix nilp(2, 2);
  nilp(0, 1) = 1.0;
  const Calibration p2 = Calibration::max_norm(2);
  const NeumannResult nn = neumann_resolvent(p2, nilp, Complex(1.0), 1e-12);
  CHECK(nn.terms_used == 2);  // I + T exactly
  CHECK(oracle::matrix_distance(nn.resolvent, Matrix::identity(2) + nilp) == 0.0);

  const Matrix d = Matrix::diagonal({Complex(1.0), Complex(2.0)});
  CHECK_THROWS_AS(neumann_resolvent(p2, d, Complex(1.5), 1e-10), PreconditionError);
}

TEST_CASE("resolvent identities") {
  const Matrix d = Matrix::diagonal({Complex(1.0), Complex(2.0)});

  // first resolvent equation, exact rational arithmetic on the diagonal:
  // R(5) - R(7) = (7 - 5) R(5) R(7) entrywise, e.g. 1/4 - 1/6 = 2/24
  const ResolventIdentityReport rep =
      verify_resolvent_identities(d, Complex(5.0), Complex(7.0), 1);
  CHECK(rep.first_identity_defect <= 1e-12);
  CHECK(rep.derivative_defect_rel <= 1e-6);
  CHECK(rep.infinity_probe_defect <= 3.0 * d.inf_norm() / 1e6);

  Rng rng(41);
  for (int n = 1; n <= 3; ++n) {
    const Matrix t = random_diagonalizable(rng, 4, 0.15, 0.2);
    const ResolventIdentityReport r =
        verify_resolvent_identities(t, Complex(4.0, 1.0), Complex(5.0, -1.0), n);
    CHECK(r.first_identity_defect <= 1e-10);
    CHECK(r.derivative_defect_rel <= 1e-5);
  }

  CHECK_THROWS_AS(verify_resolvent_identities(d, Complex(1.0), Complex(7.0), 1),
                  SingularError);
}

TEST_CASE("verify suite: spectral invariants") {
  const SuiteReport rep = run_suite("spectral", 0);
  for (const auto& c : rep.checks) {
    INFO(c.name, " defect=", c.defect, " tol=", c.tolerance);
    CHECK(c.pass);
  }
}

}  // TEST_SUITE
