#include <doctest.h>

#include "holocalc/boundedness.hpp"
#include "holocalc/seminorm.hpp"
#include "holocalc/verify.hpp"
#include "oracles.hpp"

using namespace holocalc;

namespace {

Matrix mat2(Complex a, Complex b, Complex c, Complex d) {
  Matrix m(2, 2);
  m(0, 0) = a;
  m(0, 1) = b;
  m(1, 0) = c;
  m(1, 1) = d;
  return m;
}

}  // namespace

TEST_SUITE("calib") {

TEST_CASE("seminorm evaluation") {
  const Seminorm p = Seminorm::weighted_sup({1.0, 2.0});
  CHECK(p({Complex(3.0), Complex(-1.0)}) == doctest::Approx(3.0));  // max(3, 2)
  CHECK(p({Complex(0.0), Complex(0.0)}) == 0.0);
  const Seminorm q = Seminorm::weighted_sup({0.0, 1.0});
  CHECK(q({Complex(5.0), Complex(0.0)}) == 0.0);  // kernel vector
  CHECK_THROWS_AS(p({Complex(1.0)}), DimensionError);
  CHECK_THROWS_AS(Seminorm::weighted_sup({-1.0, 1.0}), PreconditionError);
}

TEST_CASE("mixed seminorm closed form vs brute force") {
  const Matrix t = mat2(0.0, 1.0, 0.0, 0.0);
  const Seminorm p = Seminorm::weighted_sup({1.0, 1.0});
  CHECK(mixed_seminorm(p, p, t).value() == doctest::Approx(1.0));
  const double brute = oracle::mixed_seminorm_grid(p, p, t);
  CHECK(brute == doctest::Approx(1.0).epsilon(0.01));

  // identity has phat = 1 under every weighted_sup seminorm
  const Matrix id = Matrix::identity(2);
  CHECK(phat(Seminorm::weighted_sup({0.7, 3.0}), id).value() == doctest::Approx(1.0));
  CHECK(phat(p, id * Complex(2.0)).value() == doctest::Approx(2.0));

  // kernel of p leaks through T: m_pq = +infinity
  const Seminorm pk = Seminorm::weighted_sup({1.0, 0.0});
  const Seminorm q = Seminorm::weighted_sup({1.0, 1.0});
  CHECK(!mixed_seminorm(pk, q, t).is_finite());
  CHECK_THROWS_AS(mixed_seminorm(pk, q, t).value(), PreconditionError);
}

TEST_CASE("mixed seminorm closed form equals grid sup on random instances") {
  Rng rng(7);
  for (int inst = 0; inst < 8; ++inst) {
    const std::size_t n = 2 + std::size_t(inst % 2);
    const Matrix t = rng.matrix(n, n);
    std::vector<double> wp(n), wq(n);
    for (auto& w : wp) w = rng.uniform(0.3, 2.0);
    for (auto& w : wq) w = rng.uniform(0.3, 2.0);
    const Seminorm p = Seminorm::weighted_sup(wp);
    const Seminorm q = Seminorm::weighted_sup(wq);
    const double closed = mixed_seminorm(p, q, t).value();
    const double grid = oracle::mixed_seminorm_grid(p, q, t, 100 + inst);
    CHECK(std::abs(closed - grid) <= 0.01 * closed);
    CHECK(grid <= closed * (1.0 + 1e-12));  // grid is a restricted sup
  }
}

TEST_CASE("mixed seminorm estimate") {
  const Matrix t = mat2(0.0, 1.0, 0.0, 0.0);
  const Seminorm p = Seminorm::weighted_sup({1.0, 1.0});
  const double est = mixed_seminorm_estimate(p, p, t, 10000);
  CHECK(est <= 1.0 + 1e-12);
  CHECK(est >= 0.95);  // within 5% of the closed form
  CHECK(mixed_seminorm_estimate(p, p, Matrix::identity(2), 100) ==
        doctest::Approx(1.0));
  // every sample in ker p: estimate is 0
  const Seminorm zero_p = Seminorm::weighted_sup({0.0, 0.0});
  CHECK(mixed_seminorm_estimate(zero_p, p, t, 50) == 0.0);
}

TEST_CASE("lemma bound q(Tx) <= m_pq(T) p(x)") {
  Rng rng(11);
  const Matrix t = rng.matrix(3, 3);
  const Seminorm p = Seminorm::weighted_sup({1.0, 0.5, 2.0});
  const Seminorm q = Seminorm::weighted_sup({0.25, 1.0, 1.0});
  const double m = mixed_seminorm(p, q, t).value();
  for (int s = 0; s < 200; ++s) {
    const Vector x = rng.vector(3);
    CHECK(q(t.apply(x)) <= m * p(x) * (1.0 + 1e-12) + 1e-15);
  }
}

TEST_CASE("quotient boundedness is the kernel-invariance test") {
  Rng rng(3);
  const Matrix any = rng.matrix(2, 2);
  const Calibration all_positive({Seminorm::weighted_sup({1.0, 2.0})});
  CHECK(is_quotient_bounded(all_positive, any));

  const Calibration withkernel(
      {Seminorm::weighted_sup({1.0, 0.0}), Seminorm::weighted_sup({1.0, 1.0})});
  CHECK_FALSE(is_quotient_bounded(withkernel, mat2(0.0, 1.0, 0.0, 0.0)));
  CHECK(is_quotient_bounded(withkernel, mat2(0.0, 0.0, 1.0, 0.0)));
}

TEST_CASE("universal boundedness and the operator norm") {
  const Calibration p({Seminorm::weighted_sup({1.0, 1.0})});
  const auto id = is_universally_bounded(p, Matrix::identity(2));
  CHECK(id.bounded);
  CHECK(id.bound == doctest::Approx(1.0));

  Matrix d = Matrix::diagonal({Complex(3.0), Complex(1.0)});
  const auto db = is_universally_bounded(p, d);
  CHECK(db.bounded);
  CHECK(db.bound == doctest::Approx(3.0));  // max weighted row sum

  const Calibration withkernel(
      {Seminorm::weighted_sup({1.0, 0.0}), Seminorm::weighted_sup({1.0, 1.0})});
  CHECK_FALSE(is_universally_bounded(withkernel, mat2(0.0, 1.0, 0.0, 0.0)).bounded);

  // universally bounded instances are quotient bounded (inclusion chain)
  Rng rng(17);
  for (int i = 0; i < 20; ++i) {
    const Matrix t = rng.matrix(3, 3);
    const Calibration c = random_positive_calibration(rng, 3, 2);
    if (is_universally_bounded(c, t).bounded) CHECK(is_quotient_bounded(c, t));
  }
}

TEST_CASE("opnorm equals the smallest uniform constant") {
  Rng rng(23);
  for (int i = 0; i < 10; ++i) {
    const Matrix t = rng.matrix(3, 3);
    const Calibration c = random_positive_calibration(rng, 3, 3);
    const double norm = opnorm(c, t).value();
    // no sampled ratio exceeds it, and some member attains it
    double attained = 0.0;
    for (const auto& member : c.members())
      attained = std::max(attained, phat(member, t).value());
    CHECK(norm == doctest::Approx(attained).epsilon(1e-12));
    for (int s = 0; s < 100; ++s) {
      const Vector x = rng.vector(3);
      for (const auto& member : c.members()) {
        const double px = member(x);
        if (px > 0.0) CHECK(member(t.apply(x)) <= norm * px * (1.0 + 1e-12));
      }
    }
  }
}

TEST_CASE("submultiplicativity of phat") {
  Rng rng(29);
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 2 + std::size_t(i % 4);
    const Matrix s = rng.matrix(n, n), t = rng.matrix(n, n);
    std::vector<double> w(n);
    for (auto& x : w) x = rng.uniform(0.4, 2.0);
    const Seminorm p = Seminorm::weighted_sup(w);
    CHECK(phat(p, s * t).value() <=
          phat(p, s).value() * phat(p, t).value() * (1.0 + 1e-12));
  }
}

TEST_CASE("principal closure") {
  const Calibration p(
      {Seminorm::weighted_sup({1.0, 0.0}), Seminorm::weighted_sup({0.0, 1.0})});
  const Calibration closed = principal_closure(p);
  CHECK(closed.size() == 3);  // adds the join (1, 1)
  bool found_join = false;
  for (const auto& m : closed.members())
    if (m.weights() == std::vector<double>{1.0, 1.0}) found_join = true;
  CHECK(found_join);
  CHECK(closed.is_principal());
  CHECK(q_equivalent_sampled(p, closed));

  // directed families are fixed points
  CHECK(principal_closure(closed).size() == closed.size());

  // three distinct members close into at most 2^3 - 1 with every pair dominated
  const Calibration three({Seminorm::weighted_sup({1.0, 0.0, 0.0}),
                           Seminorm::weighted_sup({0.0, 1.0, 0.0}),
                           Seminorm::weighted_sup({0.0, 0.0, 1.0})});
  const Calibration closed3 = principal_closure(three);
  CHECK(closed3.size() <= 7);
  CHECK(closed3.is_principal());
}

TEST_CASE("calibration rejects non-separating families") {
  CHECK_THROWS_AS(Calibration({Seminorm::weighted_sup({1.0, 0.0})}), PreconditionError);
  CHECK_NOTHROW(Calibration({Seminorm::weighted_sup({1.0, 0.0}),
                             Seminorm::weighted_sup({0.0, 2.0})}));
}

TEST_CASE("verify suite: calib invariants") {
  const SuiteReport rep = run_suite("calib", 0);
  for (const auto& c : rep.checks) {
    INFO(c.name, " defect=", c.defect, " tol=", c.tolerance);
    CHECK(c.pass);
  }
}

}  // TEST_SUITE
