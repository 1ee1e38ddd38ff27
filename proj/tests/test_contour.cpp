#include <doctest.h>

#include <cmath>

#include "holocalc/contour.hpp"
#include "holocalc/verify.hpp"

using namespace holocalc;

TEST_SUITE("contour") {

TEST_CASE("single linkage clustering") {
  const auto two = cluster_spectrum({Complex(1.0), Complex(2.0)}, 0.5);
  CHECK(two.size() == 2);

  const auto chained = cluster_spectrum({Complex(1.0), Complex(1.1), Complex(5.0)}, 0.2);
  REQUIRE(chained.size() == 2);
  CHECK(chained[0].member_indices.size() == 2);  // {1, 1.1} chained below the gap
  CHECK(chained[1].member_indices.size() == 1);

  const auto single = cluster_spectrum({Complex(3.0, 1.0)}, 0.7);
  CHECK(single.size() == 1);
  CHECK_THROWS_AS(cluster_spectrum({Complex(0.0)}, 0.0), PreconditionError);
}

TEST_CASE("cauchy contour construction examples") {
  const Contour origin = build_cauchy_contour({Complex(0.0)}, {}, Domain::disk(0.0, 2.0));
  REQUIRE(origin.circles.size() == 1);
  CHECK(std::abs(origin.circles[0].center) <= 1e-12);
  CHECK(origin.circles[0].radius <= 1.0);
  CHECK(origin.separation > 0.0);

  const Contour around1 =
      build_cauchy_contour({Complex(1.0)}, {Complex(2.0)}, Domain::disk(0.0, 10.0));
  REQUIRE(around1.circles.size() == 1);
  CHECK(around1.circles[0].radius <= 0.5);
  CHECK(winding_number(around1, Complex(1.0)) == 1);
  CHECK(winding_number(around1, Complex(2.0)) == 0);

  // excluded point between two enclosed points is feasible in a roomy domain
  const Contour split = build_cauchy_contour({Complex(1.0), Complex(2.0)},
                                             {Complex(1.5)}, Domain::disk(0.0, 10.0));
  CHECK(split.circles.size() == 2);
  CHECK(winding_number(split, Complex(1.5)) == 0);
  CHECK(winding_number(split, Complex(1.0)) == 1);
  CHECK(winding_number(split, Complex(2.0)) == 1);

  // but not when the domain leaves no clearance
  CHECK_THROWS_AS(build_cauchy_contour({Complex(1.0), Complex(2.0)}, {Complex(1.5)},
                                       Domain::disk(1.5, 0.500000001)),
                  PreconditionError);

  // an excluded point inside a cluster hull is reported infeasible
  CHECK_THROWS_AS(build_cauchy_contour({Complex(1.0 - 1e-8), Complex(1.0 + 1e-8)},
                                       {Complex(1.0)}, Domain::disk(0.0, 5.0)),
                  PreconditionError);

  CHECK_THROWS_AS(build_cauchy_contour({}, {}, Domain::disk(0.0, 1.0)),
                  PreconditionError);
  CHECK_THROWS_AS(build_cauchy_contour({Complex(3.0)}, {}, Domain::disk(0.0, 1.0)),
                  PreconditionError);  // enclosed point outside the domain
}

TEST_CASE("winding numbers from circle geometry") {
  Contour gamma;
  gamma.circles.push_back({Complex(0.0), 1.0, +1, 16});
  gamma.separation = 0.5;
  CHECK(winding_number(gamma, Complex(0.0)) == 1);
  CHECK(winding_number(gamma, Complex(2.0)) == 0);
  CHECK_THROWS_AS(winding_number(gamma, Complex(1.0)), PreconditionError);

  gamma.circles.push_back({Complex(5.0), 1.0, +1, 16});
  CHECK(winding_number(gamma, Complex(5.2)) == 1);  // additivity over circles
  gamma.circles[1].orientation = -1;
  CHECK(winding_number(gamma, Complex(5.2)) == -1);
}

TEST_CASE("quadrature nodes: exactness and residues") {
  Contour unit;
  unit.circles.push_back({Complex(0.0), 1.0, +1, 64});
  unit.separation = 1.0;

  Complex pole = 0.0, constant = 0.0, poly5 = 0.0;
  for (const auto& node : quadrature_nodes(unit)) {
    pole += node.weight / node.lambda;          // residue 1 inside
    constant += node.weight;                    // entire, integral 0
    poly5 += node.weight * std::pow(node.lambda, 5.0);
  }
  CHECK(std::abs(pole - Complex(1.0)) <= 1e-14);
  CHECK(std::abs(constant) <= 1e-14);
  CHECK(std::abs(poly5) <= 1e-13);

  // exact for the Cauchy kernel at the center even with 2 nodes
  Complex two_nodes = 0.0;
  for (const auto& node : quadrature_nodes(unit, 2)) two_nodes += node.weight / node.lambda;
  CHECK(std::abs(two_nodes - Complex(1.0)) <= 1e-15);

  CHECK_THROWS_AS(quadrature_nodes(unit, 1), PreconditionError);
}

TEST_CASE("quadrature converges geometrically for analytic integrands") {
  Contour unit;
  unit.circles.push_back({Complex(0.0), 1.0, +1, 8});
  unit.separation = 1.0;
  const Complex a(1.5, 0.3);  // pole outside: exact value 0
  auto err = [&](std::size_t n) {
    Complex acc = 0.0;
    for (const auto& node : quadrature_nodes(unit, n)) acc += node.weight / (node.lambda - a);
    return std::abs(acc);
  };
  const double e8 = err(8), e16 = err(16), e32 = err(32);
  CHECK(e16 <= e8 * e8 * 100.0 + 1e-15);  // doubling squares the error
  CHECK(e32 <= e16 * e16 * 100.0 + 1e-15);
}

TEST_CASE("contour recheck catches corruption") {
  const Vector k{Complex(0.0)};
  const Domain d = Domain::disk(0.0, 2.0);
  Contour gamma = build_cauchy_contour(k, {}, d);
  CHECK(check_contour(gamma, k, {}, d).valid);
  Contour broken = gamma;
  broken.circles[0].center = Complex(5.0);  // no longer encloses K or fits in D
  CHECK_FALSE(check_contour(broken, k, {}, d).valid);
}

TEST_CASE("verify suite: contour invariants") {
  const SuiteReport rep = run_suite("contour", 0);
  for (const auto& c : rep.checks) {
    INFO(c.name, " defect=", c.defect, " tol=", c.tolerance);
    CHECK(c.pass);
  }
}

}  // TEST_SUITE
