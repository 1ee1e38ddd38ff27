#pragma once

#include <string>
#include <vector>

#include "holocalc/matrix.hpp"

namespace holocalc {

struct Disk {
  Complex center;
  double radius;
};

/// Relatively compact open set, represented as a union of disks.
struct Domain {
  std::vector<Disk> disks;

  /// Lower bound on dist(z, complement): max over disks of r - |z - c|,
  /// clamped at 0. Exact for a single disk, conservative for unions.
  double distance_to_complement(Complex z) const;
  bool contains(Complex z) const { return distance_to_complement(z) > 0.0; }

  static Domain disk(Complex center, double radius) { return {{{center, radius}}}; }
};

struct Circle {
  Complex center;
  double radius = 0.0;
  int orientation = +1;  // +1 counterclockwise
  std::size_t nodes = 128;
};

/// Oriented union of circles separating a compact set from the complement of
/// a domain. `separation` certifies the minimum distance from the curve to
/// the enclosed points, the excluded points, and the domain complement.
struct Contour {
  std::vector<Circle> circles;
  double separation = 0.0;

  double length() const;
};

/// Indices into a clustering of the spectrum; the selected clusters sit at
/// distance >= gap from the unselected ones by construction.
struct SpectralSet {
  std::vector<std::size_t> cluster_indices;
};

struct EigenCluster {
  std::vector<std::size_t> member_indices;  // positions in the eigenvalue list
  Complex centroid;
  double extent = 0.0;  // max distance from centroid to a member
};

/// Single linkage: two eigenvalues share a cluster iff they are chained by
/// hops strictly shorter than gap. Distinct clusters end up >= gap apart.
std::vector<EigenCluster> cluster_spectrum(const Vector& eigenvalues, double gap);

struct ContourOptions {
  std::size_t nodes_per_circle = 128;
  double min_separation = 1e-8;
  /// Relative merge threshold for grouping enclosed points into circles;
  /// numerically split multiplets collapse into one circle.
  double merge_tol_rel = 1e-6;
};

/// Positively oriented circles around single-linkage groups of K, with per
/// group radius = extent + min(gap/3, dist(hull, excluded)/2,
/// dist(hull, complement)/2). Certifies: winding number 1 on K, 0 on the
/// excluded points, every circle inside D, pairwise disjoint circles.
/// Throws PreconditionError when the geometry is infeasible (an excluded
/// point inside a group hull, or clearances below min_separation).
Contour build_cauchy_contour(const Vector& enclosed, const Vector& excluded,
                             const Domain& d, const ContourOptions& opts = {});

/// Exact winding number from circle geometry; z must stay 1e-12 away from
/// the curve.
int winding_number(const Contour& gamma, Complex z);

struct QuadratureNode {
  Complex lambda;
  Complex weight;  // includes the 1/(2 pi i) and the d lambda factor
};

/// Trapezoidal nodes lambda_j = c + r e^{2 pi i j / N} with weights
/// orientation * r e^{2 pi i j / N} / N, so that (1/2 pi i) contour integral
/// of g is approximated by sum_j w_j g(lambda_j). Exact for g = 1/(lambda-c)
/// at any N >= 2.
std::vector<QuadratureNode> quadrature_nodes(const Contour& gamma);
std::vector<QuadratureNode> quadrature_nodes(const Contour& gamma,
                                             std::size_t nodes_override);

struct ContourCheck {
  bool valid = true;
  std::string detail;
};

/// Post hoc validity: winding 1 on each enclosed point, 0 on each excluded
/// point, all circle points inside the domain, separation still positive.
ContourCheck check_contour(const Contour& gamma, const Vector& enclosed,
                           const Vector& excluded, const Domain& d);

}  // namespace holocalc
