#include "holocalc/contour.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <string>

#include "holocalc/errors.hpp"

namespace holocalc {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double Domain::distance_to_complement(Complex z) const {
  double best = 0.0;
  for (const auto& d : disks)
    best = std::max(best, d.radius - std::abs(z - d.center));
  return best;
}

double Contour::length() const {
  double l = 0.0;
  for (const auto& c : circles) l += 2.0 * std::numbers::pi * c.radius;
  return l;
}

std::vector<EigenCluster> cluster_spectrum(const Vector& eigenvalues, double gap) {
  if (!(gap > 0.0)) throw PreconditionError("cluster_spectrum: gap must be positive");
  const std::size_t n = eigenvalues.size();
  std::vector<std::size_t> parent(n);
  for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  std::function<std::size_t(std::size_t)> find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(eigenvalues[i] - eigenvalues[j]) < gap) parent[find(i)] = find(j);

  std::vector<EigenCluster> clusters;
  std::vector<long> slot(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t root = find(i);
    if (slot[root] < 0) {
      slot[root] = long(clusters.size());
      clusters.emplace_back();
    }
    clusters[std::size_t(slot[root])].member_indices.push_back(i);
  }
  for (auto& c : clusters) {
    Complex sum = 0.0;
    for (auto idx : c.member_indices) sum += eigenvalues[idx];
    c.centroid = sum / double(c.member_indices.size());
    for (auto idx : c.member_indices)
      c.extent = std::max(c.extent, std::abs(eigenvalues[idx] - c.centroid));
  }
  // deterministic order: by centroid (real, then imaginary part)
  std::sort(clusters.begin(), clusters.end(), [](const EigenCluster& a, const EigenCluster& b) {
    if (a.centroid.real() != b.centroid.real()) return a.centroid.real() < b.centroid.real();
    return a.centroid.imag() < b.centroid.imag();
  });
  return clusters;
}

Contour build_cauchy_contour(const Vector& enclosed, const Vector& excluded,
                             const Domain& d, const ContourOptions& opts) {
  if (enclosed.empty())
    throw PreconditionError("build_cauchy_contour: enclosed set must be nonempty");
  if (d.disks.empty())
    throw PreconditionError("build_cauchy_contour: domain must be nonempty");
  for (const auto& k : enclosed)
    if (!d.contains(k))
      throw PreconditionError("build_cauchy_contour: enclosed point outside domain");

  double scale = 1.0;
  for (const auto& k : enclosed) scale = std::max(scale, std::abs(k));
  const double merge_tol = opts.merge_tol_rel * scale;
  const auto groups = cluster_spectrum(enclosed, std::max(merge_tol, 1e-300));

  for (const auto& e : excluded)
    for (const auto& k : enclosed)
      if (std::abs(e - k) <= opts.min_separation)
        throw PreconditionError("build_cauchy_contour: excluded point within "
                                "min_separation of the enclosed set");

  Contour gamma;
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    const auto& g = groups[gi];
    double margin = kInf;
    // distance to the nearest other group, hull to hull
    for (std::size_t gj = 0; gj < groups.size(); ++gj) {
      if (gj == gi) continue;
      const double hull_gap = std::abs(g.centroid - groups[gj].centroid) -
                              g.extent - groups[gj].extent;
      margin = std::min(margin, hull_gap / 3.0);
    }
    for (const auto& e : excluded) {
      const double cl = std::abs(e - g.centroid) - g.extent;
      margin = std::min(margin, cl / 2.0);
    }
    const double to_boundary = d.distance_to_complement(g.centroid) - g.extent;
    margin = std::min(margin, to_boundary / 2.0);

    if (!(margin > opts.min_separation))
      throw PreconditionError(
          "build_cauchy_contour: infeasible geometry around cluster at (" +
          std::to_string(g.centroid.real()) + ", " + std::to_string(g.centroid.imag()) +
          "); available margin " + std::to_string(margin));

    Circle c;
    c.center = g.centroid;
    c.radius = g.extent + margin;
    c.orientation = +1;
    c.nodes = opts.nodes_per_circle;
    gamma.circles.push_back(c);
  }

  // certify the separation from the curve to everything it must avoid
  double sep = kInf;
  for (const auto& c : gamma.circles) {
    for (const auto& k : enclosed)
      sep = std::min(sep, std::abs(std::abs(k - c.center) - c.radius));
    for (const auto& e : excluded)
      sep = std::min(sep, std::abs(std::abs(e - c.center) - c.radius));
    // min over the circle of the distance to the domain complement
    double clearance = 0.0;
    for (const auto& disk : d.disks)
      clearance = std::max(clearance,
                           disk.radius - std::abs(c.center - disk.center) - c.radius);
    sep = std::min(sep, clearance);
    for (const auto& other : gamma.circles) {
      if (&other == &c) continue;
      sep = std::min(sep, std::abs(c.center - other.center) - c.radius - other.radius);
    }
  }
  gamma.separation = sep;
  if (!(sep > opts.min_separation))
    throw PreconditionError("build_cauchy_contour: certified separation " +
                            std::to_string(sep) + " below minimum " +
                            std::to_string(opts.min_separation));
  return gamma;
}

int winding_number(const Contour& gamma, Complex z) {
  int w = 0;
  for (const auto& c : gamma.circles) {
    const double dist = std::abs(z - c.center);
    if (std::abs(dist - c.radius) <= 1e-12)
      throw PreconditionError("winding_number: point lies on the contour");
    if (dist < c.radius) w += c.orientation;
  }
  return w;
}

std::vector<QuadratureNode> quadrature_nodes(const Contour& gamma) {
  return quadrature_nodes(gamma, 0);
}

std::vector<QuadratureNode> quadrature_nodes(const Contour& gamma,
                                             std::size_t nodes_override) {
  std::vector<QuadratureNode> out;
  for (const auto& c : gamma.circles) {
    const std::size_t n = nodes_override ? nodes_override : c.nodes;
    if (n < 2) throw PreconditionError("quadrature_nodes: need at least 2 nodes");
    for (std::size_t j = 0; j < n; ++j) {
      const double th = 2.0 * std::numbers::pi * double(j) / double(n);
      const Complex e(std::cos(th), std::sin(th));
      out.push_back({c.center + c.radius * e,
                     Complex(double(c.orientation) * c.radius / double(n)) * e});
    }
  }
  return out;
}

ContourCheck check_contour(const Contour& gamma, const Vector& enclosed,
                           const Vector& excluded, const Domain& d) {
  ContourCheck res;
  auto fail = [&](const std::string& why) {
    res.valid = false;
    if (!res.detail.empty()) res.detail += "; ";
    res.detail += why;
  };
  for (const auto& k : enclosed)
    if (winding_number(gamma, k) != 1) fail("enclosed point has winding != 1");
  for (const auto& e : excluded)
    if (winding_number(gamma, e) != 0) fail("excluded point has winding != 0");
  for (const auto& node : quadrature_nodes(gamma))
    if (!d.contains(node.lambda)) {
      fail("contour node outside the domain");
      break;
    }
  for (std::size_t a = 0; a < gamma.circles.size(); ++a)
    for (std::size_t b = a + 1; b < gamma.circles.size(); ++b) {
      const auto& ca = gamma.circles[a];
      const auto& cb = gamma.circles[b];
      if (std::abs(ca.center - cb.center) <= ca.radius + cb.radius)
        fail("circles intersect");
    }
  if (!(gamma.separation > 0.0)) fail("nonpositive separation");
  return res;
}

}  // namespace holocalc
