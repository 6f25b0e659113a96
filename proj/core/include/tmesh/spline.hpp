#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "tmesh/topology.hpp"

namespace tmesh {

/// Degree-p B-spline on p+2 strictly increasing knots, by Cox-de Boor.
/// Right-continuous inside the support, left-continuous at the last knot
/// (which makes it 0 there). Throws std::invalid_argument on bad knots.
double bspline_eval(std::span<const double> knots, double t);
double bspline_eval(const LocalIndexVector& x, double t);

double blending_eval(const BlendingFunction& b, const std::array<double, 3>& point);

/// Each vector's knots inside the other's closed range are knots of the
/// other. Throws std::invalid_argument on mismatched degree or axis.
bool overlap(const LocalIndexVector& x, const LocalIndexVector& y);
/// Same test on sorted coordinate ranks.
bool overlap_ranks(std::span<const int> x, std::span<const int> y);

/// At least two of the three per-axis overlap tests pass.
bool partial_overlap(const Topology& topo, std::size_t v, std::size_t w);
bool partial_overlap(const BlendingFunction& v, const BlendingFunction& w);

/// Support boxes intersect with positive volume.
bool supports_overlap(const Topology& topo, std::size_t v, std::size_t w);

/// All node pairs (v < w, by index) whose supports overlap with positive
/// volume, via a sweep along x. Sorted.
std::vector<std::pair<std::size_t, std::size_t>> overlapping_pairs(const Topology& topo);
/// Quadratic reference enumeration of the same set.
std::vector<std::pair<std::size_t, std::size_t>> overlapping_pairs_brute_force(const Topology& topo);

struct DcResult {
  bool dual_compatible = true;
  /// Lexicographically smallest failing pair (v < w) as node points.
  std::optional<std::pair<Point3, Point3>> witness;
  std::size_t pairs_checked = 0;
};

DcResult is_dual_compatible(const Topology& topo, unsigned threads = 1);
DcResult is_dual_compatible(const Mesh& mesh, unsigned threads = 1);

}  // namespace tmesh
