#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tmesh/spline.hpp"
#include "tmesh/topology.hpp"

namespace tmesh {

/// Nonempty slice perturbations of one axis, keyed by slice coordinate.
struct PerturbedRegion {
  Axis axis = Axis::x;
  std::map<MadicRational, PlaneUnion> slices;

  bool empty() const { return slices.empty(); }
};

/// Indices of active nodes v with (q, v_b, v_c) in the skeleton of `axis`,
/// decided by skeleton membership.
std::vector<std::size_t> node_slice_set(const Topology& topo, Axis axis, const MadicRational& q);

/// Active-region slice at q, intersected with the union of support
/// cross-sections over the node slice set and with the union over the
/// remaining active nodes. Empty if either node set contributes nothing.
PlaneUnion slice_perturbation(const Topology& topo, Axis axis, const MadicRational& q);

std::array<PerturbedRegion, 3> perturbed_regions(const Topology& topo, unsigned threads = 1);

/// First intersection of two perturbed regions: the points
/// {first = first_coord, second = second_coord, free in [lo, hi]}.
struct AsWitness {
  Axis first = Axis::x;
  Axis second = Axis::y;
  MadicRational first_coord;
  MadicRational second_coord;
  Axis free_axis = Axis::z;
  MadicRational lo;
  MadicRational hi;
  /// Diagnostic only: the intersection interval has positive length.
  bool positive_measure = false;

  std::string describe() const;
};

struct AsResult {
  bool analysis_suitable = true;
  std::optional<AsWitness> witness;
};

/// Closed-set semantics. Axis pairs are scanned in the order (x,y), (y,z),
/// (z,x), then by ascending slice coordinates.
AsResult is_analysis_suitable(const Topology& topo, unsigned threads = 1);
AsResult is_analysis_suitable(const Mesh& mesh, unsigned threads = 1);

/// Both verdicts on one mesh; `agree` is false whenever the two checkers
/// split, which the equivalence of the two notions says must not happen.
struct CrossCheck {
  AsResult as;
  DcResult dc;
  bool agree() const { return as.analysis_suitable == dc.dual_compatible; }
};

CrossCheck cross_check(const Topology& topo, unsigned threads = 1);

}  // namespace tmesh
