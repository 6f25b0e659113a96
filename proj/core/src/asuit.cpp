#include "tmesh/asuit.hpp"

#include <algorithm>

#include "parallel.hpp"

namespace tmesh {

namespace {

using IntUnion = RectUnion2D<int>;
using Intervals = std::vector<std::pair<int, int>>;

// Slice perturbation at rank q, in plane ranks. A node whose closed support
// reaches the slice belongs to the node slice set exactly when q is one of its
// knots along `axis`: its knots are consecutive members of the global index
// set of its line.
IntUnion slice_ranks(const Topology& topo, int axis, int q) {
  const auto o = other_axes(axis);
  std::vector<Rect<int>> on, off;
  for (std::size_t i = 0; i < topo.node_count(); ++i) {
    const auto& d = topo.node_data(i);
    if (q < d.support_lo(axis) || d.support_hi(axis) < q) continue;
    const Rect<int> r{d.support_lo(o[0]), d.support_hi(o[0]), d.support_lo(o[1]), d.support_hi(o[1])};
    const auto& k = d.knots[static_cast<std::size_t>(axis)];
    (std::binary_search(k.begin(), k.end(), q) ? on : off).push_back(r);
  }
  if (on.empty() || off.empty()) return {};
  const auto a0 = topo.active_ranks(o[0]);
  const auto a1 = topo.active_ranks(o[1]);
  const Rect<int> clip{a0[0], a0[1], a1[0], a1[1]};
  return IntUnion(std::move(on)).intersect(clip).intersect(IntUnion(std::move(off)));
}

PlaneUnion to_values(const Topology& topo, int axis, const IntUnion& u) {
  const auto o = other_axes(axis);
  std::vector<Rect<MadicRational>> out;
  out.reserve(u.rects().size());
  for (const auto& r : u.rects()) {
    out.push_back({topo.coordinate(o[0], r.u0), topo.coordinate(o[0], r.u1), topo.coordinate(o[1], r.v0),
                   topo.coordinate(o[1], r.v1)});
  }
  return PlaneUnion::from_canonical(std::move(out));
}

// Slices per axis, indexed by rank; empty unions where nothing is perturbed.
using RankRegion = std::vector<std::pair<int, IntUnion>>;

RankRegion region_ranks(const Topology& topo, int axis, unsigned threads) {
  const auto range = topo.active_ranks(axis);
  const std::size_t n = static_cast<std::size_t>(range[1] - range[0] + 1);
  std::vector<IntUnion> slices(n);
  detail::parallel_for(n, threads, [&](std::size_t begin, std::size_t end, unsigned) {
    for (std::size_t i = begin; i < end; ++i) slices[i] = slice_ranks(topo, axis, range[0] + static_cast<int>(i));
  });
  RankRegion out;
  for (std::size_t i = 0; i < n; ++i)
    if (!slices[i].empty()) out.emplace_back(range[0] + static_cast<int>(i), std::move(slices[i]));
  return out;
}

// Section of a slice union of `axis` at {fixed_axis = value}, as intervals
// along the remaining axis.
Intervals section(const IntUnion& u, int axis, int fixed_axis, int value) {
  return other_axes(axis)[0] == fixed_axis ? u.cross_section(value) : u.cross_section_v(value);
}

}  // namespace

std::string AsWitness::describe() const {
  return std::string(axis_name(first)) + "=" + first_coord.to_string() + ", " + axis_name(second) + "=" +
         second_coord.to_string() + ", " + axis_name(free_axis) + " in [" + lo.to_string() + ", " + hi.to_string() +
         "]";
}

std::vector<std::size_t> node_slice_set(const Topology& topo, Axis axis, const MadicRational& q) {
  const int a = index_of(axis);
  const Skeleton& sk = topo.skeleton(axis);
  std::vector<std::size_t> out;
  if (sk.faces.find(q) == sk.faces.end()) return out;
  for (std::size_t i = 0; i < topo.node_count(); ++i) {
    Point3 p = topo.active_nodes()[i];
    p[a] = q;
    if (sk.contains(p)) out.push_back(i);
  }
  return out;
}

PlaneUnion slice_perturbation(const Topology& topo, Axis axis, const MadicRational& q) {
  const int a = index_of(axis);
  const int r = topo.rank_of(a, q);
  const auto range = topo.active_ranks(a);
  if (r < range[0] || r > range[1]) return {};
  return to_values(topo, a, slice_ranks(topo, a, r));
}

std::array<PerturbedRegion, 3> perturbed_regions(const Topology& topo, unsigned threads) {
  std::array<PerturbedRegion, 3> out;
  for (int a = 0; a < 3; ++a) {
    auto& region = out[static_cast<std::size_t>(a)];
    region.axis = axis_from_index(a);
    for (const auto& [q, u] : region_ranks(topo, a, threads)) region.slices.emplace(topo.coordinate(a, q), to_values(topo, a, u));
  }
  return out;
}

AsResult is_analysis_suitable(const Topology& topo, unsigned threads) {
  std::array<RankRegion, 3> regions;
  for (int a = 0; a < 3; ++a) regions[static_cast<std::size_t>(a)] = region_ranks(topo, a, threads);

  constexpr std::array<std::array<int, 2>, 3> pairs{{{0, 1}, {1, 2}, {2, 0}}};
  for (const auto& [a1, a2] : pairs) {
    const int f = 3 - a1 - a2;
    for (const auto& [q, u1] : regions[static_cast<std::size_t>(a1)]) {
      for (const auto& [r, u2] : regions[static_cast<std::size_t>(a2)]) {
        const Intervals s1 = section(u1, a1, a2, r);
        if (s1.empty()) continue;
        const Intervals s2 = section(u2, a2, a1, q);
        std::size_t i = 0, j = 0;
        while (i < s1.size() && j < s2.size()) {
          const int lo = std::max(s1[i].first, s2[j].first);
          const int hi = std::min(s1[i].second, s2[j].second);
          if (lo <= hi) {
            AsResult res;
            res.analysis_suitable = false;
            res.witness = AsWitness{axis_from_index(a1), axis_from_index(a2), topo.coordinate(a1, q),
                                    topo.coordinate(a2, r), axis_from_index(f), topo.coordinate(f, lo),
                                    topo.coordinate(f, hi), lo < hi};
            return res;
          }
          (s1[i].second < s2[j].second) ? ++i : ++j;
        }
      }
    }
  }
  return {};
}

AsResult is_analysis_suitable(const Mesh& mesh, unsigned threads) {
  const Topology topo(mesh);
  return is_analysis_suitable(topo, threads);
}

CrossCheck cross_check(const Topology& topo, unsigned threads) {
  return {is_analysis_suitable(topo, threads), is_dual_compatible(topo, threads)};
}

}  // namespace tmesh
