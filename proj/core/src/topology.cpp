#include "tmesh/topology.hpp"

#include <algorithm>
#include <mutex>
#include <set>
#include <unordered_map>

namespace tmesh {

ActiveRegion ActiveRegion::of(const MeshParams& params) {
  ActiveRegion r;
  for (std::size_t i = 0; i < 3; ++i) {
    const int half = (params.p[i] + 1) / 2;
    r.lo[i] = half;
    r.hi[i] = params.dims[i] - half;
  }
  return r;
}

bool ActiveRegion::contains(const Point3& p) const {
  for (int i = 0; i < 3; ++i) {
    const auto s = static_cast<std::size_t>(i);
    if (p[i] < MadicRational(lo[s]) || MadicRational(hi[s]) < p[i]) return false;
  }
  return true;
}

bool Skeleton::contains(const Point3& p) const {
  const int a = index_of(axis);
  auto it = faces.find(p[a]);
  if (it == faces.end()) return false;
  const auto o = other_axes(a);
  return it->second.contains(p[o[0]], p[o[1]]);
}

std::vector<MadicRational> Skeleton::coordinates() const {
  std::vector<MadicRational> out;
  out.reserve(faces.size());
  for (const auto& [c, _] : faces) out.push_back(c);
  return out;
}

std::vector<double> LocalIndexVector::to_double() const {
  std::vector<double> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.to_double());
  return out;
}

namespace {

struct LineKey {
  int axis;
  MadicRational a, b;
  bool operator==(const LineKey&) const = default;
};

struct LineKeyHash {
  std::size_t operator()(const LineKey& k) const {
    return (k.a.hash() * 31 + k.b.hash()) * 3 + static_cast<std::size_t>(k.axis);
  }
};

Element line_probe(const Mesh& mesh, int axis, const MadicRational& a, const MadicRational& b) {
  const auto o = other_axes(axis);
  Element probe;
  probe.lo[axis] = MadicRational(0);
  probe.hi[axis] = MadicRational(mesh.dims()[static_cast<std::size_t>(axis)]);
  probe.lo[o[0]] = probe.hi[o[0]] = a;
  probe.lo[o[1]] = probe.hi[o[1]] = b;
  return probe;
}

}  // namespace

struct Topology::Cache {
  std::mutex mutex;
  std::unordered_map<LineKey, std::vector<MadicRational>, LineKeyHash> lines;
  std::array<std::unique_ptr<Skeleton>, 3> skeletons;
};

Topology::~Topology() = default;

Topology::Topology(Mesh mesh) : mesh_(std::move(mesh)), region_(ActiveRegion::of(mesh_.params())),
                                cache_(std::make_unique<Cache>()) {
  if (region_.empty()) {
    throw StructuralError("active region is empty: the domain is too small for the degree");
  }
  for (int a = 0; a < 3; ++a) {
    auto& c = coords_[static_cast<std::size_t>(a)];
    c.reserve(mesh_.size() / 4 + 2);
    for (const auto& e : mesh_.elements()) {
      c.push_back(e.lo[a]);
      c.push_back(e.hi[a]);
    }
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    const auto s = static_cast<std::size_t>(a);
    active_ranks_[s] = {rank_of(a, MadicRational(region_.lo[s])), rank_of(a, MadicRational(region_.hi[s]))};
  }

  // Vertices of elements inside the active region, deduplicated by rank.
  std::set<std::array<int, 3>> verts;
  for (const auto& e : mesh_.elements()) {
    std::array<std::array<int, 2>, 3> r{};
    bool any = true;
    for (int a = 0; a < 3; ++a) {
      const auto s = static_cast<std::size_t>(a);
      r[s] = {rank_of(a, e.lo[a]), rank_of(a, e.hi[a])};
      if (r[s][1] < active_ranks_[s][0] || r[s][0] > active_ranks_[s][1]) any = false;
    }
    if (!any) continue;
    for (int i : r[0])
      for (int j : r[1])
        for (int k : r[2]) {
          if (i < active_ranks_[0][0] || i > active_ranks_[0][1]) continue;
          if (j < active_ranks_[1][0] || j > active_ranks_[1][1]) continue;
          if (k < active_ranks_[2][0] || k > active_ranks_[2][1]) continue;
          verts.insert({i, j, k});
        }
  }

  std::map<std::array<int, 3>, std::vector<int>> lines;  // (axis, rank, rank) -> ranks
  nodes_.reserve(verts.size());
  data_.reserve(verts.size());
  for (const auto& v : verts) {
    NodeData d;
    d.at = v;
    for (int a = 0; a < 3; ++a) {
      const auto o = other_axes(a);
      const std::array<int, 3> key{a, v[static_cast<std::size_t>(o[0])], v[static_cast<std::size_t>(o[1])]};
      auto it = lines.find(key);
      if (it == lines.end()) it = lines.emplace(key, line_ranks(a, key[1], key[2])).first;
      const auto& line = it->second;
      const int half = (degree()[static_cast<std::size_t>(a)] + 1) / 2;
      const auto pos = std::lower_bound(line.begin(), line.end(), v[static_cast<std::size_t>(a)]);
      const auto idx = pos - line.begin();
      if (pos == line.end() || *pos != v[static_cast<std::size_t>(a)] || idx < half ||
          idx + half >= static_cast<std::ptrdiff_t>(line.size())) {
        throw StructuralError("node lacks a local index vector along " +
                              std::string(axis_name(axis_from_index(a))));
      }
      d.knots[static_cast<std::size_t>(a)].assign(pos - half, pos + half + 1);
    }
    nodes_.push_back(Point3{{coordinate(0, v[0]), coordinate(1, v[1]), coordinate(2, v[2])}});
    data_.push_back(std::move(d));
  }
}

int Topology::rank_of(int axis, const MadicRational& value) const {
  const auto& c = coords_[static_cast<std::size_t>(axis)];
  auto it = std::lower_bound(c.begin(), c.end(), value);
  if (it == c.end() || *it != value) return -1;
  return static_cast<int>(it - c.begin());
}

std::vector<int> Topology::line_ranks(int axis, int rank_a, int rank_b) {
  const auto o = other_axes(axis);
  std::vector<int> out;
  mesh_.visit_touching(line_probe(mesh_, axis, coordinate(o[0], rank_a), coordinate(o[1], rank_b)),
                       [&](const Element& e) {
                         out.push_back(rank_of(axis, e.lo[axis]));
                         out.push_back(rank_of(axis, e.hi[axis]));
                       });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<std::size_t> Topology::node_index(const Point3& p) const {
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), p);
  if (it == nodes_.end() || *it != p) return std::nullopt;
  return static_cast<std::size_t>(it - nodes_.begin());
}

std::array<LocalIndexVector, 3> Topology::local_index_vectors(std::size_t node) const {
  std::array<LocalIndexVector, 3> out;
  for (int a = 0; a < 3; ++a) {
    auto& v = out[static_cast<std::size_t>(a)];
    v.axis = axis_from_index(a);
    for (int r : data_[node].knots[static_cast<std::size_t>(a)]) v.entries.push_back(coordinate(a, r));
  }
  return out;
}

BlendingFunction Topology::blending_function(std::size_t node) const {
  return {nodes_[node], local_index_vectors(node)};
}

std::vector<MadicRational> Topology::global_index_set(Axis axis, const MadicRational& a,
                                                      const MadicRational& b) const {
  const int ax = index_of(axis);
  const LineKey key{ax, a, b};
  {
    std::lock_guard lock(cache_->mutex);
    if (auto it = cache_->lines.find(key); it != cache_->lines.end()) return it->second;
  }
  std::vector<MadicRational> out;
  mesh_.visit_touching(line_probe(mesh_, ax, a, b), [&](const Element& e) {
    out.push_back(e.lo[ax]);
    out.push_back(e.hi[ax]);
  });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  std::lock_guard lock(cache_->mutex);
  cache_->lines.emplace(key, out);
  return out;
}

const Skeleton& Topology::skeleton(Axis axis) const {
  const int a = index_of(axis);
  std::lock_guard lock(cache_->mutex);
  auto& slot = cache_->skeletons[static_cast<std::size_t>(a)];
  if (slot) return *slot;
  const auto o = other_axes(a);
  std::map<int, std::vector<Rect<int>>> by_coord;
  for (const auto& e : mesh_.elements()) {
    const Rect<int> r{rank_of(o[0], e.lo[o[0]]), rank_of(o[0], e.hi[o[0]]), rank_of(o[1], e.lo[o[1]]),
                      rank_of(o[1], e.hi[o[1]])};
    by_coord[rank_of(a, e.lo[a])].push_back(r);
    by_coord[rank_of(a, e.hi[a])].push_back(r);
  }
  auto sk = std::make_unique<Skeleton>();
  sk->axis = axis;
  for (auto& [c, rects] : by_coord) {
    // Rank compression is order preserving, so the canonical form carries over.
    const RectUnion2D<int> u(std::move(rects));
    std::vector<Rect<MadicRational>> mapped;
    for (const auto& r : u.rects()) {
      mapped.push_back({coordinate(o[0], r.u0), coordinate(o[0], r.u1), coordinate(o[1], r.v0),
                        coordinate(o[1], r.v1)});
    }
    sk->faces.emplace(coordinate(a, c), PlaneUnion::from_canonical(std::move(mapped)));
  }
  slot = std::move(sk);
  return *slot;
}

std::array<Skeleton, 3> skeletons(const Mesh& mesh) {
  // Skeletons exist for any mesh, including ones without active nodes.
  std::array<Skeleton, 3> out;
  for (int a = 0; a < 3; ++a) {
    const auto o = other_axes(a);
    std::map<MadicRational, std::vector<Rect<MadicRational>>> by_coord;
    for (const auto& e : mesh.elements()) {
      const Rect<MadicRational> r{e.lo[o[0]], e.hi[o[0]], e.lo[o[1]], e.hi[o[1]]};
      by_coord[e.lo[a]].push_back(r);
      by_coord[e.hi[a]].push_back(r);
    }
    auto& sk = out[static_cast<std::size_t>(a)];
    sk.axis = axis_from_index(a);
    for (auto& [c, rects] : by_coord) sk.faces.emplace(c, PlaneUnion(std::move(rects)));
  }
  return out;
}

std::vector<MadicRational> global_index_set(const Mesh& mesh, Axis axis, const MadicRational& a,
                                            const MadicRational& b) {
  const int ax = index_of(axis);
  std::vector<MadicRational> out;
  mesh.visit_touching(line_probe(mesh, ax, a, b), [&](const Element& e) {
    out.push_back(e.lo[ax]);
    out.push_back(e.hi[ax]);
  });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Point3> active_nodes(const Mesh& mesh) {
  const Topology topo(mesh);
  return {topo.active_nodes().begin(), topo.active_nodes().end()};
}

std::array<LocalIndexVector, 3> local_index_vectors(const Mesh& mesh, const Point3& node) {
  const Topology topo(mesh);
  auto i = topo.node_index(node);
  if (!i) throw StructuralError("not an active node: " + node.to_string());
  return topo.local_index_vectors(*i);
}

}  // namespace tmesh
