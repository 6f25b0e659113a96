#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "tmesh/mesh.hpp"
#include "tmesh/rect_union.hpp"

namespace tmesh {

/// Raised when a node lacks the knots for its local index vectors, or when
/// the active region of a mesh is empty.
class StructuralError : public MeshError {
 public:
  using MeshError::MeshError;
};

/// [(p_i+1)/2, dims_i - (p_i+1)/2] per axis; integer bounds.
struct ActiveRegion {
  std::array<int, 3> lo{};
  std::array<int, 3> hi{};

  static ActiveRegion of(const MeshParams& params);
  bool empty() const { return lo[0] > hi[0] || lo[1] > hi[1] || lo[2] > hi[2]; }
  bool contains(const Point3& p) const;
};

using PlaneUnion = RectUnion2D<MadicRational>;

/// All closed element faces orthogonal to `axis`, grouped by coordinate. The
/// rectangles live in the plane of the two other axes in increasing order,
/// i.e. (y,z), (x,z) or (x,y).
struct Skeleton {
  Axis axis = Axis::x;
  std::map<MadicRational, PlaneUnion> faces;

  bool contains(const Point3& p) const;
  std::vector<MadicRational> coordinates() const;
};

/// p+2 consecutive entries of a global index set, centred on a node.
struct LocalIndexVector {
  Axis axis = Axis::x;
  std::vector<MadicRational> entries;

  int degree() const { return static_cast<int>(entries.size()) - 2; }
  const MadicRational& anchor() const { return entries[entries.size() / 2]; }
  const MadicRational& front() const { return entries.front(); }
  const MadicRational& back() const { return entries.back(); }
  std::vector<double> to_double() const;
  bool operator==(const LocalIndexVector&) const = default;
};

/// B_v = N_x(v) * N_y(v) * N_z(v), supported on the product of the knot ranges.
struct BlendingFunction {
  Point3 anchor;
  std::array<LocalIndexVector, 3> vectors;

  Point3 support_lo() const { return {{vectors[0].front(), vectors[1].front(), vectors[2].front()}}; }
  Point3 support_hi() const { return {{vectors[0].back(), vectors[1].back(), vectors[2].back()}}; }
};

/// Combinatorial view of a mesh: every element coordinate is replaced by its
/// rank in the sorted list of distinct element coordinates of that axis, so
/// knots, nodes and supports compare as plain integers.
///
/// Construction enumerates the active nodes and their local index vectors and
/// throws StructuralError if the active region is empty. Queries are
/// thread-safe.
class Topology {
 public:
  struct NodeData {
    std::array<int, 3> at{};
    /// Local index vectors as coordinate ranks, p_i + 2 entries each.
    std::array<std::vector<int>, 3> knots;

    int support_lo(int axis) const { return knots[static_cast<std::size_t>(axis)].front(); }
    int support_hi(int axis) const { return knots[static_cast<std::size_t>(axis)].back(); }
  };

  explicit Topology(Mesh mesh);
  ~Topology();
  Topology(const Topology&) = delete;
  Topology& operator=(const Topology&) = delete;

  const Mesh& mesh() const { return mesh_; }
  const Degree& degree() const { return mesh_.degree(); }
  const ActiveRegion& active_region() const { return region_; }

  std::span<const MadicRational> coordinates(int axis) const { return coords_[static_cast<std::size_t>(axis)]; }
  const MadicRational& coordinate(int axis, int rank) const {
    return coords_[static_cast<std::size_t>(axis)][static_cast<std::size_t>(rank)];
  }
  /// Rank of an element coordinate, or -1.
  int rank_of(int axis, const MadicRational& value) const;
  /// Rank range [first, last] of coordinates inside the active region.
  std::array<int, 2> active_ranks(int axis) const { return active_ranks_[static_cast<std::size_t>(axis)]; }

  /// Active nodes in lexicographic order.
  std::span<const Point3> active_nodes() const { return nodes_; }
  std::size_t node_count() const { return nodes_.size(); }
  std::optional<std::size_t> node_index(const Point3& p) const;
  const NodeData& node_data(std::size_t i) const { return data_[i]; }

  std::array<LocalIndexVector, 3> local_index_vectors(std::size_t node) const;
  BlendingFunction blending_function(std::size_t node) const;

  /// X(a,b) along `axis` through the line whose other two coordinates are
  /// (a, b) in increasing axis order. Memoized.
  std::vector<MadicRational> global_index_set(Axis axis, const MadicRational& a, const MadicRational& b) const;

  /// Computed on first use and cached.
  const Skeleton& skeleton(Axis axis) const;

 private:
  std::vector<int> line_ranks(int axis, int rank_a, int rank_b);

  Mesh mesh_;
  ActiveRegion region_;
  std::array<std::vector<MadicRational>, 3> coords_;
  std::array<std::array<int, 2>, 3> active_ranks_{};
  std::vector<Point3> nodes_;
  std::vector<NodeData> data_;

  struct Cache;
  std::unique_ptr<Cache> cache_;
};

std::array<Skeleton, 3> skeletons(const Mesh& mesh);
std::vector<MadicRational> global_index_set(const Mesh& mesh, Axis axis, const MadicRational& a,
                                            const MadicRational& b);
std::vector<Point3> active_nodes(const Mesh& mesh);
/// Throws StructuralError if `node` is not an active node of the mesh.
std::array<LocalIndexVector, 3> local_index_vectors(const Mesh& mesh, const Point3& node);

}  // namespace tmesh
