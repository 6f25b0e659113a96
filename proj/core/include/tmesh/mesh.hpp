#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "tmesh/element.hpp"

namespace tmesh {

class MeshError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an element handle does not belong to the mesh it is used with.
class StaleElementError : public MeshError {
 public:
  explicit StaleElementError(const Element& e)
      : MeshError("element is not part of the mesh: " + e.to_string()), element(e) {}
  Element element;
};

struct MeshParams {
  int m = 2;
  Degree p{3, 3, 3};
  Dims dims{1, 1, 1};

  /// Throws MeshError unless m >= 2, p odd and >= 3, dims >= 1.
  void validate() const;
  bool operator==(const MeshParams&) const = default;
};

/// Immutable partition of [0,X]x[0,Y]x[0,Z] into boxes obtained from the unit
/// cubes of the initial grid by cyclic m-fold subdivision. Elements are kept
/// sorted by (lo, level). Copies share the element storage.
class Mesh {
 public:
  /// The tensor-product grid of unit cubes.
  static Mesh initial(const Dims& dims, const Degree& p, int m);

  /// Builds a mesh from an arbitrary element list and checks every invariant:
  /// sizes match levels, boxes are aligned to the refinement tree, interiors are
  /// disjoint and the union is the whole domain. Throws MeshError.
  static Mesh from_elements(const MeshParams& params, std::vector<Element> elements);

  const MeshParams& params() const { return impl_->params; }
  int m() const { return impl_->params.m; }
  const Degree& degree() const { return impl_->params.p; }
  const Dims& dims() const { return impl_->params.dims; }

  std::span<const Element> elements() const { return impl_->elements; }
  std::size_t size() const { return impl_->elements.size(); }
  bool contains(const Element& e) const { return impl_->lookup.count(e) != 0; }
  int max_level() const { return impl_->max_level; }

  /// Elements meeting the open environment U(K); K need not belong to the mesh.
  std::vector<Element> patch(const Element& k) const;

  /// Calls `fn` for every element with level <= max_level that meets U(K).
  /// Only the coarse part of the refinement tree is traversed.
  void visit_patch(const Element& k, int max_level, const std::function<void(const Element&)>& fn) const;

  /// Calls `fn` for every element whose closed box meets the closed `box`.
  void visit_touching(const Element& box, const std::function<void(const Element&)>& fn) const;

  /// The element whose closed box contains `point`; ties go to the smallest lo.
  std::optional<Element> locate(const Point3& point) const;

  /// G \ {K} u child(K). Throws StaleElementError if K is not in the mesh.
  Mesh subdivide(const Element& k) const;
  /// Subdivides every element of `marked` (set semantics, order irrelevant).
  Mesh subdivide_many(std::span<const Element> marked) const;

  bool operator==(const Mesh& other) const;

 private:
  struct Impl {
    MeshParams params;
    std::vector<Element> elements;
    std::unordered_set<Element, ElementHash> lookup;
    int max_level = 0;
  };

  explicit Mesh(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  static Mesh build(const MeshParams& params, std::vector<Element> elements);

  template <class Prune, class Visit>
  void descend(const Element& node, const Prune& prune, int max_level, const Visit& visit) const;
  template <class Prune, class Visit>
  void traverse(const std::array<int, 3>& lo, const std::array<int, 3>& hi, const Prune& prune, int max_level,
                const Visit& visit) const;

  std::shared_ptr<const Impl> impl_;
};

/// Unit cube [i,i+1]x[j,j+1]x[k,k+1] of the initial grid.
Element unit_cube(int i, int j, int k);

}  // namespace tmesh
