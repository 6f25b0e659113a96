#include "tmesh/mesh.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <map>
#include <unordered_map>

namespace tmesh {

void MeshParams::validate() const {
  if (m < 2) throw MeshError("grading parameter m must be >= 2");
  for (int d : p) {
    if (d < 3 || d % 2 == 0) throw MeshError("polynomial degrees must be odd and >= 3");
  }
  for (int d : dims) {
    if (d < 1) throw MeshError("domain dimensions must be >= 1");
  }
}

Element unit_cube(int i, int j, int k) {
  Element e;
  e.lo = Point3{{MadicRational(i), MadicRational(j), MadicRational(k)}};
  e.hi = Point3{{MadicRational(i + 1), MadicRational(j + 1), MadicRational(k + 1)}};
  e.level = 0;
  return e;
}

Mesh Mesh::build(const MeshParams& params, std::vector<Element> elements) {
  auto impl = std::make_shared<Impl>();
  impl->params = params;
  std::sort(elements.begin(), elements.end());
  impl->lookup.reserve(elements.size() * 2);
  for (const auto& e : elements) {
    impl->lookup.insert(e);
    impl->max_level = std::max(impl->max_level, e.level);
  }
  impl->elements = std::move(elements);
  return Mesh(std::move(impl));
}

Mesh Mesh::initial(const Dims& dims, const Degree& p, int m) {
  MeshParams params{m, p, dims};
  params.validate();
  std::vector<Element> elements;
  elements.reserve(static_cast<std::size_t>(dims[0]) * dims[1] * dims[2]);
  for (int i = 0; i < dims[0]; ++i)
    for (int j = 0; j < dims[1]; ++j)
      for (int k = 0; k < dims[2]; ++k) elements.push_back(unit_cube(i, j, k));
  return build(params, std::move(elements));
}

Mesh Mesh::from_elements(const MeshParams& params, std::vector<Element> elements) {
  params.validate();
  const int m = params.m;
  std::map<int, std::unordered_set<Element, ElementHash>> by_level;
  for (const auto& e : elements) {
    if (e.level < 0) throw MeshError("negative element level: " + e.to_string());
    const Vec3 size = size_of_level(e.level, m);
    for (int i = 0; i < 3; ++i) {
      if (e.hi[i] - e.lo[i] != size[static_cast<std::size_t>(i)])
        throw MeshError("element side lengths do not match its level: " + e.to_string());
      if (e.lo[i].exponent() > size[static_cast<std::size_t>(i)].exponent())
        throw MeshError("element is not aligned to the refinement tree: " + e.to_string());
      if (!e.lo[i].is_integer() && e.lo[i].base() != m)
        throw MeshError("element coordinate uses a foreign base: " + e.to_string());
      if (e.lo[i] < MadicRational(0) || MadicRational(params.dims[static_cast<std::size_t>(i)]) < e.hi[i])
        throw MeshError("element lies outside the domain: " + e.to_string());
    }
    if (!by_level[e.level].insert(e).second) throw MeshError("duplicate element: " + e.to_string());
  }
  // Collapse complete sibling groups level by level; a node that is both an
  // element and the parent of elements means overlapping interiors.
  const int top = by_level.empty() ? 0 : by_level.rbegin()->first;
  for (int level = top; level >= 1; --level) {
    auto it = by_level.find(level);
    if (it == by_level.end()) continue;
    std::unordered_map<Element, int, ElementHash> groups;
    for (const auto& e : it->second) ++groups[parent(e, m)];
    auto& coarser = by_level[level - 1];
    for (const auto& [par, count] : groups) {
      if (count != m) throw MeshError("elements do not tile their parent: " + par.to_string());
      if (!coarser.insert(par).second) throw MeshError("overlapping elements inside " + par.to_string());
    }
  }
  const auto& roots = by_level[0];
  if (roots.size() != static_cast<std::size_t>(params.dims[0]) * params.dims[1] * params.dims[2]) {
    throw MeshError("elements do not cover the domain");
  }
  return build(params, std::move(elements));
}

template <class Prune, class Visit>
void Mesh::descend(const Element& node, const Prune& prune, int max_level, const Visit& visit) const {
  if (!prune(node)) return;
  if (impl_->lookup.count(node) != 0) {
    if (node.level <= max_level) visit(node);
    return;
  }
  if (node.level + 1 > max_level) return;
  for (const auto& c : child(node, impl_->params.m)) descend(c, prune, max_level, visit);
}

template <class Prune, class Visit>
void Mesh::traverse(const std::array<int, 3>& lo, const std::array<int, 3>& hi, const Prune& prune, int max_level,
                    const Visit& visit) const {
  for (int i = lo[0]; i <= hi[0]; ++i)
    for (int j = lo[1]; j <= hi[1]; ++j)
      for (int k = lo[2]; k <= hi[2]; ++k) descend(unit_cube(i, j, k), prune, max_level, visit);
}

namespace {

// Root cube index range covering [lo, hi] (inclusive), widened by one cube to
// absorb rounding in the floating-point estimate; pruning is exact.
std::array<std::array<int, 3>, 2> root_range(const std::array<double, 3>& lo, const std::array<double, 3>& hi,
                                             const Dims& dims) {
  std::array<std::array<int, 3>, 2> r;
  for (std::size_t i = 0; i < 3; ++i) {
    r[0][i] = std::max(0, static_cast<int>(std::floor(lo[i])) - 1);
    r[1][i] = std::min(dims[i] - 1, static_cast<int>(std::ceil(hi[i])) + 1);
  }
  return r;
}

}  // namespace

void Mesh::visit_patch(const Element& k, int max_level, const std::function<void(const Element&)>& fn) const {
  const Environment env = environment_of(k, degree(), m());
  std::array<double, 3> lo{}, hi{};
  for (int i = 0; i < 3; ++i) {
    lo[static_cast<std::size_t>(i)] = env.lo2[static_cast<std::size_t>(i)].to_double() / 2;
    hi[static_cast<std::size_t>(i)] = env.hi2[static_cast<std::size_t>(i)].to_double() / 2;
  }
  const auto range = root_range(lo, hi, dims());
  traverse(
      range[0], range[1], [&](const Element& node) { return env.meets(node); }, max_level, fn);
}

std::vector<Element> Mesh::patch(const Element& k) const {
  std::vector<Element> out;
  visit_patch(k, INT_MAX, [&](const Element& e) { out.push_back(e); });
  std::sort(out.begin(), out.end());
  return out;
}

void Mesh::visit_touching(const Element& box, const std::function<void(const Element&)>& fn) const {
  const auto range = root_range(box.lo.to_double(), box.hi.to_double(), dims());
  traverse(
      range[0], range[1], [&](const Element& node) { return node.touches(box); }, INT_MAX, fn);
}

std::optional<Element> Mesh::locate(const Point3& point) const {
  Element probe;
  probe.lo = point;
  probe.hi = point;
  std::optional<Element> best;
  visit_touching(probe, [&](const Element& e) {
    if (!best || e < *best) best = e;
  });
  return best;
}

Mesh Mesh::subdivide(const Element& k) const { return subdivide_many(std::span<const Element>(&k, 1)); }

Mesh Mesh::subdivide_many(std::span<const Element> marked) const {
  if (marked.empty()) return *this;
  std::unordered_set<Element, ElementHash> selected;
  for (const auto& e : marked) {
    if (!contains(e)) throw StaleElementError(e);
    selected.insert(e);
  }
  std::vector<Element> next;
  next.reserve(size() + selected.size() * static_cast<std::size_t>(m() - 1));
  for (const auto& e : impl_->elements) {
    if (selected.count(e) == 0) next.push_back(e);
  }
  for (const auto& e : selected) {
    for (auto& c : child(e, m())) next.push_back(std::move(c));
  }
  return build(impl_->params, std::move(next));
}

bool Mesh::operator==(const Mesh& other) const {
  return impl_ == other.impl_ || (params() == other.params() && impl_->elements == other.impl_->elements);
}

}  // namespace tmesh
