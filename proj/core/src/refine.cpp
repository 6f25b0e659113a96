#include "tmesh/refine.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

namespace tmesh {

std::vector<Element> closure(const Mesh& mesh, std::span<const Element> marked) {
  std::unordered_set<Element, ElementHash> result;
  std::deque<Element> worklist;
  for (const auto& e : marked) {
    if (!mesh.contains(e)) throw StaleElementError(e);
    if (result.insert(e).second) worklist.push_back(e);
  }
  while (!worklist.empty()) {
    const Element k = worklist.front();
    worklist.pop_front();
    if (k.level == 0) continue;
    mesh.visit_patch(k, k.level - 1, [&](const Element& coarser) {
      if (result.insert(coarser).second) worklist.push_back(coarser);
    });
  }
  std::vector<Element> out(result.begin(), result.end());
  std::sort(out.begin(), out.end());
  return out;
}

RefinementRecord refine(const Mesh& mesh, std::span<const Element> marked, const RefineOptions& options) {
  if (options.check_input) {
    auto report = verify_admissible(mesh);
    if (!report.admissible) throw NonAdmissibleMeshError(*report.violation);
  }
  RefinementRecord record{mesh, std::vector<Element>(marked.begin(), marked.end()), closure(mesh, marked), mesh, {}};
  std::sort(record.marked.begin(), record.marked.end());
  record.marked.erase(std::unique(record.marked.begin(), record.marked.end()), record.marked.end());

  std::map<int, std::vector<Element>> by_level;
  for (const auto& e : record.closure) by_level[e.level].push_back(e);
  Mesh current = mesh;
  for (const auto& [level, group] : by_level) {
    current = current.subdivide_many(group);
    record.subdivisions_per_level[level] = group.size();
  }
  record.output = std::move(current);
  return record;
}

bool is_admissible_subdivision(const Mesh& mesh, const Element& k) {
  if (!mesh.contains(k)) throw StaleElementError(k);
  if (k.level == 0) return true;
  bool ok = true;
  mesh.visit_patch(k, k.level - 1, [&](const Element&) { ok = false; });
  return ok;
}

std::string AdmissibilityViolation::describe() const {
  const char* what = stage == Stage::quasi_uniformity ? "local quasi-uniformity fails" : "inadmissible subdivision";
  return std::string(what) + ": " + element.to_string() + " has coarser patch element " + coarser.to_string();
}

namespace {

std::optional<Element> coarsest_offender(const Mesh& mesh, const Element& k, int max_level) {
  std::optional<Element> found;
  mesh.visit_patch(k, max_level, [&](const Element& e) {
    if (!found || e < *found) found = e;
  });
  return found;
}

}  // namespace

std::optional<AdmissibilityViolation> check_quasi_uniformity(const Mesh& mesh) {
  for (const auto& k : mesh.elements()) {
    if (k.level < 2) continue;
    if (auto bad = coarsest_offender(mesh, k, k.level - 2)) {
      return AdmissibilityViolation{AdmissibilityViolation::Stage::quasi_uniformity, k, *bad};
    }
  }
  return std::nullopt;
}

AdmissibilityReport verify_admissible(const Mesh& mesh) {
  AdmissibilityReport report;
  if (auto v = check_quasi_uniformity(mesh)) {
    report.violation = std::move(v);
    return report;
  }
  // Every proper ancestor of an element was subdivided exactly once.
  std::unordered_set<Element, ElementHash> interior;
  for (const auto& e : mesh.elements()) {
    Element node = e;
    while (node.level > 0) {
      node = parent(node, mesh.m());
      if (!interior.insert(node).second) break;
    }
  }
  std::vector<Element> replay(interior.begin(), interior.end());
  std::sort(replay.begin(), replay.end(), [](const Element& a, const Element& b) {
    if (a.level != b.level) return a.level < b.level;
    return a < b;
  });
  // When a level-j node is subdivided in the replay, the coarser elements of
  // the intermediate mesh are exactly the final elements of level < j.
  for (const auto& node : replay) {
    if (node.level == 0) continue;
    if (auto bad = coarsest_offender(mesh, node, node.level - 1)) {
      report.violation = AdmissibilityViolation{AdmissibilityViolation::Stage::replay, node, *bad};
      return report;
    }
  }
  report.admissible = true;
  report.replay = std::move(replay);
  return report;
}

}  // namespace tmesh
