#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tmesh/mesh.hpp"

namespace tmesh {

/// Closure of a marking: the least superset M~ of `marked` such that every
/// element of M~ has all strictly coarser elements of its patch in M~.
/// Patches are taken in the unmodified mesh. Result is sorted.
/// Throws StaleElementError if a marked element is not in the mesh.
std::vector<Element> closure(const Mesh& mesh, std::span<const Element> marked);

struct RefinementRecord {
  Mesh input;
  std::vector<Element> marked;
  std::vector<Element> closure;
  Mesh output;
  /// Number of subdivided elements per level.
  std::map<int, std::size_t> subdivisions_per_level;

  /// |output \ input|: every subdivided element contributes m children.
  std::size_t new_elements() const { return closure.size() * static_cast<std::size_t>(input.m()); }
};

struct RefineOptions {
  /// Verify admissibility of the input mesh first and throw
  /// NonAdmissibleMeshError if it fails.
  bool check_input = true;
};

/// refine(G, M) = subdiv(G, clos(G, M)), performed level by level ascending.
RefinementRecord refine(const Mesh& mesh, std::span<const Element> marked, const RefineOptions& options = {});

/// True iff every element of patch(G,K) has level >= level(K).
/// Throws StaleElementError if K is not in the mesh.
bool is_admissible_subdivision(const Mesh& mesh, const Element& k);

struct AdmissibilityViolation {
  enum class Stage { quasi_uniformity, replay };
  Stage stage;
  /// The element (or replayed tree node) whose patch is too coarse.
  Element element;
  /// The offending coarse element of the patch.
  Element coarser;

  std::string describe() const;
};

/// Either a certificate (the level-ascending subdivision replay that rebuilds
/// the mesh from the initial grid with only admissible steps) or the first
/// violation found.
struct AdmissibilityReport {
  bool admissible = false;
  std::vector<Element> replay;
  std::optional<AdmissibilityViolation> violation;
};

/// Two-stage check: local quasi-uniformity (necessary), then the replay
/// (sufficient).
AdmissibilityReport verify_admissible(const Mesh& mesh);

/// First pair (K, K') with K' in patch(G,K) and level(K') < level(K) - 1, if any.
std::optional<AdmissibilityViolation> check_quasi_uniformity(const Mesh& mesh);

class NonAdmissibleMeshError : public MeshError {
 public:
  explicit NonAdmissibleMeshError(AdmissibilityViolation v)
      : MeshError("mesh is not admissible: " + v.describe()), violation(std::move(v)) {}
  AdmissibilityViolation violation;
};

}  // namespace tmesh
