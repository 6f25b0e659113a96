#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tmesh/refine.hpp"

namespace tmesh {

struct ComplexityConstants {
  Degree p{};
  int m = 2;
  double d1 = 0, d2 = 0, d3 = 0;
  double C = 0;
  /// Bound on the patch radius: D(k) <= m^{-k/3} p_tilde.
  std::array<double, 3> p_tilde{};
  /// Half the size bound of a one level coarser element, scaled by m^{k/3}.
  std::array<double, 3> s{};

  std::array<double, 3> d() const { return {d1, d2, d3}; }
};

ComplexityConstants constants(const Degree& p, int m);

struct StepRecord {
  std::size_t step = 0;
  std::size_t marked = 0;
  std::size_t closure_size = 0;
  /// Children created in this step, m * closure_size.
  std::size_t new_elements = 0;
  /// |G_j \ G_0| after this step.
  std::size_t cumulative_new = 0;
  int max_level = 0;
  double seconds = 0.0;
  /// cumulative_new / (marked elements so far).
  double ratio = 0.0;
};

struct ExperimentLog {
  MeshParams params;
  std::size_t initial_elements = 0;
  std::vector<StepRecord> steps;
  std::optional<std::uint64_t> seed;
  /// Elements subdivided over the whole sequence.
  std::size_t subdivided = 0;

  std::size_t total_marked() const;
  /// |G_J \ G_0|.
  std::size_t total_new() const { return steps.empty() ? 0 : steps.back().cumulative_new; }
  double ratio() const;
  double seconds() const;

  /// step,marked,closure_size,new_elements,cumulative_new,max_level,ratio
  std::string to_csv() const;
};

/// Accumulates a refinement sequence G_0, G_1, ... into an ExperimentLog.
class ExperimentRecorder {
 public:
  explicit ExperimentRecorder(const Mesh& initial);
  void record(const RefinementRecord& step, double seconds);
  const ExperimentLog& log() const { return log_; }
  ExperimentLog& log() { return log_; }

 private:
  ExperimentLog log_;
  std::size_t initial_left_;  // elements of G_0 still present
  std::size_t marked_ = 0;
};

/// Marks the element containing the origin and refines until its side
/// lengths are all at most 1/target_denominator.
ExperimentLog corner_experiment(const Dims& dims, const Degree& p, int m, int target_denominator, Mesh* final_mesh = nullptr);

/// `rounds` refinements, each marking `per_round` random elements.
ExperimentLog random_experiment(const Mesh& initial, std::size_t rounds, std::size_t per_round, std::uint64_t seed,
                                Mesh* final_mesh = nullptr);

class ComplexityBoundViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BoundReport {
  double observed_ratio = 0.0;
  double bound = 0.0;
  /// observed_ratio / bound.
  double fraction_of_bound = 0.0;
  /// The observation that corner experiments stay below C/3000; reported only.
  bool below_c_over_3000 = false;
};

/// |G_J \ G_0| <= C * sum |M_j|; throws ComplexityBoundViolation otherwise.
BoundReport bound_check(const ExperimentLog& log, const ComplexityConstants& c);

/// Running maximum of the prefix ratios of a corner experiment with a fixed
/// number of steps.
std::vector<double> estimate_experimental_constant(const Dims& dims, const Degree& p, int m, std::size_t steps);

/// A newly created element with no marked element K' satisfying
/// level(K) <= level(K')+1 and Dist(K,K') <= m^{-level(K)/3} (d1,d2,d3).
std::optional<Element> distance_lemma_violation(const RefinementRecord& step, const ComplexityConstants& c);

}  // namespace tmesh
