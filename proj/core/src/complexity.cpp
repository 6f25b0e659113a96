#include "tmesh/complexity.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "tmesh/marking.hpp"

namespace tmesh {

ComplexityConstants constants(const Degree& p, int m) {
  MeshParams{m, p, {1, 1, 1}}.validate();
  ComplexityConstants c;
  c.p = p;
  c.m = m;
  const double m13 = std::cbrt(static_cast<double>(m));
  const double m23 = m13 * m13;
  const double geo = 1.0 / (1.0 - 1.0 / m13);
  const double tail = (3.0 + m13) / 2.0 + (m13 - 1.0) / (static_cast<double>(m) * m);
  c.d1 = geo * (p[0] + tail);
  c.d2 = geo * m13 * (p[1] + tail);
  c.d3 = geo * m23 * (p[2] + tail);
  c.C = m13 * geo * (4 * c.d1 + 1) * (4 * c.d2 + m13) * (4 * c.d3 + m23);
  c.p_tilde = {p[0] + 1.5, m13 * (p[1] + 1.5), m23 * (p[2] + 1.5)};
  c.s = {m13 / 2, m23 / 2, m / 2.0};
  return c;
}

std::size_t ExperimentLog::total_marked() const {
  std::size_t n = 0;
  for (const auto& s : steps) n += s.marked;
  return n;
}

double ExperimentLog::ratio() const {
  const std::size_t marked = total_marked();
  return marked == 0 ? 0.0 : static_cast<double>(total_new()) / static_cast<double>(marked);
}

double ExperimentLog::seconds() const {
  double t = 0;
  for (const auto& s : steps) t += s.seconds;
  return t;
}

std::string ExperimentLog::to_csv() const {
  std::ostringstream out;
  out << "step,marked,closure_size,new_elements,cumulative_new,max_level,ratio\n";
  out.precision(17);
  for (const auto& s : steps) {
    out << s.step << ',' << s.marked << ',' << s.closure_size << ',' << s.new_elements << ',' << s.cumulative_new
        << ',' << s.max_level << ',' << s.ratio << '\n';
  }
  return out.str();
}

ExperimentRecorder::ExperimentRecorder(const Mesh& initial) : initial_left_(initial.size()) {
  log_.params = initial.params();
  log_.initial_elements = initial.size();
}

void ExperimentRecorder::record(const RefinementRecord& step, double seconds) {
  // Level-0 elements can only come from G_0, and a subdivided element never
  // comes back.
  for (const auto& e : step.closure)
    if (e.level == 0) --initial_left_;
  marked_ += step.marked.size();
  log_.subdivided += step.closure.size();
  StepRecord r;
  r.step = log_.steps.size() + 1;
  r.marked = step.marked.size();
  r.closure_size = step.closure.size();
  r.new_elements = step.new_elements();
  r.cumulative_new = step.output.size() - initial_left_;
  r.max_level = step.output.max_level();
  r.seconds = seconds;
  r.ratio = marked_ == 0 ? 0.0 : static_cast<double>(r.cumulative_new) / static_cast<double>(marked_);
  log_.steps.push_back(r);
}

namespace {

using Clock = std::chrono::steady_clock;

bool small_enough(const Element& e, int denominator) {
  for (const auto& x : e.extent())
    if (!(x * denominator <= MadicRational(1))) return false;
  return true;
}

}  // namespace

ExperimentLog corner_experiment(const Dims& dims, const Degree& p, int m, int target_denominator, Mesh* final_mesh) {
  if (target_denominator < 1) throw std::invalid_argument("corner_experiment: target must be positive");
  Mesh g = Mesh::initial(dims, p, m);
  ExperimentRecorder rec(g);
  while (!small_enough(corner_element(g), target_denominator)) {
    const std::vector<Element> marked{corner_element(g)};
    const auto t0 = Clock::now();
    // Refinement outputs are admissible by construction; skip re-verifying.
    auto step = refine(g, marked, {.check_input = false});
    rec.record(step, std::chrono::duration<double>(Clock::now() - t0).count());
    g = step.output;
  }
  if (final_mesh) *final_mesh = g;
  return rec.log();
}

ExperimentLog random_experiment(const Mesh& initial, std::size_t rounds, std::size_t per_round, std::uint64_t seed,
                                Mesh* final_mesh) {
  Mesh g = initial;
  ExperimentRecorder rec(g);
  rec.log().seed = seed;
  for (std::size_t r = 0; r < rounds; ++r) {
    const auto marked = random_marking(g, per_round, seed + r);
    const auto t0 = Clock::now();
    auto step = refine(g, marked, {.check_input = r == 0});
    rec.record(step, std::chrono::duration<double>(Clock::now() - t0).count());
    g = step.output;
  }
  if (final_mesh) *final_mesh = g;
  return rec.log();
}

BoundReport bound_check(const ExperimentLog& log, const ComplexityConstants& c) {
  BoundReport r;
  r.bound = c.C;
  r.observed_ratio = log.ratio();
  r.fraction_of_bound = r.observed_ratio / c.C;
  r.below_c_over_3000 = r.observed_ratio < c.C / 3000.0;
  if (static_cast<double>(log.total_new()) > c.C * static_cast<double>(log.total_marked())) {
    throw ComplexityBoundViolation("complexity bound violated: " + std::to_string(log.total_new()) + " new elements for " +
                                   std::to_string(log.total_marked()) + " marked, C = " + std::to_string(c.C));
  }
  return r;
}

std::vector<double> estimate_experimental_constant(const Dims& dims, const Degree& p, int m, std::size_t steps) {
  Mesh g = Mesh::initial(dims, p, m);
  ExperimentRecorder rec(g);
  std::vector<double> series;
  double best = 0.0;
  for (std::size_t j = 0; j < steps; ++j) {
    const std::vector<Element> marked{corner_element(g)};
    auto step = refine(g, marked, {.check_input = false});
    rec.record(step, 0.0);
    g = step.output;
    best = std::max(best, rec.log().steps.back().ratio);
    series.push_back(best);
  }
  return series;
}

std::optional<Element> distance_lemma_violation(const RefinementRecord& step, const ComplexityConstants& c) {
  const double m = step.input.m();
  for (const auto& k : step.output.elements()) {
    if (step.input.contains(k)) continue;
    const double scale = std::pow(m, -k.level / 3.0);
    const auto d = c.d();
    bool found = false;
    for (const auto& km : step.marked) {
      if (k.level > km.level + 1) continue;
      const HalfVec3 dist2 = dist(k, km);
      bool ok = true;
      for (std::size_t a = 0; a < 3 && ok; ++a) ok = dist2[a].to_double() <= scale * d[a] * (1 + 1e-12);
      if (ok) {
        found = true;
        break;
      }
    }
    if (!found) return k;
  }
  return std::nullopt;
}

}  // namespace tmesh
