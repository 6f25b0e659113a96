#include "tmesh/spline.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "parallel.hpp"

namespace tmesh {

double bspline_eval(std::span<const double> knots, double t) {
  const std::size_t n = knots.size();
  if (n < 2) throw std::invalid_argument("bspline_eval: need at least two knots");
  for (std::size_t i = 1; i < n; ++i) {
    if (!(knots[i - 1] < knots[i])) throw std::invalid_argument("bspline_eval: knots must be strictly increasing");
  }
  if (t < knots.front() || t >= knots.back()) return 0.0;
  const std::size_t p = n - 2;
  // N[i] holds N_{i,k} for the current k; degree 0 first.
  std::vector<double> N(n - 1, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) N[i] = (knots[i] <= t && t < knots[i + 1]) ? 1.0 : 0.0;
  for (std::size_t k = 1; k <= p; ++k) {
    for (std::size_t i = 0; i + k + 1 < n; ++i) {
      const double left = (t - knots[i]) / (knots[i + k] - knots[i]) * N[i];
      const double right = (knots[i + k + 1] - t) / (knots[i + k + 1] - knots[i + 1]) * N[i + 1];
      N[i] = left + right;
    }
  }
  return N[0];
}

double bspline_eval(const LocalIndexVector& x, double t) {
  const auto knots = x.to_double();
  return bspline_eval(knots, t);
}

double blending_eval(const BlendingFunction& b, const std::array<double, 3>& point) {
  double v = 1.0;
  for (std::size_t a = 0; a < 3 && v != 0.0; ++a) v *= bspline_eval(b.vectors[a], point[a]);
  return v;
}

namespace {

template <class T>
bool one_sided(std::span<const T> x, std::span<const T> y) {
  for (const auto& k : x) {
    if (k < y.front() || y.back() < k) continue;
    if (!std::binary_search(y.begin(), y.end(), k)) return false;
  }
  return true;
}

}  // namespace

bool overlap(const LocalIndexVector& x, const LocalIndexVector& y) {
  if (x.axis != y.axis) throw std::invalid_argument("overlap: index vectors belong to different axes");
  if (x.degree() != y.degree()) throw std::invalid_argument("overlap: degree mismatch");
  const std::span<const MadicRational> a(x.entries), b(y.entries);
  return one_sided(a, b) && one_sided(b, a);
}

bool overlap_ranks(std::span<const int> x, std::span<const int> y) { return one_sided(x, y) && one_sided(y, x); }

bool partial_overlap(const Topology& topo, std::size_t v, std::size_t w) {
  const auto& a = topo.node_data(v);
  const auto& b = topo.node_data(w);
  int hits = 0;
  for (std::size_t ax = 0; ax < 3; ++ax) hits += overlap_ranks(a.knots[ax], b.knots[ax]) ? 1 : 0;
  return hits >= 2;
}

bool partial_overlap(const BlendingFunction& v, const BlendingFunction& w) {
  int hits = 0;
  for (std::size_t ax = 0; ax < 3; ++ax) hits += overlap(v.vectors[ax], w.vectors[ax]) ? 1 : 0;
  return hits >= 2;
}

bool supports_overlap(const Topology& topo, std::size_t v, std::size_t w) {
  const auto& a = topo.node_data(v);
  const auto& b = topo.node_data(w);
  for (int ax = 0; ax < 3; ++ax) {
    if (!(a.support_lo(ax) < b.support_hi(ax) && b.support_lo(ax) < a.support_hi(ax))) return false;
  }
  return true;
}

std::vector<std::pair<std::size_t, std::size_t>> overlapping_pairs(const Topology& topo) {
  const std::size_t n = topo.node_count();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return topo.node_data(a).support_lo(0) < topo.node_data(b).support_lo(0);
  });
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<std::size_t> live;
  for (std::size_t i : order) {
    const auto& d = topo.node_data(i);
    std::erase_if(live, [&](std::size_t j) { return topo.node_data(j).support_hi(0) <= d.support_lo(0); });
    for (std::size_t j : live) {
      if (supports_overlap(topo, i, j)) pairs.emplace_back(std::min(i, j), std::max(i, j));
    }
    live.push_back(i);
  }
  std::sort(pairs.begin(), pairs.end());
  return pairs;
}

std::vector<std::pair<std::size_t, std::size_t>> overlapping_pairs_brute_force(const Topology& topo) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < topo.node_count(); ++i)
    for (std::size_t j = i + 1; j < topo.node_count(); ++j)
      if (supports_overlap(topo, i, j)) pairs.emplace_back(i, j);
  return pairs;
}

DcResult is_dual_compatible(const Topology& topo, unsigned threads) {
  const auto pairs = overlapping_pairs(topo);
  constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> first_failure(std::max(1u, threads), none);
  // Pairs are sorted, so the first failure of each chunk is that chunk's
  // smallest and the minimum over chunks is the global smallest.
  detail::parallel_for(pairs.size(), threads, [&](std::size_t begin, std::size_t end, unsigned worker) {
    for (std::size_t i = begin; i < end; ++i) {
      if (!partial_overlap(topo, pairs[i].first, pairs[i].second)) {
        first_failure[worker] = i;
        return;
      }
    }
  });
  DcResult result;
  result.pairs_checked = pairs.size();
  const std::size_t hit = *std::min_element(first_failure.begin(), first_failure.end());
  if (hit != none) {
    result.dual_compatible = false;
    const auto nodes = topo.active_nodes();
    result.witness = std::make_pair(nodes[pairs[hit].first], nodes[pairs[hit].second]);
  }
  return result;
}

DcResult is_dual_compatible(const Mesh& mesh, unsigned threads) {
  const Topology topo(mesh);
  return is_dual_compatible(topo, threads);
}

}  // namespace tmesh
