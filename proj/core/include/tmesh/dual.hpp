#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "tmesh/piecewise_polynomial.hpp"
#include "tmesh/spline.hpp"
#include "tmesh/topology.hpp"

namespace tmesh {

/// n-point Gauss-Legendre rule on [-1, 1].
struct Quadrature {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const Quadrature& gauss_legendre(int n);

/// (p+1)(-1)^{p+1} [y_0..y_{p+1}] (x - .)_+^p with y_j = cos((p-j+1)pi/(p+1)),
/// on the breakpoints y_0 = -1 < ... < y_{p+1} = 1. Requires p >= 1.
PiecewisePolynomial perfect_bspline(int p);

/// G_X on [x_1, x_{p+2}]: the antiderivative of the perfect B-spline, pulled
/// back along the affine map of [x_1, x_{p+2}] onto [-1, 1].
PiecewisePolynomial dual_weight(std::span<const double> knots);

/// D^{p+1}(G_X phi_X) with phi_X = (x - x_2)...(x - x_{p+1}) / p!.
PiecewisePolynomial dual_integrand(std::span<const double> knots);

/// Default number of Gauss points per subinterval: ceil((2p+2)/2) + 1.
constexpr int default_quadrature_points(int p) { return p + 2; }

/// lambda_X(N_Xt): integral of N_Xt times the integrand of X over
/// [x_1, x_{p+2}], Gauss-Legendre per subinterval of the merged breakpoints.
double lambda_1d(std::span<const double> knots, std::span<const double> other, int points = 0);
double lambda_1d(const PiecewisePolynomial& integrand, std::span<const double> other, int points);

/// Product of the per-axis one-dimensional values lambda_x(v)(N_x(w)) etc.
double lambda_node(const Topology& topo, std::size_t v, std::size_t w);

class NotDualCompatible : public std::runtime_error {
 public:
  explicit NotDualCompatible(DcResult dc)
      : std::runtime_error("mesh is not dual-compatible"), result(std::move(dc)) {}
  DcResult result;
};

struct DualCheckOptions {
  double tolerance = 1e-8;
  unsigned threads = 1;
  /// Gauss points per subinterval; 0 selects default_quadrature_points(p).
  int points = 0;
  /// Keep every evaluated (v, w, lambda_v(B_w)) triple.
  bool record_values = false;
};

struct DualValue {
  std::size_t v = 0;
  std::size_t w = 0;
  double value = 0.0;
};

struct DualCheckResult {
  bool pass = false;
  double tolerance = 1e-8;
  double max_error = 0.0;
  /// Pair (v, w) attaining max_error, as node indices.
  std::pair<std::size_t, std::size_t> worst{0, 0};
  /// Ordered pairs with overlapping supports that were evaluated; all other
  /// pairs vanish exactly.
  std::size_t pairs_evaluated = 0;
  /// Filled when DualCheckOptions::record_values is set, sorted by (v, w).
  std::vector<DualValue> values;
};

/// max |lambda_v(B_w) - delta_vw| over all active pairs. Throws
/// NotDualCompatible (carrying the witness) if the mesh is not DC.
DualCheckResult dual_basis_check(const Topology& topo, const DualCheckOptions& options = {});

struct RankResult {
  std::size_t rank = 0;
  std::size_t columns = 0;
  std::size_t samples = 0;
  /// Samples per element and axis that were finally used.
  std::array<int, 3> grid{};
  double sigma_max = 0.0;
  double sigma_min = 0.0;
  double threshold = 0.0;

  bool full_rank() const { return rank == columns; }
  std::size_t deficiency() const { return columns - rank; }
};

/// Numerical rank of the collocation matrix of the blending functions at
/// Chebyshev-Gauss points: every element meeting some support with positive
/// volume gets a (p_1+1)x(p_2+1)x(p_3+1) tensor grid of points
/// (a+b)/2 + (b-a)/2 cos((2i+1)pi/(2n)) per axis. If that yields fewer rows
/// than columns the grid grows by one point per axis until it does.
/// Rank = number of singular values above 1e-9 * sigma_max.
RankResult rank_oracle(const Topology& topo, unsigned threads = 1);
/// Same, for an arbitrary list of functions (e.g. with a duplicate appended).
RankResult rank_oracle(const Topology& topo, std::span<const BlendingFunction> functions, unsigned threads = 1);

}  // namespace tmesh
