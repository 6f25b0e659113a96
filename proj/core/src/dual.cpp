#include "tmesh/dual.hpp"

#include <Eigen/Dense>
#include <Eigen/OrderingMethods>
#include <Eigen/SparseQR>
#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <unordered_map>

#include "parallel.hpp"

namespace tmesh {

const Quadrature& gauss_legendre(int n) {
  static std::mutex mutex;
  static std::map<int, Quadrature> cache;
  std::lock_guard lock(mutex);
  if (auto it = cache.find(n); it != cache.end()) return it->second;
  if (n < 1) throw std::invalid_argument("gauss_legendre: need at least one point");
  // Golub-Welsch: eigenvalues of the symmetric Jacobi matrix are the nodes,
  // squared first eigenvector components times 2 the weights.
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double b = k / std::sqrt(4.0 * k * k - 1.0);
    J(k, k - 1) = J(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(J);
  Quadrature q;
  for (int i = 0; i < n; ++i) {
    q.nodes.push_back(eig.eigenvalues()(i));
    const double v = eig.eigenvectors()(0, i);
    q.weights.push_back(2.0 * v * v);
  }
  return cache.emplace(n, std::move(q)).first->second;
}

PiecewisePolynomial perfect_bspline(int p) {
  if (p < 1) throw std::invalid_argument("perfect_bspline: degree must be positive");
  using Real = long double;  // the table cancels heavily for larger p
  const std::size_t n = static_cast<std::size_t>(p) + 2;
  const std::size_t d = static_cast<std::size_t>(p) + 1;
  // cos((p-j+1)pi/(p+1)) written as a sine so the nodes come out exactly
  // antisymmetric (and the middle one exactly 0 for odd p).
  std::vector<Real> y(n);
  for (std::size_t j = 0; j < n; ++j) {
    y[j] = std::sin((2.0L * static_cast<Real>(j) - p - 1) * std::numbers::pi_v<Real> / (2.0L * (p + 1)));
  }
  y.front() = -1;
  y.back() = 1;

  std::vector<Real> binom(d, 1);
  for (std::size_t k = 1; k < d; ++k) binom[k] = binom[k - 1] * static_cast<Real>(d - k) / static_cast<Real>(k);

  const Real scale = static_cast<Real>(p + 1) * ((p + 1) % 2 == 0 ? 1 : -1);
  std::vector<std::vector<double>> pieces;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    // On [y_i, y_{i+1}] with t = x - y_i, (x - y_j)_+^p is (t + y_i - y_j)^p
    // for j <= i and zero otherwise.
    std::vector<std::vector<Real>> table(n, std::vector<Real>(d, 0));
    for (std::size_t j = 0; j <= i; ++j) {
      const Real c = y[i] - y[j];
      for (std::size_t k = 0; k < d; ++k) table[j][k] = binom[k] * std::pow(c, static_cast<int>(d - 1 - k));
    }
    for (std::size_t order = 1; order < n; ++order) {
      for (std::size_t j = 0; j + order < n; ++j) {
        const Real h = y[j + order] - y[j];
        for (std::size_t k = 0; k < d; ++k) table[j][k] = (table[j + 1][k] - table[j][k]) / h;
      }
    }
    std::vector<double> row(d);
    for (std::size_t k = 0; k < d; ++k) row[k] = static_cast<double>(scale * table[0][k]);
    pieces.push_back(std::move(row));
  }
  std::vector<double> breaks(y.begin(), y.end());
  return PiecewisePolynomial(std::move(breaks), std::move(pieces));
}

namespace {

void check_knots(std::span<const double> knots) {
  if (knots.size() < 3) throw std::invalid_argument("dual functional: need at least three knots");
  for (std::size_t i = 1; i < knots.size(); ++i) {
    if (!(knots[i - 1] < knots[i])) throw std::invalid_argument("dual functional: knots must be strictly increasing");
  }
}

const PiecewisePolynomial& perfect_antiderivative(int p) {
  static std::mutex mutex;
  static std::map<int, PiecewisePolynomial> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(p);
  if (it == cache.end()) it = cache.emplace(p, perfect_bspline(p).antiderivative()).first;
  return it->second;
}

}  // namespace

PiecewisePolynomial dual_weight(std::span<const double> knots) {
  check_knots(knots);
  const int p = static_cast<int>(knots.size()) - 2;
  const double a = knots.front();
  const double b = knots.back();
  const double len = b - a;
  const PiecewisePolynomial g = perfect_antiderivative(p).compose_affine(2.0 / len, -(a + b) / len);
  // Pin the outer breakpoints to the knots; the mapped values may be off by
  // one ulp.
  std::vector<double> breaks(g.breaks().begin(), g.breaks().end());
  breaks.front() = a;
  breaks.back() = b;
  std::vector<std::vector<double>> coeffs;
  for (std::size_t i = 0; i < g.pieces(); ++i) coeffs.emplace_back(g.piece(i).begin(), g.piece(i).end());
  return PiecewisePolynomial(std::move(breaks), std::move(coeffs));
}

PiecewisePolynomial dual_integrand(std::span<const double> knots) {
  const PiecewisePolynomial g = dual_weight(knots);
  const int p = static_cast<int>(knots.size()) - 2;
  double factorial = 1.0;
  for (int k = 2; k <= p; ++k) factorial *= k;
  std::vector<std::vector<double>> phi;
  for (std::size_t i = 0; i < g.pieces(); ++i) {
    const double left = g.breaks()[i];
    std::vector<double> c{1.0 / factorial};
    for (std::size_t r = 1; r + 1 < knots.size(); ++r) {
      // multiply by (t + left - x_r)
      const double shift = left - knots[r];
      std::vector<double> next(c.size() + 1, 0.0);
      for (std::size_t k = 0; k < c.size(); ++k) {
        next[k] += c[k] * shift;
        next[k + 1] += c[k];
      }
      c = std::move(next);
    }
    phi.push_back(std::move(c));
  }
  const PiecewisePolynomial phi_pp(std::vector<double>(g.breaks().begin(), g.breaks().end()), std::move(phi));
  return (g * phi_pp).derivative(p + 1);
}

double lambda_1d(const PiecewisePolynomial& integrand, std::span<const double> other, int points) {
  const double a = integrand.breaks().front();
  const double b = integrand.breaks().back();
  if (other.back() <= a || other.front() >= b) return 0.0;
  std::vector<double> cuts(integrand.breaks().begin(), integrand.breaks().end());
  for (double o : other)
    if (a < o && o < b) cuts.push_back(o);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  const Quadrature& q = gauss_legendre(points);
  double sum = 0.0;
  std::size_t piece = 0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = cuts[i];
    const double hi = cuts[i + 1];
    if (hi <= other.front() || lo >= other.back()) continue;
    while (piece + 1 < integrand.pieces() && integrand.breaks()[piece + 1] <= lo) ++piece;
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    double part = 0.0;
    for (std::size_t k = 0; k < q.nodes.size(); ++k) {
      const double x = mid + half * q.nodes[k];
      part += q.weights[k] * bspline_eval(other, x) * integrand.eval_piece(piece, x);
    }
    sum += half * part;
  }
  return sum;
}

double lambda_1d(std::span<const double> knots, std::span<const double> other, int points) {
  if (knots.size() != other.size()) throw std::invalid_argument("lambda_1d: degree mismatch");
  const int p = static_cast<int>(knots.size()) - 2;
  return lambda_1d(dual_integrand(knots), other, points > 0 ? points : default_quadrature_points(p));
}

double lambda_node(const Topology& topo, std::size_t v, std::size_t w) {
  const auto xv = topo.local_index_vectors(v);
  const auto xw = topo.local_index_vectors(w);
  double value = 1.0;
  for (std::size_t a = 0; a < 3; ++a) {
    value *= lambda_1d(xv[a].to_double(), xw[a].to_double());
    if (value == 0.0) break;
  }
  return value;
}

namespace {

std::vector<double> knots_as_double(const Topology& topo, int axis, const std::vector<int>& ranks) {
  std::vector<double> out;
  out.reserve(ranks.size());
  for (int r : ranks) out.push_back(topo.coordinate(axis, r).to_double());
  return out;
}

struct PairHash {
  std::size_t operator()(const std::pair<std::size_t, std::size_t>& p) const { return p.first * 1000003u ^ p.second; }
};

}  // namespace

DualCheckResult dual_basis_check(const Topology& topo, const DualCheckOptions& options) {
  const unsigned threads = options.threads;
  const int points = options.points;
  DcResult dc = is_dual_compatible(topo, threads);
  if (!dc.dual_compatible) throw NotDualCompatible(std::move(dc));

  const std::size_t n = topo.node_count();
  // Distinct knot vectors per axis and their integrands.
  std::array<std::vector<std::size_t>, 3> vid;
  std::array<std::vector<std::vector<double>>, 3> knots;
  std::array<std::vector<PiecewisePolynomial>, 3> integrands;
  for (int a = 0; a < 3; ++a) {
    const auto s = static_cast<std::size_t>(a);
    std::map<std::vector<int>, std::size_t> ids;
    vid[s].resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto& k = topo.node_data(i).knots[s];
      auto [it, fresh] = ids.emplace(k, ids.size());
      if (fresh) knots[s].push_back(knots_as_double(topo, a, k));
      vid[s][i] = it->second;
    }
    integrands[s].resize(knots[s].size());
    detail::parallel_for(knots[s].size(), threads, [&](std::size_t b, std::size_t e, unsigned) {
      for (std::size_t i = b; i < e; ++i) integrands[s][i] = dual_integrand(knots[s][i]);
    });
  }

  std::vector<std::pair<std::size_t, std::size_t>> ordered;
  for (std::size_t i = 0; i < n; ++i) ordered.emplace_back(i, i);
  for (const auto& [v, w] : overlapping_pairs(topo)) {
    ordered.emplace_back(v, w);
    ordered.emplace_back(w, v);
  }
  std::sort(ordered.begin(), ordered.end());

  // One-dimensional values over distinct (vector, vector) pairs per axis.
  std::array<std::unordered_map<std::pair<std::size_t, std::size_t>, double, PairHash>, 3> table;
  for (std::size_t a = 0; a < 3; ++a) {
    std::vector<std::pair<std::size_t, std::size_t>> keys;
    for (const auto& [v, w] : ordered) keys.emplace_back(vid[a][v], vid[a][w]);
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    std::vector<double> values(keys.size());
    detail::parallel_for(keys.size(), threads, [&](std::size_t b, std::size_t e, unsigned) {
      for (std::size_t i = b; i < e; ++i) {
        const int p = static_cast<int>(knots[a][keys[i].first].size()) - 2;
        values[i] = lambda_1d(integrands[a][keys[i].first], knots[a][keys[i].second],
                              points > 0 ? points : default_quadrature_points(p));
      }
    });
    for (std::size_t i = 0; i < keys.size(); ++i) table[a].emplace(keys[i], values[i]);
  }

  DualCheckResult result;
  result.tolerance = options.tolerance;
  result.pairs_evaluated = ordered.size();
  for (const auto& [v, w] : ordered) {
    double value = 1.0;
    for (std::size_t a = 0; a < 3; ++a) value *= table[a].at({vid[a][v], vid[a][w]});
    if (options.record_values) result.values.push_back({v, w, value});
    const double err = std::abs(value - (v == w ? 1.0 : 0.0));
    if (err > result.max_error) {
      result.max_error = err;
      result.worst = {v, w};
    }
  }
  result.pass = result.max_error <= options.tolerance;
  return result;
}

namespace {

struct FunctionData {
  std::array<std::vector<double>, 3> knots;
};

std::vector<double> chebyshev_points(double a, double b, int n) {
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] =
        0.5 * (a + b) + 0.5 * (b - a) * std::cos((2.0 * i + 1.0) * std::numbers::pi / (2.0 * n));
  }
  return out;
}

}  // namespace

RankResult rank_oracle(const Topology& topo, std::span<const BlendingFunction> functions, unsigned threads) {
  std::vector<FunctionData> fns;
  fns.reserve(functions.size());
  for (const auto& f : functions) {
    FunctionData d;
    for (std::size_t a = 0; a < 3; ++a) d.knots[a] = f.vectors[a].to_double();
    fns.push_back(std::move(d));
  }

  // Every element meeting some support with positive volume. The functions
  // live on the whole domain; restricted to the active region alone they can
  // become dependent.
  std::array<std::array<double, 2>, 3> hull{};
  for (std::size_t a = 0; a < 3; ++a) hull[a] = {1e300, -1e300};
  for (const auto& f : fns)
    for (std::size_t a = 0; a < 3; ++a) {
      hull[a][0] = std::min(hull[a][0], f.knots[a].front());
      hull[a][1] = std::max(hull[a][1], f.knots[a].back());
    }
  const auto meets = [](const FunctionData& f, const std::array<std::array<double, 2>, 3>& box) {
    for (std::size_t a = 0; a < 3; ++a)
      if (!(f.knots[a].front() < box[a][1] && box[a][0] < f.knots[a].back())) return false;
    return true;
  };
  std::vector<std::array<std::array<double, 2>, 3>> boxes;
  for (const auto& e : topo.mesh().elements()) {
    std::array<std::array<double, 2>, 3> box{};
    for (int a = 0; a < 3; ++a) box[static_cast<std::size_t>(a)] = {e.lo[a].to_double(), e.hi[a].to_double()};
    bool inside = true;
    for (std::size_t a = 0; a < 3 && inside; ++a) inside = box[a][0] < hull[a][1] && hull[a][0] < box[a][1];
    if (inside && std::any_of(fns.begin(), fns.end(), [&](const FunctionData& f) { return meets(f, box); })) {
      boxes.push_back(box);
    }
  }

  RankResult result;
  result.columns = fns.size();
  const Degree& p = topo.degree();
  result.grid = {p[0] + 1, p[1] + 1, p[2] + 1};
  auto per_element = [&] { return static_cast<std::size_t>(result.grid[0] * result.grid[1] * result.grid[2]); };
  while (boxes.size() * per_element() < fns.size()) {
    for (auto& g : result.grid) ++g;
  }
  result.samples = boxes.size() * per_element();
  if (fns.empty()) return result;

  using Triplet = Eigen::Triplet<double>;
  const unsigned workers = std::max(1u, threads);
  std::vector<std::vector<Triplet>> parts(workers);
  detail::parallel_for(boxes.size(), workers, [&](std::size_t begin, std::size_t end, unsigned w) {
    auto& out = parts[w];
    for (std::size_t b = begin; b < end; ++b) {
      const auto& box = boxes[b];
      std::vector<std::size_t> live;
      for (std::size_t f = 0; f < fns.size(); ++f)
        if (meets(fns[f], box)) live.push_back(f);
      const auto xs = chebyshev_points(box[0][0], box[0][1], result.grid[0]);
      const auto ys = chebyshev_points(box[1][0], box[1][1], result.grid[1]);
      const auto zs = chebyshev_points(box[2][0], box[2][1], result.grid[2]);
      std::size_t row = b * per_element();
      for (double x : xs)
        for (double y : ys)
          for (double z : zs) {
            for (std::size_t f : live) {
              const auto& k = fns[f].knots;
              const double v = bspline_eval(k[0], x) * bspline_eval(k[1], y) * bspline_eval(k[2], z);
              if (v != 0.0) out.emplace_back(static_cast<int>(row), static_cast<int>(f), v);
            }
            ++row;
          }
    }
  });
  std::vector<Triplet> all;
  for (auto& part : parts) all.insert(all.end(), part.begin(), part.end());

  Eigen::SparseMatrix<double> A(static_cast<Eigen::Index>(result.samples), static_cast<Eigen::Index>(fns.size()));
  A.setFromTriplets(all.begin(), all.end());
  A.makeCompressed();
  Eigen::SparseQR<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> qr;
  qr.compute(A);
  if (qr.info() != Eigen::Success) throw std::runtime_error("rank_oracle: QR factorization failed");
  const auto cols = static_cast<Eigen::Index>(fns.size());
  const Eigen::MatrixXd R = Eigen::MatrixXd(qr.matrixR()).topLeftCorner(cols, cols).triangularView<Eigen::Upper>();
  const Eigen::VectorXd sigma = Eigen::BDCSVD<Eigen::MatrixXd>(R).singularValues();
  result.sigma_max = sigma.size() > 0 ? sigma(0) : 0.0;
  result.threshold = 1e-9 * result.sigma_max;
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    if (sigma(i) > result.threshold) {
      ++result.rank;
      result.sigma_min = sigma(i);
    }
  }
  return result;
}

RankResult rank_oracle(const Topology& topo, unsigned threads) {
  std::vector<BlendingFunction> fns;
  fns.reserve(topo.node_count());
  for (std::size_t i = 0; i < topo.node_count(); ++i) fns.push_back(topo.blending_function(i));
  return rank_oracle(topo, fns, threads);
}

}  // namespace tmesh
