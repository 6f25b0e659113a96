#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "corpus.hpp"
#include "oracles.hpp"
#include "tmesh/dual.hpp"

namespace {

using namespace tmesh;
using tmesh::testing::cascade_meshes;
using tmesh::testing::corpus;

TEST(PiecewisePolynomial, Evaluation) {
  const PiecewisePolynomial f({0, 1, 2}, {{1, 1}, {2, 0, 1}});
  EXPECT_EQ(f.pieces(), 2u);
  EXPECT_EQ(f.degree(), 2);
  EXPECT_DOUBLE_EQ(f(0.5), 1.5);
  EXPECT_DOUBLE_EQ(f(1.5), 2.25);
  EXPECT_DOUBLE_EQ(f(2.0), 3.0);
  EXPECT_DOUBLE_EQ(f(-0.1), 0.0);
  EXPECT_DOUBLE_EQ(f(2.1), 0.0);
  EXPECT_NEAR(f.integral(), 1.5 + 2.0 + 1.0 / 3.0, 1e-15);
  EXPECT_DOUBLE_EQ(f.max_jump(0), 0.0);
  EXPECT_DOUBLE_EQ(f.max_jump(1), 1.0);

  const auto d = f.derivative();
  EXPECT_DOUBLE_EQ(d(0.5), 1.0);
  EXPECT_DOUBLE_EQ(d(1.5), 1.0);
  EXPECT_DOUBLE_EQ(f.derivative(3)(1.5), 0.0);

  const auto F = f.antiderivative();
  EXPECT_DOUBLE_EQ(F(0.0), 0.0);
  EXPECT_NEAR(F(1.0), 1.5, 1e-15);
  EXPECT_NEAR(F(2.0), f.integral(), 1e-15);
  EXPECT_LT(F.max_jump(0), 1e-15);

  const auto g = f.compose_affine(2.0, 0.0);  // f(2x) on [0, 1]
  EXPECT_DOUBLE_EQ(g(0.25), f(0.5));
  EXPECT_DOUBLE_EQ(g(0.75), f(1.5));
  EXPECT_DOUBLE_EQ(g.breaks().back(), 1.0);

  const auto sq = f * f;
  EXPECT_DOUBLE_EQ(sq(1.5), 2.25 * 2.25);
}

TEST(PiecewisePolynomial, Validation) {
  EXPECT_THROW(PiecewisePolynomial({0, 0, 1}, {{1}, {1}}), std::invalid_argument);
  EXPECT_THROW(PiecewisePolynomial({0, 1, 2}, {{1}}), std::invalid_argument);
  EXPECT_THROW(PiecewisePolynomial({0, 1}, {{1}}) * PiecewisePolynomial({0, 2}, {{1}}), std::invalid_argument);
}

TEST(PerfectBSpline, CubicBreakpoints) {
  const auto f = perfect_bspline(3);
  const auto b = f.breaks();
  ASSERT_EQ(b.size(), 5u);
  const double h = std::numbers::sqrt2 / 2;
  const double expected[] = {-1, -h, 0, h, 1};
  for (std::size_t i = 0; i < 5; ++i) EXPECT_NEAR(b[i], expected[i], 1e-15);
  EXPECT_EQ(f.degree(), 3);
  // Perfect: the p-th derivative has constant modulus and alternates.
  const auto d3 = f.derivative(3);
  const double c = d3(-0.9);
  EXPECT_GT(std::abs(c), 0.0);
  EXPECT_NEAR(d3(-0.3), -c, 1e-12 * std::abs(c));
  EXPECT_NEAR(d3(0.3), c, 1e-12 * std::abs(c));
  EXPECT_NEAR(d3(0.9), -c, 1e-12 * std::abs(c));
  for (double x : {0.1, 0.4, 0.8}) EXPECT_NEAR(f(x), f(-x), 1e-14);
}

TEST(PerfectBSpline, MatchesExplicitFormula) {
  for (int p = 1; p <= 9; ++p) {
    const auto f = perfect_bspline(p);
    for (int i = 1; i < 200; ++i) {
      const double x = -1.0 + i / 100.0 + 1e-7;
      EXPECT_NEAR(f(x), static_cast<double>(tmesh::testing::perfect_bspline_reference(p, x)), 1e-10) << "p=" << p << " x=" << x;
    }
  }
}

TEST(PerfectBSpline, UnitIntegral) {
  for (int p : {3, 5, 9}) EXPECT_NEAR(perfect_bspline(p).integral(), 1.0, 1e-12) << p;
  for (int p = 1; p <= 12; ++p) EXPECT_NEAR(perfect_bspline(p).integral(), 1.0, 1e-11) << p;
}

TEST(DualWeight, EndpointsAndDegree) {
  const std::vector<std::vector<double>> knots = {
      {0, 1, 2, 3, 4}, {0, 0.5, 2, 2.25, 7}, {1, 1.5, 2, 2.5, 3, 3.5, 4}, {0, 1, 1.125, 4, 4.5, 5, 6, 6.0625, 9, 9.5, 10, 11}};
  for (const auto& x : knots) {
    const int p = static_cast<int>(x.size()) - 2;
    const auto G = dual_weight(x);
    // Knots are x_1..x_{p+2}, stored from index 0.
    EXPECT_NEAR(G(x.front()), 0.0, 1e-12);
    EXPECT_NEAR(G(x.back()), 1.0, 1e-12);
    const auto I = dual_integrand(x);
    EXPECT_LE(I.degree(), p);
    EXPECT_GE(I.breaks().front(), x.front());
    EXPECT_LE(I.breaks().back(), x.back());
  }
}

TEST(Lambda1d, Examples) {
  const std::vector<double> x = {0, 1, 2, 3, 4};
  EXPECT_NEAR(lambda_1d(x, x), 1.0, 1e-12);
  EXPECT_NEAR(lambda_1d(x, std::vector<double>{1, 2, 3, 4, 5}), 0.0, 1e-12);
  EXPECT_NEAR(lambda_1d(x, std::vector<double>{-1, 0, 1, 2, 3}), 0.0, 1e-12);
  // Disjoint supports.
  EXPECT_NEAR(lambda_1d(x, std::vector<double>{4, 5, 6, 7, 8}), 0.0, 1e-12);
  EXPECT_NEAR(lambda_1d(x, std::vector<double>{-9, -8, -7, -6, -5}), 0.0, 1e-12);
  // A knot of the other vector that x does not have: the value is genuinely off.
  EXPECT_GT(std::abs(lambda_1d(x, std::vector<double>{0, 0.5, 2, 3, 4}) - 1.0), 1e-8);
  EXPECT_GT(std::abs(lambda_1d(x, std::vector<double>{1, 1.5, 3, 4, 5})), 1e-8);
}

// Knot vectors cut from one common sequence are biorthogonal to the dual
// functionals, and doubling the quadrature does not move the value.
TEST(Lambda1dProperty, BiorthogonalOnCommonSequence) {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> gap(1, 8);
  for (int trial = 0; trial < 40; ++trial) {
    const int p = 1 + trial % 7;
    std::vector<double> t{0.0};
    for (int i = 0; i < 3 * p + 6; ++i) t.push_back(t.back() + gap(rng) / 4.0);
    const int count = static_cast<int>(t.size()) - p - 1;
    for (int i = 0; i < count; ++i) {
      const std::vector<double> x(t.begin() + i, t.begin() + i + p + 2);
      for (int j = 0; j < count; ++j) {
        const std::vector<double> y(t.begin() + j, t.begin() + j + p + 2);
        const double v = lambda_1d(x, y);
        EXPECT_NEAR(v, i == j ? 1.0 : 0.0, 1e-10) << "p=" << p << " i=" << i << " j=" << j;
        const auto integrand = dual_integrand(x);
        EXPECT_NEAR(lambda_1d(integrand, y, 2 * default_quadrature_points(p)), v, 1e-11);
      }
    }
  }
}

TEST(LambdaNode, Diagonal) {
  const Topology topo(Mesh::initial({8, 8, 8}, {3, 3, 3}, 2));
  for (std::size_t v = 0; v < topo.node_count(); v += 17) EXPECT_NEAR(lambda_node(topo, v, v), 1.0, 1e-12);
  const auto a = topo.node_index(tmesh::testing::pt(3, 3, 3)).value();
  const auto b = topo.node_index(tmesh::testing::pt(4, 3, 3)).value();
  EXPECT_NEAR(lambda_node(topo, a, b), 0.0, 1e-12);
}

TEST(DualBasisCheck, UniformGrid) {
  const Topology topo(Mesh::initial({10, 10, 10}, {3, 3, 3}, 2));
  const auto r = dual_basis_check(topo);
  EXPECT_TRUE(r.pass);
  EXPECT_LE(r.max_error, 1e-12);
  EXPECT_DOUBLE_EQ(r.tolerance, 1e-8);
  EXPECT_GT(r.pairs_evaluated, topo.node_count());
}

TEST(DualBasisCheck, RefinedMeshesAndValues) {
  std::size_t checked = 0;
  for (const auto& c : corpus()) {
    const Topology topo(c.mesh);
    if (topo.node_count() > 500) continue;
    DualCheckOptions opt;
    opt.record_values = checked == 0;
    opt.threads = 2;
    const auto r = dual_basis_check(topo, opt);
    EXPECT_TRUE(r.pass) << c.name << " error " << r.max_error;
    EXPECT_LE(r.max_error, 1e-8) << c.name;
    if (opt.record_values) {
      EXPECT_EQ(r.values.size(), r.pairs_evaluated);
      EXPECT_TRUE(std::is_sorted(r.values.begin(), r.values.end(),
                                 [](const DualValue& a, const DualValue& b) { return std::pair(a.v, a.w) < std::pair(b.v, b.w); }));
      for (const auto& dv : r.values) EXPECT_NEAR(dv.value, dv.v == dv.w ? 1.0 : 0.0, 1e-8);
    }
    ++checked;
  }
  EXPECT_GE(checked, 10u);
}

TEST(DualBasisCheck, RefusesNonDualCompatible) {
  bool seen = false;
  for (const auto& c : cascade_meshes()) {
    const Topology topo(c.mesh);
    const auto dc = is_dual_compatible(topo);
    if (dc.dual_compatible) continue;
    try {
      (void)dual_basis_check(topo);
      ADD_FAILURE() << c.name << " was not refused";
    } catch (const NotDualCompatible& e) {
      EXPECT_FALSE(e.result.dual_compatible);
      EXPECT_EQ(e.result.witness, dc.witness);
    }
    seen = true;
    break;
  }
  EXPECT_TRUE(seen);
}

TEST(RankOracle, UniformAndDuplicate) {
  const Topology topo(Mesh::initial({10, 10, 10}, {3, 3, 3}, 2));
  const auto r = rank_oracle(topo, 2);
  EXPECT_EQ(r.columns, 343u);
  EXPECT_EQ(r.rank, 343u);
  EXPECT_TRUE(r.full_rank());
  EXPECT_GE(r.samples, r.columns);

  std::vector<BlendingFunction> fs;
  for (std::size_t i = 0; i < topo.node_count(); ++i) fs.push_back(topo.blending_function(i));
  fs.push_back(fs[100]);
  const auto d = rank_oracle(topo, fs, 2);
  EXPECT_EQ(d.columns, 344u);
  EXPECT_EQ(d.deficiency(), 1u);
}

TEST(RankOracle, RefinedMeshes) {
  std::size_t checked = 0;
  for (const auto& c : corpus()) {
    const Topology topo(c.mesh);
    if (topo.node_count() > 400 || checked >= 12) continue;
    const auto r = rank_oracle(topo, 2);
    EXPECT_TRUE(r.full_rank()) << c.name << " " << r.rank << "/" << r.columns;
    ++checked;
  }
  EXPECT_GE(checked, 6u);
}

}  // namespace
