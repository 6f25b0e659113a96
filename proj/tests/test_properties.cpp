#include <gtest/gtest.h>

#include <set>

#include "corpus.hpp"
#include "tmesh/asuit.hpp"
#include "tmesh/refine.hpp"

namespace {

using namespace tmesh;
using tmesh::testing::cascade_meshes;
using tmesh::testing::corpus;

TEST(Corpus, Shape) {
  const auto& c = corpus();
  EXPECT_GE(c.size(), 50u);
  std::set<int> ms;
  std::set<int> ps;
  for (const auto& cm : c) {
    ms.insert(cm.initial.m());
    ps.insert(cm.initial.degree()[0]);
    EXPECT_LE(cm.steps.size(), 3u) << cm.name;
    EXPECT_FALSE(cm.steps.empty()) << cm.name;
  }
  EXPECT_EQ(ms, (std::set<int>{2, 3, 4, 16}));
  EXPECT_EQ(ps, (std::set<int>{3, 5}));
  EXPECT_GE(cascade_meshes().size(), 10u);
}

// Every refine() output is admissible, analysis-suitable and dual-compatible.
TEST(RefineOutputs, EveryRefineOutput) {
  for (const auto& cm : corpus()) {
    for (std::size_t j = 0; j < cm.steps.size(); ++j) {
      const Mesh& g = cm.steps[j].output;
      const auto adm = verify_admissible(g);
      EXPECT_TRUE(adm.admissible) << cm.name << " step " << j << ": " << (adm.violation ? adm.violation->describe() : "");
      const Topology topo(g);
      const auto cc = cross_check(topo, 2);
      EXPECT_TRUE(cc.as.analysis_suitable) << cm.name << " step " << j;
      EXPECT_TRUE(cc.dc.dual_compatible) << cm.name << " step " << j;
    }
  }
}

TEST(RefineOutputs, LocalQuasiUniformity) {
  for (const auto& cm : corpus()) {
    std::size_t bad = 0;
    for (const auto& k : cm.mesh.elements())
      for (const auto& q : cm.mesh.patch(k)) bad += q.level + 1 < k.level ? 1 : 0;
    EXPECT_EQ(bad, 0u) << cm.name;
    EXPECT_FALSE(check_quasi_uniformity(cm.mesh).has_value()) << cm.name;
  }
}

TEST(CrossValidation, CascadesAgree) {
  std::size_t split = 0;
  std::size_t inadmissible = 0;
  std::size_t non_dc = 0;
  for (const auto& cm : cascade_meshes()) {
    inadmissible += verify_admissible(cm.mesh).admissible ? 0 : 1;
    const auto cc = cross_check(Topology(cm.mesh), 2);
    split += cc.agree() ? 0 : 1;
    non_dc += cc.dc.dual_compatible ? 0 : 1;
    EXPECT_TRUE(cc.agree()) << cm.name << " AS=" << cc.as.analysis_suitable << " DC=" << cc.dc.dual_compatible;
  }
  EXPECT_EQ(split, 0u);
  EXPECT_GE(inadmissible, 10u);
  EXPECT_GE(non_dc, 8u);
}

// Refining an admissible mesh never coarsens it and only adds patches that
// nest in their parents' patches.
TEST(RefineOutputs, RefinementOnlyAddsFinerElements) {
  for (const auto& cm : corpus()) {
    for (const auto& step : cm.steps) {
      for (const auto& k : step.closure) EXPECT_TRUE(step.input.contains(k)) << cm.name;
      for (const auto& k : step.input.elements())
        if (!step.output.contains(k))
          EXPECT_TRUE(std::binary_search(step.closure.begin(), step.closure.end(), k) ||
                      std::find(step.closure.begin(), step.closure.end(), k) != step.closure.end())
              << cm.name;
      EXPECT_EQ(step.output.size(), step.input.size() + step.closure.size() * static_cast<std::size_t>(cm.initial.m() - 1));
    }
  }
}

}  // namespace
