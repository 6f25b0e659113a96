#include "corpus.hpp"

#include <functional>

#include "tmesh/marking.hpp"

namespace tmesh::testing {

MadicRational frac(Int n, int e, int m) { return MadicRational::from_parts(n, e, m); }

Point3 pt(const MadicRational& x, const MadicRational& y, const MadicRational& z) { return Point3{{x, y, z}}; }

namespace {


CorpusMesh run(std::string name, const Mesh& initial, int rounds, const std::function<std::vector<Element>(const Mesh&, int)>& mark) {
  CorpusMesh c{std::move(name), initial, initial, {}, {}};
  ExperimentRecorder rec(initial);
  for (int r = 0; r < rounds; ++r) {
    auto step = refine(c.mesh, mark(c.mesh, r), {.check_input = false});
    rec.record(step, 0.0);
    c.mesh = step.output;
    c.steps.push_back(std::move(step));
  }
  c.log = rec.log();
  return c;
}

std::vector<CorpusMesh> build() {
  std::vector<CorpusMesh> out;
  for (int p : {3, 5}) {
    const int n = p == 3 ? 6 : 8;
    for (int m : {2, 3, 4, 16}) {
      const Mesh g0 = Mesh::initial({n, n, n}, {p, p, p}, m);
      const std::string tag = "p" + std::to_string(p) + "_m" + std::to_string(m);
      out.push_back(run("corner_" + tag, g0, 3, [](const Mesh& g, int) { return std::vector{corner_element(g)}; }));
      for (int rounds : {1, 2, 3}) {
        out.push_back(run("random" + std::to_string(rounds) + "_" + tag, g0, rounds, [&](const Mesh& g, int r) {
          return random_marking(g, 5, static_cast<std::uint64_t>(1000 * p + 10 * m + 3 * rounds + r));
        }));
      }
      // Planes through the middle of the active region.
      const MadicRational mid(n / 2);
      out.push_back(run("band_x_" + tag, g0, 2, [&](const Mesh& g, int) { return band_marking(g, Axis::x, mid); }));
      out.push_back(run("band_z_" + tag, g0, 1, [&](const Mesh& g, int) { return band_marking(g, Axis::z, mid + MadicRational(1)); }));
      // Just below the centre, so refinement cascades inside the active region.
      const MadicRational c = mid - frac(1, 3, m);
      out.push_back(run("centre_" + tag, g0, 3, [&](const Mesh& g, int) { return std::vector{*g.locate(pt(c, c, c))}; }));
    }
  }
  return out;
}

}  // namespace

const std::vector<CorpusMesh>& corpus() {
  static const std::vector<CorpusMesh> meshes = build();
  return meshes;
}

Mesh cascade(const Mesh& initial, const Point3& point, int times) {
  Mesh g = initial;
  for (int t = 0; t < times; ++t) g = g.subdivide(*g.locate(point));
  return g;
}

const std::vector<NamedMesh>& cascade_meshes() {
  static const std::vector<NamedMesh> meshes = [] {
    std::vector<NamedMesh> out;
    for (int m : {2, 3, 4}) {
      const MadicRational c = MadicRational(3) - frac(1, 3, m);
      for (int t : {2, 3, 4, 5}) {
        out.push_back({"centre_m" + std::to_string(m) + "_t" + std::to_string(t),
                       cascade(Mesh::initial({6, 6, 6}, {3, 3, 3}, m), pt(c, c, c), t)});
      }
    }
    const MadicRational c = MadicRational(4) - frac(1, 3, 2);
    for (int t : {2, 4, 6}) {
      out.push_back({"centre_p5_t" + std::to_string(t), cascade(Mesh::initial({8, 8, 8}, {5, 5, 5}, 2), pt(c, c, c), t)});
    }
    // Off-diagonal point: the cascade is not symmetric in the three axes.
    const MadicRational a = MadicRational(3) - frac(1, 2, 2);
    const MadicRational b = MadicRational(2) + frac(1, 3, 2);
    out.push_back({"skew_m2_t5", cascade(Mesh::initial({6, 6, 6}, {3, 3, 3}, 2), pt(a, b, a), 5)});
    out.push_back({"corner_5cube_t4", cascade(Mesh::initial({5, 5, 5}, {3, 3, 3}, 2), pt(0, 0, 0), 4)});
    return out;
  }();
  return meshes;
}

}  // namespace tmesh::testing
