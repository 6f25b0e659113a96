#include "cli.hpp"

#include <cmath>
#include <cstdint>
#include <map>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "CLI11.hpp"
#include "json.hpp"
#include "tmesh/asuit.hpp"
#include "tmesh/complexity.hpp"
#include "tmesh/dual.hpp"
#include "tmesh/marking.hpp"
#include "tmesh/mesh_io.hpp"
#include "tmesh/refine.hpp"

namespace tmesh::cli {

namespace {

using nlohmann::json;

constexpr const char* kVersion = "0.1.0";

json coord(const MadicRational& v) {
  const Int n = v.numerator();
  json num = (n >= INT64_MIN && n <= INT64_MAX) ? json(static_cast<std::int64_t>(n)) : json(to_string(n));
  return json::array({num, v.exponent()});
}

json point(const Point3& p) { return json::array({coord(p[0]), coord(p[1]), coord(p[2])}); }

json element_json(const Element& e) { return {{"lo", point(e.lo)}, {"hi", point(e.hi)}, {"level", e.level}}; }

json plane_union_json(const PlaneUnion& u) {
  json rects = json::array();
  for (const auto& r : u.rects()) rects.push_back(json::array({coord(r.u0), coord(r.u1), coord(r.v0), coord(r.v1)}));
  return rects;
}

void emit(std::ostream& out, const json& j) { out << j.dump() << '\n'; }

void emit_or_write(std::ostream& out, const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    out << text;
  } else {
    write_text_file(path, text);
  }
}

int fail(std::ostream& err, const std::string& kind, const std::string& message, json extra = json::object()) {
  extra["error"] = kind;
  extra["message"] = message;
  err << extra.dump() << '\n';
  return kError;
}

Dims to_dims(const std::vector<int>& v) { return {v[0], v[1], v[2]}; }

// Options shared by several verbs; bound once per run().
struct Args {
  unsigned threads = 1;
  std::uint64_t seed = 1;
  std::string input;
  std::string output;
  std::vector<int> dims{4, 5, 8};
  std::vector<int> p{3, 3, 3};
  int m = 2;
  // refine
  std::string marks;
  std::string log;
  int rounds = 1;
  // check
  std::string what;
  bool regions = false;
  // dualcheck
  double tol = 1e-8;
  std::string csv;
  // rank
  bool duplicate = false;
  // experiment
  std::string experiment;
  int target = 16;
  std::vector<int> m_list{2, 3, 4, 5};
  int steps = 6;
  int count = 5;
  std::string mesh_out;
  // export
  std::string format;
  int samples = 201;
};

int cmd_init(const Args& a, std::ostream& out, std::ostream& err) {
  const Mesh g = Mesh::initial(to_dims(a.dims), to_dims(a.p), a.m);
  if (a.output.empty() || a.output == "-") {
    out << mesh_to_json(g) << '\n';
  } else {
    write_mesh_file(g, a.output);
    emit(out, {{"elements", g.size()}, {"output", a.output}});
  }
  err << "initial mesh with " << g.size() << " elements\n";
  return kOk;
}

int cmd_refine(const Args& a, std::ostream& out, std::ostream& err) {
  Mesh g = read_mesh_file(a.input);
  const std::string marks = read_text_file(a.marks);
  ExperimentRecorder rec(g);
  for (int r = 0; r < a.rounds; ++r) {
    const auto marked = parse_marking(g, marks);
    auto step = refine(g, marked, {.check_input = r == 0});
    rec.record(step, 0.0);
    g = step.output;
  }
  if (a.output.empty() || a.output == "-") {
    out << mesh_to_json(g) << '\n';
  } else {
    write_mesh_file(g, a.output);
    const auto& log = rec.log();
    emit(out, {{"rounds", a.rounds},
               {"elements", g.size()},
               {"marked", log.total_marked()},
               {"subdivided", log.subdivided},
               {"new_elements", log.total_new()},
               {"max_level", g.max_level()}});
  }
  if (!a.log.empty()) write_text_file(a.log, rec.log().to_csv());
  err << "refined " << a.rounds << " round(s): " << g.size() << " elements\n";
  return kOk;
}

json as_witness_json(const AsWitness& w) {
  return {{"axes", json::array({axis_name(w.first), axis_name(w.second)})},
          {"coords", json::array({coord(w.first_coord), coord(w.second_coord)})},
          {"free_axis", axis_name(w.free_axis)},
          {"interval", json::array({coord(w.lo), coord(w.hi)})},
          {"positive_measure", w.positive_measure},
          {"text", w.describe()}};
}

json dc_witness_json(const DcResult& dc) {
  if (!dc.witness) return nullptr;
  return json::array({point(dc.witness->first), point(dc.witness->second)});
}

int cmd_check(const Args& a, std::ostream& out, std::ostream& err) {
  const Mesh g = read_mesh_file(a.input);
  if (a.what == "admissible") {
    const auto report = verify_admissible(g);
    json j{{"admissible", report.admissible}, {"violation", nullptr}};
    if (report.violation) {
      const auto& v = *report.violation;
      j["violation"] = {{"stage", v.stage == AdmissibilityViolation::Stage::quasi_uniformity ? "quasi_uniformity" : "replay"},
                        {"element", element_json(v.element)},
                        {"coarser", element_json(v.coarser)},
                        {"text", v.describe()}};
    } else {
      j["replay_steps"] = report.replay.size();
    }
    emit(out, j);
    return report.admissible ? kOk : kCheckFailed;
  }
  const Topology topo(g);
  if (a.what == "as") {
    const auto res = is_analysis_suitable(topo, a.threads);
    json j{{"as", res.analysis_suitable}, {"witness", res.witness ? as_witness_json(*res.witness) : json(nullptr)}};
    if (a.regions) {
      json regions = json::array();
      for (const auto& region : perturbed_regions(topo, a.threads)) {
        for (const auto& [q, u] : region.slices) {
          regions.push_back({{"axis", axis_name(region.axis)}, {"coord", coord(q)}, {"rects", plane_union_json(u)}});
        }
      }
      j["regions"] = regions;
    }
    emit(out, j);
    if (!res.analysis_suitable) err << "not analysis-suitable: " << res.witness->describe() << '\n';
    return res.analysis_suitable ? kOk : kCheckFailed;
  }
  const auto dc = is_dual_compatible(topo, a.threads);
  emit(out, {{"dc", dc.dual_compatible}, {"witness", dc_witness_json(dc)}, {"pairs_checked", dc.pairs_checked}});
  return dc.dual_compatible ? kOk : kCheckFailed;
}

int cmd_dualcheck(const Args& a, std::ostream& out, std::ostream& err) {
  const Mesh g = read_mesh_file(a.input);
  const Topology topo(g);
  try {
    const auto res = dual_basis_check(topo, {.tolerance = a.tol, .threads = a.threads, .record_values = !a.csv.empty()});
    const auto nodes = topo.active_nodes();
    emit(out, {{"pass", res.pass},
               {"max_error", res.max_error},
               {"tolerance", res.tolerance},
               {"worst", json::array({point(nodes[res.worst.first]), point(nodes[res.worst.second])})},
               {"pairs_evaluated", res.pairs_evaluated},
               {"nodes", topo.node_count()}});
    if (!a.csv.empty()) {
      std::ostringstream csv;
      csv.precision(17);
      csv << "v,w,lambda\n";
      for (const auto& t : res.values) csv << t.v << ',' << t.w << ',' << t.value << '\n';
      write_text_file(a.csv, csv.str());
    }
    return res.pass ? kOk : kCheckFailed;
  } catch (const NotDualCompatible& ex) {
    emit(out, {{"pass", false}, {"refused", "not dual-compatible"}, {"dc", false}, {"witness", dc_witness_json(ex.result)}});
    err << "refusing: the mesh is not dual-compatible\n";
    return kCheckFailed;
  }
}

int cmd_rank(const Args& a, std::ostream& out, std::ostream&) {
  const Mesh g = read_mesh_file(a.input);
  const Topology topo(g);
  std::vector<BlendingFunction> fns;
  for (std::size_t i = 0; i < topo.node_count(); ++i) fns.push_back(topo.blending_function(i));
  if (a.duplicate && !fns.empty()) fns.push_back(fns.front());
  const auto r = rank_oracle(topo, fns, a.threads);
  emit(out, {{"rank", r.rank},
             {"columns", r.columns},
             {"full_rank", r.full_rank()},
             {"deficiency", r.deficiency()},
             {"samples", r.samples},
             {"sigma_max", r.sigma_max},
             {"threshold", r.threshold}});
  return r.full_rank() ? kOk : kCheckFailed;
}

void report_bound(const ExperimentLog& log, std::ostream& err) {
  const auto c = constants(log.params.p, log.params.m);
  const auto b = bound_check(log, c);
  err << "m=" << log.params.m << " steps=" << log.steps.size() << " new=" << log.total_new()
      << " marked=" << log.total_marked() << " ratio=" << b.observed_ratio << " C=" << b.bound
      << " ratio/C=" << b.fraction_of_bound << (b.below_c_over_3000 ? " (below C/3000)" : "") << '\n';
}

int cmd_experiment(const Args& a, std::ostream& out, std::ostream& err) {
  if (a.experiment == "corner") {
    Mesh final_mesh = Mesh::initial({1, 1, 1}, to_dims(a.p), a.m);
    const auto log = corner_experiment(to_dims(a.dims), to_dims(a.p), a.m, a.target, &final_mesh);
    emit_or_write(out, a.output, log.to_csv());
    if (!a.mesh_out.empty()) write_mesh_file(final_mesh, a.mesh_out);
    report_bound(log, err);
    return kOk;
  }
  if (a.experiment == "random") {
    Mesh final_mesh = Mesh::initial({1, 1, 1}, to_dims(a.p), a.m);
    const auto log = random_experiment(Mesh::initial(to_dims(a.dims), to_dims(a.p), a.m), static_cast<std::size_t>(a.rounds),
                                       static_cast<std::size_t>(a.count), a.seed, &final_mesh);
    emit_or_write(out, a.output, log.to_csv());
    if (!a.mesh_out.empty()) write_mesh_file(final_mesh, a.mesh_out);
    err << "seed=" << a.seed << '\n';
    report_bound(log, err);
    return kOk;
  }
  // ratio
  std::ostringstream csv;
  csv.precision(17);
  csv << "m,step,running_max,C\n";
  for (int m : a.m_list) {
    const auto series = estimate_experimental_constant(to_dims(a.dims), to_dims(a.p), m, static_cast<std::size_t>(a.steps));
    const double c = constants(to_dims(a.p), m).C;
    for (std::size_t j = 0; j < series.size(); ++j) csv << m << ',' << j + 1 << ',' << series[j] << ',' << c << '\n';
  }
  emit_or_write(out, a.output, csv.str());
  return kOk;
}

int cmd_constants(const Args& a, std::ostream& out, std::ostream&) {
  const auto c = constants(to_dims(a.p), a.m);
  emit(out, {{"p", a.p},
             {"m", a.m},
             {"d1", c.d1},
             {"d2", c.d2},
             {"d3", c.d3},
             {"C", c.C},
             {"p_tilde", c.p_tilde},
             {"s", c.s}});
  return kOk;
}

std::string vtk(const Mesh& g) {
  std::map<Point3, std::size_t> ids;
  std::vector<const Point3*> order;
  std::vector<std::array<std::size_t, 8>> cells;
  for (const auto& e : g.elements()) {
    std::array<std::size_t, 8> cell{};
    // VTK_HEXAHEDRON: bottom face counter-clockwise, then top face.
    constexpr int corners[8][3] = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0},
                                   {0, 0, 1}, {1, 0, 1}, {1, 1, 1}, {0, 1, 1}};
    for (int c = 0; c < 8; ++c) {
      Point3 p;
      for (int a = 0; a < 3; ++a) p[a] = corners[c][a] ? e.hi[a] : e.lo[a];
      auto [it, fresh] = ids.emplace(p, ids.size());
      if (fresh) order.push_back(&it->first);
      cell[static_cast<std::size_t>(c)] = it->second;
    }
    cells.push_back(cell);
  }
  std::ostringstream s;
  s.precision(17);
  s << "# vtk DataFile Version 3.0\ntmesh m=" << g.m() << "\nASCII\nDATASET UNSTRUCTURED_GRID\n";
  s << "POINTS " << order.size() << " double\n";
  for (const Point3* p : order) {
    const auto d = p->to_double();
    s << d[0] << ' ' << d[1] << ' ' << d[2] << '\n';
  }
  s << "CELLS " << cells.size() << ' ' << cells.size() * 9 << '\n';
  for (const auto& c : cells) {
    s << 8;
    for (auto i : c) s << ' ' << i;
    s << '\n';
  }
  s << "CELL_TYPES " << cells.size() << '\n';
  for (std::size_t i = 0; i < cells.size(); ++i) s << "12\n";
  s << "CELL_DATA " << cells.size() << "\nSCALARS level int 1\nLOOKUP_TABLE default\n";
  for (const auto& e : g.elements()) s << e.level << '\n';
  return s.str();
}

int cmd_export(const Args& a, std::ostream& out, std::ostream&) {
  if (a.format == "perfect-bspline") {
    const int p = a.p[0];
    const auto b = perfect_bspline(p);
    const auto anti = b.antiderivative();
    std::ostringstream csv;
    csv.precision(17);
    csv << "x,value,antiderivative\n";
    const int n = std::max(2, a.samples);
    for (int i = 0; i < n; ++i) {
      const double x = -1.0 + 2.0 * i / (n - 1);
      csv << x << ',' << b(x) << ',' << anti(x) << '\n';
    }
    emit_or_write(out, a.output, csv.str());
    return kOk;
  }
  const Mesh g = read_mesh_file(a.input);
  if (a.format == "vtk") {
    emit_or_write(out, a.output, vtk(g));
    return kOk;
  }
  json list = json::array();
  if (a.format == "skeleton") {
    for (const auto& sk : skeletons(g)) {
      for (const auto& [c, u] : sk.faces) {
        list.push_back({{"axis", axis_name(sk.axis)}, {"coord", coord(c)}, {"rects", plane_union_json(u)}});
      }
    }
  } else {  // index
    const Topology topo(g);
    for (std::size_t i = 0; i < topo.node_count(); ++i) {
      const auto v = topo.local_index_vectors(i);
      json node{{"node", point(topo.active_nodes()[i])}};
      for (const auto& x : v) {
        json entries = json::array();
        for (const auto& e : x.entries) entries.push_back(coord(e));
        node[axis_name(x.axis)] = entries;
      }
      list.push_back(node);
    }
  }
  emit_or_write(out, a.output, list.dump() + "\n");
  return kOk;
}

int cmd_stats(const Args& a, std::ostream& out, std::ostream&) {
  const Mesh g = read_mesh_file(a.input);
  std::map<int, std::size_t> levels;
  for (const auto& e : g.elements()) ++levels[e.level];
  json hist = json::object();
  for (const auto& [l, n] : levels) hist[std::to_string(l)] = n;
  std::size_t active = 0;
  if (!ActiveRegion::of(g.params()).empty()) active = Topology(g).node_count();
  emit(out, {{"elements", g.size()},
             {"m", g.m()},
             {"p", g.degree()},
             {"dims", g.dims()},
             {"max_level", g.max_level()},
             {"levels", hist},
             {"active_nodes", active}});
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Args a;
  CLI::App app{"Local refinement of three-dimensional T-meshes with adjustable grading", "tmesh"};
  app.set_version_flag("--version", kVersion);
  app.add_option("--threads", a.threads, "Worker threads for checks and assembly")->check(CLI::PositiveNumber);
  app.add_option("--seed", a.seed, "Seed for random markings")->capture_default_str();
  app.require_subcommand(1);
  app.fallthrough();

  const auto dims_opt = [&](CLI::App* c) { c->add_option("--dims", a.dims, "Initial grid size X Y Z")->expected(3)->capture_default_str(); };
  const auto p_opt = [&](CLI::App* c) { c->add_option("--p", a.p, "Odd degrees p1 p2 p3")->expected(3)->capture_default_str(); };
  const auto m_opt = [&](CLI::App* c) { c->add_option("--m", a.m, "Grading parameter")->capture_default_str(); };
  const auto in_opt = [&](CLI::App* c) { c->add_option("-i,--input", a.input, "Mesh JSON")->required(); };
  const auto out_opt = [&](CLI::App* c) { c->add_option("-o,--output", a.output, "Output file (default stdout)"); };

  auto* init = app.add_subcommand("init", "Write the initial tensor-product mesh");
  dims_opt(init);
  p_opt(init);
  m_opt(init);
  out_opt(init);

  auto* refine_cmd = app.add_subcommand("refine", "Refine a mesh with a marking file");
  in_opt(refine_cmd);
  refine_cmd->add_option("--marks", a.marks, "Marking JSON")->required();
  out_opt(refine_cmd);
  refine_cmd->add_option("--log", a.log, "Per-round CSV log");
  refine_cmd->add_option("--rounds", a.rounds, "Resolve the marking and refine this many times")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  auto* check = app.add_subcommand("check", "Run a mesh check; exit 2 on failure");
  check->add_option("what", a.what, "as | dc | admissible | dual | rank")
      ->required()
      ->check(CLI::IsMember({"as", "dc", "admissible", "dual", "rank"}));
  in_opt(check);
  check->add_flag("--regions", a.regions, "Include perturbed regions (as only)");
  check->add_option("--tol", a.tol, "Tolerance (dual only)")->capture_default_str();

  auto* dualcheck = app.add_subcommand("dualcheck", "Verify the dual-functional delta property");
  in_opt(dualcheck);
  dualcheck->add_option("--tol", a.tol, "Tolerance")->capture_default_str();
  dualcheck->add_option("--csv", a.csv, "Dump v,w,lambda triples");

  auto* rank = app.add_subcommand("rank", "Numerical rank of the sampled blending functions");
  in_opt(rank);
  rank->add_flag("--duplicate", a.duplicate, "Append a copy of the first function (control)");

  auto* experiment = app.add_subcommand("experiment", "Run a refinement experiment; CSV output");
  experiment->add_option("kind", a.experiment, "corner | ratio | random")
      ->required()
      ->check(CLI::IsMember({"corner", "ratio", "random"}));
  dims_opt(experiment);
  p_opt(experiment);
  m_opt(experiment);
  out_opt(experiment);
  experiment->add_option("--target", a.target, "corner: stop at side length 1/target")->capture_default_str();
  experiment->add_option("--m-list", a.m_list, "ratio: grading parameters")->capture_default_str();
  experiment->add_option("--steps", a.steps, "ratio: corner refinements per m")->capture_default_str();
  experiment->add_option("--rounds", a.rounds, "random: refinement rounds")->capture_default_str();
  experiment->add_option("--count", a.count, "random: elements marked per round")->capture_default_str();
  experiment->add_option("--mesh-out", a.mesh_out, "Write the final mesh");

  auto* constants_cmd = app.add_subcommand("constants", "Complexity constants d1, d2, d3 and C");
  p_opt(constants_cmd);
  m_opt(constants_cmd);

  auto* export_cmd = app.add_subcommand("export", "Export plot data");
  export_cmd->add_option("format", a.format, "vtk | skeleton | index | perfect-bspline")
      ->required()
      ->check(CLI::IsMember({"vtk", "skeleton", "index", "perfect-bspline"}));
  export_cmd->add_option("-i,--input", a.input, "Mesh JSON");
  out_opt(export_cmd);
  p_opt(export_cmd);
  export_cmd->add_option("--samples", a.samples, "perfect-bspline: sample count")->capture_default_str();

  auto* stats = app.add_subcommand("stats", "Element count, level histogram, active nodes");
  in_opt(stats);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kOk;
    }
    return fail(err, "usage", e.what());
  }

  const auto* sub = app.get_subcommands().front();
  try {
    if (sub == export_cmd && a.format != "perfect-bspline" && a.input.empty()) {
      return fail(err, "usage", "export " + a.format + " needs --input");
    }
    if ((a.dims.size() != 3) || (a.p.size() != 3)) return fail(err, "usage", "--dims and --p take three values");
    if (sub == init) return cmd_init(a, out, err);
    if (sub == refine_cmd) return cmd_refine(a, out, err);
    if (sub == check && a.what == "dual") return cmd_dualcheck(a, out, err);
    if (sub == check && a.what == "rank") return cmd_rank(a, out, err);
    if (sub == check) return cmd_check(a, out, err);
    if (sub == dualcheck) return cmd_dualcheck(a, out, err);
    if (sub == rank) return cmd_rank(a, out, err);
    if (sub == experiment) return cmd_experiment(a, out, err);
    if (sub == constants_cmd) return cmd_constants(a, out, err);
    if (sub == export_cmd) return cmd_export(a, out, err);
    return cmd_stats(a, out, err);
  } catch (const FormatError& ex) {
    return fail(err, "format", ex.what());
  } catch (const StaleElementError& ex) {
    return fail(err, "stale_element", ex.what(), {{"element", element_json(ex.element)}});
  } catch (const NonAdmissibleMeshError& ex) {
    return fail(err, "not_admissible", ex.what(), {{"element", element_json(ex.violation.element)}});
  } catch (const StructuralError& ex) {
    return fail(err, "structural", ex.what());
  } catch (const MeshError& ex) {
    return fail(err, "mesh", ex.what());
  } catch (const ComplexityBoundViolation& ex) {
    return fail(err, "bound_violation", ex.what());
  } catch (const std::overflow_error& ex) {
    return fail(err, "overflow", ex.what());
  } catch (const std::exception& ex) {
    return fail(err, "internal", ex.what());
  }
}

}  // namespace tmesh::cli
