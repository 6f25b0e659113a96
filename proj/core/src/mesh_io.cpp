#include "tmesh/mesh_io.hpp"

#include <fstream>
#include <sstream>

#include "json_coords.hpp"

namespace tmesh {

using nlohmann::json;

std::string mesh_to_json(const Mesh& mesh) {
  json elements = json::array();
  for (const auto& e : mesh.elements()) {
    elements.push_back({{"lo", detail::point_to_json(e.lo)}, {"hi", detail::point_to_json(e.hi)}, {"level", e.level}});
  }
  json doc = {{"m", mesh.m()},
              {"p", {mesh.degree()[0], mesh.degree()[1], mesh.degree()[2]}},
              {"dims", {mesh.dims()[0], mesh.dims()[1], mesh.dims()[2]}},
              {"elements", std::move(elements)}};
  return doc.dump();
}

namespace {

std::array<int, 3> int3_from_json(const json& doc, const char* key) {
  if (!doc.contains(key)) throw FormatError(std::string("missing field \"") + key + "\"");
  const json& j = doc.at(key);
  if (!j.is_array() || j.size() != 3) throw FormatError(std::string("field \"") + key + "\" must be a 3-array");
  std::array<int, 3> out{};
  for (std::size_t i = 0; i < 3; ++i) {
    if (!j[i].is_number_integer()) throw FormatError(std::string("field \"") + key + "\" must hold integers");
    out[i] = j[i].get<int>();
  }
  return out;
}

}  // namespace

Mesh mesh_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& ex) {
    throw FormatError(std::string("invalid JSON: ") + ex.what());
  }
  if (!doc.is_object()) throw FormatError("mesh document must be a JSON object");
  if (!doc.contains("m") || !doc.at("m").is_number_integer()) throw FormatError("missing integer field \"m\"");
  MeshParams params;
  params.m = doc.at("m").get<int>();
  params.p = int3_from_json(doc, "p");
  params.dims = int3_from_json(doc, "dims");
  params.validate();
  if (!doc.contains("elements") || !doc.at("elements").is_array()) throw FormatError("missing array \"elements\"");

  std::vector<Element> elements;
  elements.reserve(doc.at("elements").size());
  for (const auto& je : doc.at("elements")) {
    if (!je.is_object() || !je.contains("lo") || !je.contains("hi") || !je.contains("level") ||
        !je.at("level").is_number_integer()) {
      throw FormatError("element must have lo, hi and integer level: " + je.dump());
    }
    Element e;
    e.lo = detail::point_from_json(je.at("lo"), params.m);
    e.hi = detail::point_from_json(je.at("hi"), params.m);
    e.level = je.at("level").get<int>();
    if (!elements.empty() && !(elements.back() < e)) {
      throw FormatError("elements are not sorted by (lo, level): " + e.to_string());
    }
    elements.push_back(std::move(e));
  }
  return Mesh::from_elements(params, std::move(elements));
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write file: " + path);
  out << text;
}

void write_mesh_file(const Mesh& mesh, const std::string& path) { write_text_file(path, mesh_to_json(mesh) + "\n"); }

Mesh read_mesh_file(const std::string& path) { return mesh_from_json(read_text_file(path)); }

}  // namespace tmesh
