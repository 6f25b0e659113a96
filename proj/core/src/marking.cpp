#include "tmesh/marking.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "json_coords.hpp"

namespace tmesh {

using nlohmann::json;

namespace {

MadicRational point_coord_from_json(const json& j, int m) {
  if (j.is_array()) return detail::coord_from_json(j, m);
  if (j.is_number_integer()) return MadicRational(static_cast<Int>(j.get<std::int64_t>()));
  if (j.is_number_float()) {
    // Accept decimals only when they are exact m-adic values.
    const double v = j.get<double>();
    double scaled = v;
    for (int e = 0; e <= 40; ++e) {
      if (std::abs(scaled) < 9.0e15 && scaled == std::floor(scaled)) {
        return MadicRational::from_parts(static_cast<Int>(scaled), e, m);
      }
      scaled *= m;
    }
    throw FormatError("point coordinate is not an exact m-adic value: " + j.dump());
  }
  throw FormatError("invalid point coordinate: " + j.dump());
}

}  // namespace

std::vector<Element> parse_marking(const Mesh& mesh, std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& ex) {
    throw FormatError(std::string("invalid JSON: ") + ex.what());
  }
  if (!doc.is_array()) throw FormatError("marking file must be a JSON list of selectors");
  std::vector<Element> marked;
  for (const auto& sel : doc) {
    if (!sel.is_object()) throw FormatError("selector must be an object: " + sel.dump());
    if (sel.contains("point")) {
      const json& jp = sel.at("point");
      if (!jp.is_array() || jp.size() != 3) throw FormatError("point selector needs three coordinates");
      Point3 p{{point_coord_from_json(jp[0], mesh.m()), point_coord_from_json(jp[1], mesh.m()),
                point_coord_from_json(jp[2], mesh.m())}};
      auto e = mesh.locate(p);
      if (!e) throw FormatError("point lies outside the domain: " + p.to_string());
      marked.push_back(*e);
    } else if (sel.contains("lo") && sel.contains("hi")) {
      const Point3 lo = detail::point_from_json(sel.at("lo"), mesh.m());
      const Point3 hi = detail::point_from_json(sel.at("hi"), mesh.m());
      for (int a = 0; a < 3; ++a) {
        if (!(lo[a] < hi[a])) throw FormatError("selector box must have lo < hi: " + sel.dump());
      }
      // An interior point, since lo itself may be a corner shared with
      // elements of smaller lo.
      Point3 inside = lo;
      for (int a = 0; a < 3; ++a) inside[a] = lo[a] + (hi[a] - lo[a]).divide_by_base(mesh.m());
      auto e = mesh.locate(inside);
      if (!e || e->lo != lo || e->hi != hi) {
        Element probe;
        probe.lo = lo;
        probe.hi = hi;
        throw StaleElementError(probe);
      }
      marked.push_back(*e);
    } else {
      throw FormatError("selector needs either \"point\" or \"lo\"/\"hi\": " + sel.dump());
    }
  }
  std::sort(marked.begin(), marked.end());
  marked.erase(std::unique(marked.begin(), marked.end()), marked.end());
  return marked;
}

Element corner_element(const Mesh& mesh) {
  return *mesh.locate(Point3{{MadicRational(0), MadicRational(0), MadicRational(0)}});
}

std::vector<Element> random_marking(const Mesh& mesh, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Element> pool(mesh.elements().begin(), mesh.elements().end());
  count = std::min(count, pool.size());
  for (std::size_t i = 0; i < count; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, pool.size() - 1);
    std::swap(pool[i], pool[pick(rng)]);
  }
  pool.resize(count);
  std::sort(pool.begin(), pool.end());
  return pool;
}

std::vector<Element> band_marking(const Mesh& mesh, Axis axis, const MadicRational& value) {
  const int a = index_of(axis);
  std::vector<Element> hits;
  int finest = -1;
  for (const auto& e : mesh.elements()) {
    if (e.lo[a] <= value && value <= e.hi[a]) {
      hits.push_back(e);
      finest = std::max(finest, e.level);
    }
  }
  std::erase_if(hits, [&](const Element& e) { return e.level != finest; });
  return hits;
}

}  // namespace tmesh
