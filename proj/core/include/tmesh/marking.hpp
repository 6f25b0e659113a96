#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "tmesh/mesh.hpp"

namespace tmesh {

// Marking files are JSON lists of selectors:
//   {"lo":[[n,e],...],"hi":[[n,e],...]}  an exact element box, or
//   {"point":[x,y,z]}                    the element whose closed box contains
//                                        the point (smallest lo on ties).
// Point coordinates may be [n,e] pairs, integers, or decimals that are exact
// m-adic values.

/// Resolves a marking file against `mesh`. Throws FormatError / StaleElementError.
std::vector<Element> parse_marking(const Mesh& mesh, std::string_view json_text);

/// The element containing the origin corner.
Element corner_element(const Mesh& mesh);

/// `count` distinct elements drawn uniformly with a seeded generator.
std::vector<Element> random_marking(const Mesh& mesh, std::size_t count, std::uint64_t seed);

/// Elements whose closed box meets the plane {axis = value}, restricted to the
/// finest level present among them.
std::vector<Element> band_marking(const Mesh& mesh, Axis axis, const MadicRational& value);

}  // namespace tmesh
