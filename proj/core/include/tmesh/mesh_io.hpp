#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

#include "tmesh/mesh.hpp"

namespace tmesh {

/// Malformed or non-canonical serialized data.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Canonical mesh JSON:
//   {"m":3,"p":[3,3,3],"dims":[4,5,8],
//    "elements":[{"lo":[[n,e],[n,e],[n,e]],"hi":[...],"level":0}, ...]}
// A coordinate [n,e] means n/m^e in normalized form. n is a JSON integer when
// it fits in 64 bits and a decimal string otherwise. Elements are sorted by
// (lo, level).

std::string mesh_to_json(const Mesh& mesh);
/// Parses and validates. Throws FormatError for syntax/canonical-form problems
/// and MeshError for geometric invariant violations.
Mesh mesh_from_json(std::string_view text);

void write_mesh_file(const Mesh& mesh, const std::string& path);
Mesh read_mesh_file(const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view text);

}  // namespace tmesh
