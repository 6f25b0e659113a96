#pragma once

// Internal helpers shared by the JSON readers and writers of the core library.

#include <limits>
#include <string>

#include "json.hpp"
#include "tmesh/madic.hpp"
#include "tmesh/mesh_io.hpp"

namespace tmesh::detail {

inline nlohmann::json int_to_json(Int value) {
  if (value >= std::numeric_limits<std::int64_t>::min() && value <= std::numeric_limits<std::int64_t>::max()) {
    return static_cast<std::int64_t>(value);
  }
  return to_string(value);
}

inline Int int_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (j.is_number_unsigned()) return static_cast<Int>(j.get<std::uint64_t>());
  if (j.is_string()) {
    try {
      return parse_int(j.get<std::string>());
    } catch (const std::exception& ex) {
      throw FormatError(ex.what());
    }
  }
  throw FormatError("expected an integer numerator, got " + j.dump());
}

inline nlohmann::json coord_to_json(const MadicRational& v) {
  return nlohmann::json::array({int_to_json(v.numerator()), v.exponent()});
}

/// Reads [numerator, exponent]; rejects non-normalized pairs.
inline MadicRational coord_from_json(const nlohmann::json& j, int m) {
  if (!j.is_array() || j.size() != 2 || !j[1].is_number_integer()) {
    throw FormatError("coordinate must be [numerator, exponent], got " + j.dump());
  }
  const Int numerator = int_from_json(j[0]);
  const int exponent = j[1].get<int>();
  if (exponent < 0) throw FormatError("negative coordinate exponent: " + j.dump());
  const MadicRational v = MadicRational::from_parts(numerator, exponent, m);
  if (v.numerator() != numerator || v.exponent() != exponent) {
    throw FormatError("coordinate is not normalized: " + j.dump());
  }
  return v;
}

inline nlohmann::json point_to_json(const Point3& p) {
  return nlohmann::json::array({coord_to_json(p[0]), coord_to_json(p[1]), coord_to_json(p[2])});
}

inline Point3 point_from_json(const nlohmann::json& j, int m) {
  if (!j.is_array() || j.size() != 3) throw FormatError("point must have three coordinates: " + j.dump());
  return Point3{{coord_from_json(j[0], m), coord_from_json(j[1], m), coord_from_json(j[2], m)}};
}

}  // namespace tmesh::detail
