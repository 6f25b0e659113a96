#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "tmesh/madic.hpp"

namespace tmesh {

using Dims = std::array<int, 3>;
using Degree = std::array<int, 3>;
using Vec3 = std::array<MadicRational, 3>;
using HalfVec3 = std::array<HalfMadic, 3>;

/// Closed axis-aligned box [lo, hi] carrying its refinement level.
/// Identity is the exact box; the level is redundant with the volume
/// (|K| = m^-level) but kept for cheap access.
struct Element {
  Point3 lo;
  Point3 hi;
  int level = 0;

  /// Lexicographic on (lo, level).
  std::strong_ordering operator<=>(const Element& other) const {
    if (auto c = lo <=> other.lo; c != 0) return c;
    return level <=> other.level;
  }
  bool operator==(const Element& other) const { return lo == other.lo && level == other.level && hi == other.hi; }

  Vec3 extent() const { return {hi[0] - lo[0], hi[1] - lo[1], hi[2] - lo[2]}; }
  /// lo + hi, i.e. twice the midpoint.
  Vec3 doubled_midpoint() const { return {lo[0] + hi[0], lo[1] + hi[1], lo[2] + hi[2]}; }
  bool contains(const Point3& p) const;
  /// Closed boxes share at least one point.
  bool touches(const Element& other) const;
  /// Interiors overlap.
  bool overlaps(const Element& other) const;
  std::string to_string() const;
};

struct ElementHash {
  std::size_t operator()(const Element& e) const;
};

/// Axis cut by the subdivision of an element of this level: x, y, z cyclically.
constexpr int subdivision_axis(int level) { return level % 3; }

/// Side lengths of any element of level k.
Vec3 size_of_level(int k, int m);

/// Child slabs of `element` in the direction selected by its level.
std::vector<Element> child(const Element& element, int m);

/// Parent of an element of level >= 1.
Element parent(const Element& element, int m);

/// Componentwise |mid(a) - mid(b)|.
HalfVec3 dist(const Element& a, const Element& b);
/// Componentwise |mid(a) - point|.
HalfVec3 dist(const Element& a, const Point3& point);

/// Half-widths D(k) of the open environment U(K) for an element of level k.
HalfVec3 patch_radius(int k, const Degree& p, int m);

/// The open box U(K) = {x : |mid(K) - x| < D(level)} in doubled coordinates.
struct Environment {
  Vec3 lo2;
  Vec3 hi2;

  /// Closed `box` meets the open box.
  bool meets(const Element& box) const;
};

Environment environment_of(const Element& element, const Degree& p, int m);

}  // namespace tmesh
