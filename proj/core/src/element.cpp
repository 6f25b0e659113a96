#include "tmesh/element.hpp"

#include <stdexcept>

namespace tmesh {

bool Element::contains(const Point3& p) const {
  for (int i = 0; i < 3; ++i) {
    if (p[i] < lo[i] || hi[i] < p[i]) return false;
  }
  return true;
}

bool Element::touches(const Element& other) const {
  for (int i = 0; i < 3; ++i) {
    if (hi[i] < other.lo[i] || other.hi[i] < lo[i]) return false;
  }
  return true;
}

bool Element::overlaps(const Element& other) const {
  for (int i = 0; i < 3; ++i) {
    if (!(lo[i] < other.hi[i] && other.lo[i] < hi[i])) return false;
  }
  return true;
}

std::string Element::to_string() const {
  return "[" + lo.to_string() + " .. " + hi.to_string() + ", level " + std::to_string(level) + "]";
}

std::size_t ElementHash::operator()(const Element& e) const {
  std::size_t h = Point3Hash{}(e.lo);
  h ^= static_cast<std::size_t>(e.level) * 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

namespace {

// Exponent of base m in each side length of a level-k element.
std::array<int, 3> size_exponents(int k) {
  const int full = k / 3;
  const int rem = k % 3;
  std::array<int, 3> e{full, full, full};
  for (int i = 0; i < rem; ++i) ++e[static_cast<std::size_t>(i)];
  return e;
}

}  // namespace

Vec3 size_of_level(int k, int m) {
  if (k < 0) throw std::invalid_argument("size_of_level: negative level");
  const auto e = size_exponents(k);
  return {MadicRational::unit_fraction(m, e[0]), MadicRational::unit_fraction(m, e[1]),
          MadicRational::unit_fraction(m, e[2])};
}

std::vector<Element> child(const Element& element, int m) {
  const int axis = subdivision_axis(element.level);
  const MadicRational step = (element.hi[axis] - element.lo[axis]).divide_by_base(m);
  std::vector<Element> children;
  children.reserve(static_cast<std::size_t>(m));
  MadicRational cursor = element.lo[axis];
  for (int j = 0; j < m; ++j) {
    Element c = element;
    c.level = element.level + 1;
    c.lo[axis] = cursor;
    cursor = (j + 1 == m) ? element.hi[axis] : cursor + step;
    c.hi[axis] = cursor;
    children.push_back(c);
  }
  return children;
}

Element parent(const Element& element, int m) {
  if (element.level < 1) throw std::invalid_argument("parent: level-0 elements have no parent");
  const int axis = subdivision_axis(element.level - 1);
  const auto e = size_exponents(element.level - 1);
  Element p = element;
  p.level = element.level - 1;
  p.lo[axis] = element.lo[axis].floor_to(m, e[static_cast<std::size_t>(axis)]);
  p.hi[axis] = p.lo[axis] + MadicRational::unit_fraction(m, e[static_cast<std::size_t>(axis)]);
  return p;
}

HalfVec3 dist(const Element& a, const Element& b) {
  const Vec3 ma = a.doubled_midpoint();
  const Vec3 mb = b.doubled_midpoint();
  return {HalfMadic{(ma[0] - mb[0]).abs()}, HalfMadic{(ma[1] - mb[1]).abs()}, HalfMadic{(ma[2] - mb[2]).abs()}};
}

HalfVec3 dist(const Element& a, const Point3& point) {
  const Vec3 ma = a.doubled_midpoint();
  HalfVec3 d;
  for (int i = 0; i < 3; ++i) d[static_cast<std::size_t>(i)] = HalfMadic{(ma[i] - point[i] * 2).abs()};
  return d;
}

HalfVec3 patch_radius(int k, const Degree& p, int m) {
  if (k < 0) throw std::invalid_argument("patch_radius: negative level");
  // 2 D(k)_i = (2 p_i + 3) m^-e_i where e_i follows the size exponents.
  const auto e = size_exponents(k);
  HalfVec3 d;
  for (std::size_t i = 0; i < 3; ++i) {
    d[i] = HalfMadic{MadicRational::from_parts(2 * p[i] + 3, e[i], m)};
  }
  return d;
}

bool Environment::meets(const Element& box) const {
  for (int i = 0; i < 3; ++i) {
    if (!(box.lo[i] * 2 < hi2[i] && lo2[i] < box.hi[i] * 2)) return false;
  }
  return true;
}

Environment environment_of(const Element& element, const Degree& p, int m) {
  const Vec3 mid2 = element.doubled_midpoint();
  const HalfVec3 d = patch_radius(element.level, p, m);
  Environment env;
  for (std::size_t i = 0; i < 3; ++i) {
    env.lo2[i] = mid2[i] - d[i].twice;
    env.hi2[i] = mid2[i] + d[i].twice;
  }
  return env;
}

}  // namespace tmesh
