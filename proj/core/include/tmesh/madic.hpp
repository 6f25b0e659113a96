#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace tmesh {

/// Signed 128-bit integer used for coordinate numerators. All arithmetic on it
/// goes through the checked helpers below and throws std::overflow_error
/// instead of wrapping.
using Int = __int128;

Int checked_add(Int a, Int b);
Int checked_sub(Int a, Int b);
Int checked_mul(Int a, Int b);
/// base^exponent, checked.
Int int_pow(int base, int exponent);

std::string to_string(Int value);
/// Parses an optionally signed decimal integer. Throws std::invalid_argument.
Int parse_int(std::string_view text);

/// An exact value numerator / base^exponent in normalized form: either the
/// exponent is zero or the numerator is not divisible by the base.
///
/// Every coordinate produced by cyclic m-fold subdivision of integer cubes is
/// of this form with base = m. Integers (exponent 0) are compatible with any
/// base, so literals such as 0 or the domain extent mix freely with values of
/// a particular mesh. Mixing two fractional values of different bases throws.
class MadicRational {
 public:
  MadicRational() = default;
  /// The integer `value` (exponent 0).
  MadicRational(Int value) : numerator_(value) {}  // NOLINT(runtime/explicit)
  MadicRational(int value) : numerator_(value) {}  // NOLINT(runtime/explicit)

  /// numerator / base^exponent, normalized. Requires base >= 2 when
  /// exponent > 0 and exponent >= 0.
  static MadicRational from_parts(Int numerator, int exponent, int base);
  /// base^-exponent.
  static MadicRational unit_fraction(int base, int exponent) {
    return from_parts(1, exponent, base);
  }

  Int numerator() const { return numerator_; }
  int exponent() const { return exponent_; }
  /// Zero for integers.
  int base() const { return exponent_ == 0 ? 0 : base_; }
  bool is_integer() const { return exponent_ == 0; }
  bool is_zero() const { return numerator_ == 0; }
  int sign() const { return numerator_ > 0 ? 1 : (numerator_ < 0 ? -1 : 0); }

  MadicRational operator+(const MadicRational& other) const;
  MadicRational operator-(const MadicRational& other) const;
  MadicRational operator-() const;
  MadicRational operator*(Int factor) const;
  MadicRational& operator+=(const MadicRational& other) { return *this = *this + other; }
  MadicRational& operator-=(const MadicRational& other) { return *this = *this - other; }

  /// this / base^times.
  MadicRational divide_by_base(int base, int times = 1) const;
  /// Largest value <= this with exponent <= `exponent` (a multiple of
  /// base^-exponent).
  MadicRational floor_to(int base, int exponent) const;
  MadicRational abs() const { return numerator_ < 0 ? -*this : *this; }

  double to_double() const;
  std::string to_string() const;

  std::strong_ordering operator<=>(const MadicRational& other) const;
  /// Throws like the arithmetic when both values are fractional in
  /// different bases.
  bool operator==(const MadicRational& other) const {
    if (exponent_ != 0 && other.exponent_ != 0 && base_ != other.base_) common_base(*this, other);
    return numerator_ == other.numerator_ && exponent_ == other.exponent_;
  }

  std::size_t hash() const;

 private:
  MadicRational(Int numerator, int exponent, int base)
      : numerator_(numerator), exponent_(exponent), base_(base) {}

  void normalize();
  static int common_base(const MadicRational& a, const MadicRational& b);

  Int numerator_ = 0;
  int exponent_ = 0;
  int base_ = 0;
};

inline MadicRational min(const MadicRational& a, const MadicRational& b) { return b < a ? b : a; }
inline MadicRational max(const MadicRational& a, const MadicRational& b) { return a < b ? b : a; }

/// A value stored as twice itself. Midpoints and patch radii contain halves,
/// which are not m-adic for odd m; comparing doubled values keeps everything
/// exact.
struct HalfMadic {
  MadicRational twice;

  static HalfMadic from_value(const MadicRational& value) { return {value * 2}; }
  double to_double() const { return twice.to_double() / 2.0; }
  std::string to_string() const;

  std::strong_ordering operator<=>(const HalfMadic& other) const { return twice <=> other.twice; }
  bool operator==(const HalfMadic& other) const = default;
};

enum class Axis : int { x = 0, y = 1, z = 2 };

constexpr int index_of(Axis axis) { return static_cast<int>(axis); }
constexpr Axis axis_from_index(int i) { return static_cast<Axis>(i); }
const char* axis_name(Axis axis);
/// The two remaining axes in increasing order: x -> (y,z), y -> (x,z), z -> (x,y).
constexpr std::array<int, 2> other_axes(int axis) {
  return axis == 0 ? std::array<int, 2>{1, 2}
                   : (axis == 1 ? std::array<int, 2>{0, 2} : std::array<int, 2>{0, 1});
}

struct Point3 {
  std::array<MadicRational, 3> c;

  const MadicRational& operator[](int i) const { return c[static_cast<std::size_t>(i)]; }
  MadicRational& operator[](int i) { return c[static_cast<std::size_t>(i)]; }
  const MadicRational& x() const { return c[0]; }
  const MadicRational& y() const { return c[1]; }
  const MadicRational& z() const { return c[2]; }

  std::array<double, 3> to_double() const { return {c[0].to_double(), c[1].to_double(), c[2].to_double()}; }
  std::string to_string() const;

  auto operator<=>(const Point3& other) const = default;
  bool operator==(const Point3& other) const = default;
};

struct Point3Hash {
  std::size_t operator()(const Point3& p) const;
};

}  // namespace tmesh
