#include "tmesh/madic.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace tmesh {

Int checked_add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("128-bit coordinate overflow in addition");
  return r;
}

Int checked_sub(Int a, Int b) {
  Int r;
  if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("128-bit coordinate overflow in subtraction");
  return r;
}

Int checked_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("128-bit coordinate overflow in multiplication");
  return r;
}

Int int_pow(int base, int exponent) {
  if (exponent < 0) throw std::invalid_argument("int_pow: negative exponent");
  Int result = 1;
  for (int i = 0; i < exponent; ++i) result = checked_mul(result, base);
  return result;
}

std::string to_string(Int value) {
  if (value == 0) return "0";
  const bool negative = value < 0;
  // Work with negative magnitudes so that the minimum value is representable.
  std::string digits;
  Int v = negative ? value : -value;
  while (v != 0) {
    digits.push_back(static_cast<char>('0' - static_cast<int>(v % 10)));
    v /= 10;
  }
  if (negative) digits.push_back('-');
  std::reverse(digits.begin(), digits.end());
  return digits;
}

Int parse_int(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty integer literal");
  bool negative = false;
  std::size_t i = 0;
  if (text[0] == '-' || text[0] == '+') {
    negative = text[0] == '-';
    i = 1;
  }
  if (i == text.size()) throw std::invalid_argument("malformed integer literal");
  Int value = 0;
  for (; i < text.size(); ++i) {
    const char ch = text[i];
    if (ch < '0' || ch > '9') throw std::invalid_argument("malformed integer literal: " + std::string(text));
    value = checked_sub(checked_mul(value, 10), ch - '0');
  }
  return negative ? value : checked_sub(0, value);
}

MadicRational MadicRational::from_parts(Int numerator, int exponent, int base) {
  if (exponent < 0) throw std::invalid_argument("MadicRational: negative exponent");
  if (exponent > 0 && base < 2) throw std::invalid_argument("MadicRational: base must be >= 2");
  MadicRational r(numerator, exponent, exponent > 0 ? base : 0);
  r.normalize();
  return r;
}

void MadicRational::normalize() {
  if (numerator_ == 0) {
    exponent_ = 0;
  }
  while (exponent_ > 0 && numerator_ % base_ == 0) {
    numerator_ /= base_;
    --exponent_;
  }
  if (exponent_ == 0) base_ = 0;
}

int MadicRational::common_base(const MadicRational& a, const MadicRational& b) {
  if (a.exponent_ == 0) return b.base_;
  if (b.exponent_ == 0) return a.base_;
  if (a.base_ != b.base_) throw std::invalid_argument("MadicRational: mixing values of different bases");
  return a.base_;
}

MadicRational MadicRational::operator+(const MadicRational& other) const {
  const int base = common_base(*this, other);
  if (exponent_ == other.exponent_) return from_parts(checked_add(numerator_, other.numerator_), exponent_, base);
  if (exponent_ < other.exponent_) {
    const Int scaled = checked_mul(numerator_, int_pow(base, other.exponent_ - exponent_));
    return from_parts(checked_add(scaled, other.numerator_), other.exponent_, base);
  }
  const Int scaled = checked_mul(other.numerator_, int_pow(base, exponent_ - other.exponent_));
  return from_parts(checked_add(numerator_, scaled), exponent_, base);
}

MadicRational MadicRational::operator-() const {
  MadicRational r = *this;
  r.numerator_ = checked_sub(0, numerator_);
  return r;
}

MadicRational MadicRational::operator-(const MadicRational& other) const { return *this + (-other); }

MadicRational MadicRational::operator*(Int factor) const {
  return from_parts(checked_mul(numerator_, factor), exponent_, base_ == 0 ? 2 : base_);
}

MadicRational MadicRational::divide_by_base(int base, int times) const {
  if (exponent_ > 0 && base != base_) throw std::invalid_argument("MadicRational: mixing values of different bases");
  return from_parts(numerator_, exponent_ + times, base);
}

MadicRational MadicRational::floor_to(int base, int exponent) const {
  if (exponent_ <= exponent) return *this;
  if (base != base_) throw std::invalid_argument("MadicRational: mixing values of different bases");
  const Int scale = int_pow(base, exponent_ - exponent);
  Int q = numerator_ / scale;
  if (numerator_ % scale != 0 && numerator_ < 0) --q;
  return from_parts(q, exponent, base);
}

double MadicRational::to_double() const {
  if (exponent_ == 0) return static_cast<double>(numerator_);
  return static_cast<double>(numerator_) / std::pow(static_cast<double>(base_), exponent_);
}

std::string MadicRational::to_string() const {
  if (exponent_ == 0) return tmesh::to_string(numerator_);
  return tmesh::to_string(numerator_) + "/" + std::to_string(base_) + "^" + std::to_string(exponent_);
}

std::strong_ordering MadicRational::operator<=>(const MadicRational& other) const {
  const int base = common_base(*this, other);
  if (exponent_ == other.exponent_) return numerator_ <=> other.numerator_;
  if (exponent_ < other.exponent_) {
    return checked_mul(numerator_, int_pow(base, other.exponent_ - exponent_)) <=> other.numerator_;
  }
  return numerator_ <=> checked_mul(other.numerator_, int_pow(base, exponent_ - other.exponent_));
}

std::size_t MadicRational::hash() const {
  const auto lo = static_cast<std::uint64_t>(numerator_);
  const auto hi = static_cast<std::uint64_t>(static_cast<unsigned __int128>(numerator_) >> 64);
  std::size_t h = std::hash<std::uint64_t>{}(lo);
  h ^= std::hash<std::uint64_t>{}(hi) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  h ^= static_cast<std::size_t>(exponent_) * 0x100000001b3ULL;
  return h;
}

std::string HalfMadic::to_string() const {
  return "(" + twice.to_string() + ")/2";
}

const char* axis_name(Axis axis) {
  switch (axis) {
    case Axis::x: return "x";
    case Axis::y: return "y";
    case Axis::z: return "z";
  }
  return "?";
}

std::string Point3::to_string() const {
  return "(" + c[0].to_string() + ", " + c[1].to_string() + ", " + c[2].to_string() + ")";
}

std::size_t Point3Hash::operator()(const Point3& p) const {
  std::size_t h = p.c[0].hash();
  h ^= p.c[1].hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  h ^= p.c[2].hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

}  // namespace tmesh
