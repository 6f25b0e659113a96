#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "tmesh/madic.hpp"

namespace {

using namespace tmesh;
using tmesh::testing::Rational;
using tmesh::testing::to_rational;

TEST(Madic, NormalizesOnConstruction) {
  const auto v = MadicRational::from_parts(6, 2, 3);  // 6/9 = 2/3
  EXPECT_EQ(v.numerator(), 2);
  EXPECT_EQ(v.exponent(), 1);
  EXPECT_EQ(MadicRational::from_parts(8, 3, 2), MadicRational(1));
  EXPECT_TRUE(MadicRational::from_parts(8, 3, 2).is_integer());
  EXPECT_EQ(MadicRational::from_parts(0, 5, 7).exponent(), 0);
}

TEST(Madic, IntegersMixWithAnyBase) {
  const auto third = MadicRational::unit_fraction(3, 1);
  EXPECT_EQ(MadicRational(2) - third, MadicRational::from_parts(5, 1, 3));
  EXPECT_LT(third, MadicRational(1));
  EXPECT_THROW((void)(third + MadicRational::unit_fraction(2, 1)), std::invalid_argument);
  EXPECT_THROW((void)(third < MadicRational::unit_fraction(2, 1)), std::invalid_argument);
  // 1/2 in base 2 and 2/4 in base 4 are both normalized; refuse rather than guess.
  EXPECT_THROW((void)(MadicRational::unit_fraction(2, 1) == MadicRational::from_parts(2, 1, 4)), std::invalid_argument);
}

TEST(Madic, DivideAndFloor) {
  const MadicRational five(5);
  EXPECT_EQ(five.divide_by_base(2, 3), MadicRational::from_parts(5, 3, 2));
  EXPECT_EQ(MadicRational::from_parts(7, 2, 2).floor_to(2, 1), MadicRational::from_parts(3, 1, 2));
  EXPECT_EQ(MadicRational::from_parts(-7, 2, 2).floor_to(2, 0), MadicRational(-2));
  EXPECT_EQ(MadicRational::from_parts(-7, 2, 2).abs(), MadicRational::from_parts(7, 2, 2));
}

TEST(Madic, OverflowThrows) {
  const MadicRational big(static_cast<Int>(1) << 125);
  EXPECT_THROW((void)(big * 8), std::overflow_error);
  EXPECT_THROW((void)(big + big + big + big), std::overflow_error);
  EXPECT_THROW((void)int_pow(16, 40), std::overflow_error);
  EXPECT_NO_THROW((void)int_pow(16, 30));
}

TEST(Madic, IntStringRoundTrip) {
  const Int extreme = -(static_cast<Int>(1) << 126) * 2;
  EXPECT_EQ(parse_int(to_string(extreme)), extreme);
  EXPECT_EQ(parse_int("-17"), -17);
  EXPECT_EQ(to_string(static_cast<Int>(0)), "0");
  EXPECT_THROW((void)parse_int("12a"), std::invalid_argument);
  EXPECT_THROW((void)parse_int(""), std::invalid_argument);
}

// Arithmetic and order agree with exact rationals on random operands.
TEST(MadicProperty, MatchesRationalArithmetic) {
  std::mt19937 rng(5);
  for (int m : {2, 3, 4, 16}) {
    std::uniform_int_distribution<int> num(-5000, 5000), ex(0, 6), scale(-9, 9);
    for (int i = 0; i < 400; ++i) {
      const auto a = MadicRational::from_parts(num(rng), ex(rng), m);
      const auto b = MadicRational::from_parts(num(rng), ex(rng), m);
      const int s = scale(rng);
      EXPECT_EQ(to_rational(a + b), to_rational(a) + to_rational(b));
      EXPECT_EQ(to_rational(a - b), to_rational(a) - to_rational(b));
      EXPECT_EQ(to_rational(a * s), to_rational(a) * s);
      EXPECT_EQ(to_rational(a.divide_by_base(m)), to_rational(a) / m);
      EXPECT_EQ(a < b, to_rational(a) < to_rational(b));
      EXPECT_EQ(a == b, to_rational(a) == to_rational(b));
      // Normalized: equal values have equal representations, hence hashes.
      const auto c = b + (a - b);
      EXPECT_EQ(c.numerator(), a.numerator());
      EXPECT_EQ(c.exponent(), a.exponent());
      EXPECT_EQ(c.hash(), a.hash());
      if (a.exponent() > 0) EXPECT_NE(a.numerator() % m, 0);
    }
  }
}

TEST(Madic, HalfValues) {
  const auto h = HalfMadic::from_value(MadicRational::unit_fraction(3, 1));
  EXPECT_EQ(h.twice, MadicRational::from_parts(2, 1, 3));
  EXPECT_DOUBLE_EQ(h.to_double(), 1.0 / 3.0);
  EXPECT_LT(HalfMadic{MadicRational(1)}, HalfMadic::from_value(MadicRational(1)));
}

}  // namespace
