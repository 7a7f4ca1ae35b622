#include "sdcurve/bigfloat.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <utility>

#include "sdcurve/decimal.hpp"

namespace sdcurve {
namespace {

TEST(BigFloat, PiAtQuadAndOctuplePrecision) {
  EXPECT_EQ(BigFloat::pi(53).to_double(), M_PI);
  EXPECT_EQ(BigFloat::pi(256).to_string(30), "3.14159265358979323846264338328e+00");
  EXPECT_EQ(BigFloat::pi(24).to_float(), static_cast<float>(M_PI));
}

TEST(BigFloat, MixedPrecisionRoundsToWiderOperand) {
  const BigFloat a(1, 64);
  const BigFloat b = BigFloat::pi(256);
  EXPECT_EQ((a + b).precision(), 256);
  EXPECT_EQ((b * a).precision(), 256);
  BigFloat c(1, 64);
  c += b;
  EXPECT_EQ(c.precision(), 256);
  EXPECT_EQ(c, a + b);
}

TEST(BigFloat, IntegerOperandsAreExact) {
  const BigFloat x(0.5, 256);
  EXPECT_EQ((3 * x).to_double(), 1.5);
  EXPECT_EQ((x / 4).to_double(), 0.125);
  EXPECT_EQ((1 / x).to_double(), 2.0);
}

TEST(BigFloat, MoveAndCopyKeepValueAndPrecision) {
  BigFloat a = BigFloat::pi(300);
  BigFloat b = a;
  EXPECT_TRUE(b.identical(a));
  BigFloat c = std::move(b);
  EXPECT_TRUE(c.identical(a));
  BigFloat d(64);
  d = c;
  EXPECT_TRUE(d.identical(a));
  BigFloat e(64);
  e = std::move(d);
  EXPECT_TRUE(e.identical(a));
}

TEST(BigFloat, NanComparisons) {
  const BigFloat zero(256);
  const BigFloat nan = zero / zero;
  EXPECT_TRUE(nan.is_nan());
  EXPECT_FALSE(nan == nan);
  EXPECT_TRUE(nan != nan);
  EXPECT_FALSE(nan < zero);
  EXPECT_TRUE((1 / zero).is_inf());
}

TEST(BigFloat, ParseRejectsTrailingJunk) {
  EXPECT_THROW(BigFloat::parse("1.5x", 256), std::invalid_argument);
  EXPECT_THROW(BigFloat::parse("", 256), std::invalid_argument);
  EXPECT_EQ(BigFloat::parse("-2.5e-3", 256).to_double(), -2.5e-3);
}

TEST(BigFloat, ShortestStringRoundTripsAndIsMinimal) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> mantissa(1.0, 10.0);
  std::uniform_int_distribution<int> exponent(-300, 300);
  for (const int bits : {64, 113, 256, 512}) {
    for (int i = 0; i < 200; ++i) {
      BigFloat x = BigFloat::pi(bits) * BigFloat(mantissa(rng), bits) *
                   exp(BigFloat(static_cast<double>(exponent(rng)), bits));
      if (i % 2) x = -x;
      const std::string s = x.to_string();
      EXPECT_TRUE(BigFloat::parse(s, bits).identical(x)) << s;
      // One fewer digit must not round-trip.
      const std::size_t mantissa_digits = s.find('e') - (s.find('.') == std::string::npos ? 0 : 1) - (i % 2);
      if (mantissa_digits > 1) {
        EXPECT_FALSE(BigFloat::parse(x.to_string(static_cast<int>(mantissa_digits) - 1), bits).identical(x)) << s;
      }
    }
  }
  EXPECT_EQ(BigFloat(0.5, 256).to_string(), "5e-01");
  EXPECT_EQ(BigFloat(256).to_string(), "0");
}

TEST(Decimal, BinaryFormatsRoundTrip) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::uint64_t> bits64;
  for (int i = 0; i < 5000; ++i) {
    const double d = std::bit_cast<double>(bits64(rng));
    if (!std::isfinite(d)) continue;
    EXPECT_EQ(std::bit_cast<std::uint64_t>(parse_binary64(format_shortest(d))), std::bit_cast<std::uint64_t>(d));
    const float f = std::bit_cast<float>(static_cast<std::uint32_t>(bits64(rng)));
    if (!std::isfinite(f)) continue;
    EXPECT_EQ(std::bit_cast<std::uint32_t>(parse_binary32(format_shortest(f))), std::bit_cast<std::uint32_t>(f));
  }
}

TEST(Decimal, ParsingIsNearestInTheRequestedFormat) {
  EXPECT_EQ(parse_binary32("0.1"), 0.1f);
  EXPECT_EQ(parse_binary64("0.1"), 0.1);
  EXPECT_EQ(format_shortest(0.1f), "0.1");
  EXPECT_THROW(parse_binary64("1,5"), std::invalid_argument);
  EXPECT_THROW(parse_binary64(""), std::invalid_argument);
  EXPECT_THROW(parse_binary64("1e999"), std::invalid_argument);
  EXPECT_THROW(parse_integer("3.5"), std::invalid_argument);
  EXPECT_EQ(parse_integer("-42"), -42);
}

}  // namespace
}  // namespace sdcurve
