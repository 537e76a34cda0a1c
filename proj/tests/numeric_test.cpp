#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "srcf/error.hpp"
#include "srcf/numeric.hpp"

using namespace srcf;

TEST(Numeric, ParsesAndPrintsBigIntegersWithoutTruncation) {
  const std::string big = "-123456789012345678901234567890123456789";
  EXPECT_EQ(to_decimal(parse_bigint(big)), big);
  EXPECT_EQ(to_decimal(parse_bigint("+42")), "42");
  EXPECT_THROW(parse_bigint("12x"), Error);
  EXPECT_THROW(parse_bigint(""), Error);
}

TEST(Numeric, ParsesRationalForms) {
  EXPECT_EQ(parse_rational("3/2"), Rational(3, 2));
  EXPECT_EQ(parse_rational("6/4"), Rational(3, 2));
  EXPECT_EQ(parse_rational("1.5"), Rational(3, 2));
  EXPECT_EQ(parse_rational("-0.25"), Rational(-1, 4));
  EXPECT_EQ(parse_rational("7"), Rational(7));
  EXPECT_EQ(to_string(Rational(-6, 4)), "-3/2");
  EXPECT_EQ(to_string(Rational(5)), "5");
  EXPECT_THROW(parse_rational("1/0"), Error);
}

TEST(Numeric, FloorAndCeilingRoundTowardInfinities) {
  EXPECT_EQ(floor_div(BigInt(-7), BigInt(2)), -4);
  EXPECT_EQ(floor_div(BigInt(7), BigInt(2)), 3);
  EXPECT_EQ(floor_of(Rational(-1, 3)), -1);
  EXPECT_EQ(ceil_of(Rational(-1, 3)), 0);
  EXPECT_EQ(ceil_of(Rational(4)), 4);
}

TEST(Numeric, IntegerRootsAndPowers) {
  EXPECT_EQ(iroot_floor(BigInt(26), 3), 2);
  EXPECT_EQ(iroot_floor(BigInt(27), 3), 3);
  // floor(10^(3/2)) = floor(31.62...)
  EXPECT_EQ(floor_pow(BigInt(10), Rational(3, 2)), 31);
  EXPECT_EQ(floor_pow(BigInt(7), Rational(0)), 1);
}

TEST(Numeric, FloorExp2MatchesExactRoots) {
  for (unsigned long p = 0; p < 60; p += 7) {
    for (unsigned long q : {1ul, 2ul, 3ul, 5ul}) {
      EXPECT_EQ(floor_exp2(Rational(p, q)), oracle::floor_two_pow(p, q)) << p << "/" << q;
    }
  }
  // sigma^k for sigma = 3/2 at k = 20 is about 3325: an exact floor on a
  // few-thousand-bit integer.
  Rational x = 1;
  for (int k = 0; k < 20; ++k) x *= Rational(3, 2);
  BigInt f = floor_exp2(x);
  EXPECT_EQ(mpz_sizeinbase(f.get_mpz_t(), 2), mpz_get_ui(floor_of(x).get_mpz_t()) + 1);
}

TEST(Numeric, DecimalRenderingIsDirected) {
  const Rational third(1, 3);
  EXPECT_EQ(decimal_floor(third, 4), "0.3333");
  EXPECT_EQ(decimal_ceil(third, 4), "0.3334");
  EXPECT_EQ(decimal_floor(-third, 4), "-0.3334");
  EXPECT_EQ(decimal_ceil(-third, 4), "-0.3333");
  EXPECT_EQ(decimal_floor(Rational(5, 2), 0), "2");
}

TEST(Numeric, LogScaleErrorBoundCoversTheTruth) {
  LogScale logs(64);
  EXPECT_EQ(logs.log_double(BigInt(1)), 0.0);
  EXPECT_THROW(logs.log(BigInt(0)), Error);
  const BigInt x = BigInt(1) << 200;
  const double exact = 200 * std::log(2.0);
  EXPECT_NEAR(logs.log_double(x), exact, 1e-9);
  EXPECT_GT(logs.error_bound(), 0.0);
  EXPECT_LT(logs.error_bound(), 1e-15);
}
