#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "sylvester/exact_arith.hpp"

using namespace sylvester;

namespace {

Rational q(long num, long den) { return Rational(BigInt(num), BigInt(den)); }

}  // namespace

TEST_CASE("Rational is canonical on construction") {
  const Rational r(BigInt(6), BigInt(-4));
  CHECK(r.numerator() == -3);
  CHECK(r.denominator() == 2);
  CHECK(r == q(-3, 2));
  CHECK(r.to_string() == "-3/2");
  CHECK(Rational(BigInt(8), BigInt(4)).to_string() == "2");
  CHECK_THROWS_AS(Rational(BigInt(1), BigInt(0)), std::domain_error);
  CHECK_THROWS_AS(q(1, 2) / Rational(), std::domain_error);
}

TEST_CASE("Rational arithmetic is exact") {
  CHECK(q(1, 3) + q(1, 7) + q(1, 42) == q(1, 2));
  CHECK(q(2, 3) * q(9, 4) == q(3, 2));
  CHECK(q(1, 2) - q(1, 3) == q(1, 6));
  CHECK(q(1, 3) < q(1, 2));
  CHECK(-q(1, 2) < Rational());
  CHECK(q(3, 7).reciprocal() == q(7, 3));
}

TEST_CASE("isqrt_floor and isqrt_ceil") {
  CHECK(isqrt_floor(0) == 0);
  CHECK(isqrt_floor(49) == 7);
  CHECK(isqrt_floor(43) == 6);
  CHECK(isqrt_ceil(49) == 7);
  CHECK(isqrt_ceil(43) == 7);
  CHECK(isqrt_ceil(1) == 1);
  CHECK(isqrt_ceil(0) == 0);
  CHECK_THROWS_AS(isqrt_floor(-1), std::domain_error);
}

TEST_CASE("isqrt bracket property on random inputs") {
  std::mt19937_64 rng(12345);
  for (int k = 0; k < 500; ++k) {
    BigInt x = BigInt(static_cast<unsigned long>(rng())) * BigInt(static_cast<unsigned long>(rng()));
    const BigInt f = isqrt_floor(x);
    const BigInt c = isqrt_ceil(x);
    CHECK(f * f <= x);
    CHECK((f + 1) * (f + 1) > x);
    CHECK(c * c >= x);
    CHECK((c == 0 || (c - 1) * (c - 1) < x));
    CHECK(f <= c);
    CHECK(c <= f + 1);
  }
}

TEST_CASE("rat_pow2") {
  CHECK(rat_pow2(q(3, 2), 0) == q(3, 2));
  CHECK(rat_pow2(q(3, 2), 2) == q(81, 16));
  CHECK(rat_pow2(q(1, 7), 3) == q(1, 5764801));
  CHECK(rat_pow2(q(-2, 3), 1) == q(4, 9));
}

TEST_CASE("pow2_root_bounds examples") {
  for (unsigned i : {0u, 1u, 5u, 20u}) {
    const auto one = pow2_root_bounds(1, i, 7);
    CHECK(one.lo() == Rational(1));
    CHECK(one.hi() == Rational(1));
  }
  const auto four = pow2_root_bounds(4, 1, 2);
  CHECK(four.contains(Rational(2)));
  CHECK(four.width() <= q(1, 100));

  const auto two = pow2_root_bounds(2, 1, 2);
  CHECK(RationalInterval(oracle::decimal("1.40"), oracle::decimal("1.43")).contains(two));
  // sqrt(2) = 1.41421356...
  CHECK(two.lo() <= oracle::decimal("1.41421356"));
  CHECK(two.hi() >= oracle::decimal("1.41421357"));
}

TEST_CASE("pow2_root_bounds certifies by squaring and meets the width contract") {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 200; ++k) {
    const BigInt x = 1 + BigInt(static_cast<unsigned long>(rng() % 1000000000ULL));
    const unsigned i = static_cast<unsigned>(rng() % 7);
    const unsigned digits = 1 + static_cast<unsigned>(rng() % 12);
    const auto r = pow2_root_bounds(x, i, digits);
    INFO("x=" << x.get_str() << " i=" << i << " digits=" << digits);
    CHECK(r.lo().sign() > 0);
    CHECK(rat_pow2(r.lo(), i) <= Rational(x));
    CHECK(Rational(x) <= rat_pow2(r.hi(), i));
    CHECK(r.width() <= Rational(BigInt(1), pow10(digits)));
  }
}

TEST_CASE("pow2_root_bounds argument checks") {
  CHECK_THROWS_AS(pow2_root_bounds(0, 1, 3), std::domain_error);
  CHECK_THROWS_AS(pow2_root_bounds(5, 65, 3), std::invalid_argument);
  CHECK_THROWS_AS(pow2_root_bounds(5, 1, 0), std::invalid_argument);
}

TEST_CASE("pow2_root_enclosure is outward") {
  const RationalInterval x(q(42, 1), q(43, 1));
  const auto r = pow2_root_enclosure(x, 4, 6);
  CHECK(rat_pow2(r.lo(), 4) <= Rational(42));
  CHECK(rat_pow2(r.hi(), 4) >= Rational(43));
  // 42^(1/16) = 1.26314463..., 43^(1/16) = 1.26500364...
  CHECK(r.lo() >= oracle::decimal("1.263144"));
  CHECK(r.hi() <= oracle::decimal("1.265004"));
}

TEST_CASE("decimal helpers") {
  CHECK(decimal_digits(0) == 1);
  CHECK(decimal_digits(9) == 1);
  CHECK(decimal_digits(10) == 2);
  CHECK(decimal_digits(BigInt("99999999999999999999", 10)) == 20);
  CHECK(decimal_digits(BigInt("100000000000000000000", 10)) == 21);
  CHECK(decimal_digits(-1234) == 4);

  CHECK(decimal_truncate(q(12640847, 10000000), 4) == "1.2640");
  CHECK(decimal_truncate(q(1, 3), 3) == "0.333");
  CHECK(decimal_truncate(q(7, 1), 2) == "7.00");
  CHECK(decimal_truncate(q(-1, 3), 2) == "-0.33");
  CHECK(decimal_truncate(q(5, 2), 0) == "2");

  CHECK(certified_decimals(q(1, 10000), 20) == 4);
  CHECK(certified_decimals(q(3, 100000), 20) == 4);
  CHECK(certified_decimals(Rational(), 20) == 20);
  CHECK(certified_decimals(q(2, 1), 20) == 0);
}

TEST_CASE("RationalInterval rejects inverted endpoints") {
  CHECK_THROWS_AS(RationalInterval(q(2, 1), q(1, 1)), std::invalid_argument);
  const RationalInterval a(q(1, 1), q(3, 1));
  CHECK(a.contains(RationalInterval(q(3, 2), q(2, 1))));
  CHECK_FALSE(a.contains(RationalInterval(q(0, 1), q(2, 1))));
}
