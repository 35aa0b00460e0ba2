#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <string>

namespace sylvester {

using BigInt = mpz_class;

// Largest dyadic exponent i accepted by the root routines. Beyond this the
// intermediate integers have more than digits * 2^64 digits.
inline constexpr unsigned kMaxDyadicExponent = 64;

// Exact rational number, always held in canonical form: the denominator is
// positive and coprime to the numerator.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : value_(value) {}
  Rational(const BigInt& value) : value_(value) {}
  // Throws std::domain_error on a zero denominator.
  Rational(const BigInt& numerator, const BigInt& denominator);

  // Skips the gcd. The caller guarantees den > 0 and gcd(num, den) = 1; only
  // checked in debug builds.
  static Rational from_coprime(BigInt numerator, BigInt denominator);

  const BigInt& numerator() const { return value_.get_num(); }
  const BigInt& denominator() const { return value_.get_den(); }
  int sign() const { return sgn(value_); }
  bool is_integer() const { return value_.get_den() == 1; }

  Rational reciprocal() const;

  Rational& operator+=(const Rational& other);
  Rational& operator-=(const Rational& other);
  Rational& operator*=(const Rational& other);
  Rational& operator/=(const Rational& other);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  Rational operator-() const;

  friend bool operator==(const Rational& a, const Rational& b) {
    return mpq_equal(a.value_.get_mpq_t(), b.value_.get_mpq_t()) != 0;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  // "num" for integers, "num/den" otherwise.
  std::string to_string() const;

  const mpq_class& raw() const { return value_; }

 private:
  mpq_class value_;
};

// Closed interval [lo, hi] of exact rationals.
class RationalInterval {
 public:
  // Throws std::invalid_argument unless lo <= hi.
  RationalInterval(Rational lo, Rational hi);

  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  Rational width() const { return hi_ - lo_; }
  bool contains(const Rational& x) const { return lo_ <= x && x <= hi_; }
  bool contains(const RationalInterval& other) const {
    return lo_ <= other.lo_ && other.hi_ <= hi_;
  }

  friend bool operator==(const RationalInterval&, const RationalInterval&) = default;

 private:
  Rational lo_;
  Rational hi_;
};

BigInt isqrt_floor(const BigInt& x);
BigInt isqrt_ceil(const BigInt& x);

// r^(2^i), by i exact squarings.
Rational rat_pow2(const Rational& r, unsigned i);

// Both endpoints raised to 2^i. Requires lo >= 0 so that the map is monotone.
RationalInterval rat_pow2(const RationalInterval& x, unsigned i);

// Returns [lo, hi] with lo^(2^i) <= x <= hi^(2^i) and hi - lo <= 10^-digits.
// Requires x >= 1, i <= kMaxDyadicExponent, digits >= 1.
RationalInterval pow2_root_bounds(const BigInt& x, unsigned i, unsigned digits);

// Outward enclosure of the 2^i-th roots of an interval of reals >= 1:
// lo'^(2^i) <= lo and hi <= hi'^(2^i). Width is the true width of the root
// interval plus at most 10^-digits.
RationalInterval pow2_root_enclosure(const RationalInterval& x, unsigned i,
                                     unsigned digits);

BigInt pow10(unsigned exponent);

// Exact count of decimal digits of |x|; 1 for zero.
std::size_t decimal_digits(const BigInt& x);

// Decimal rendering of r truncated (toward zero) to `digits` places.
std::string decimal_truncate(const Rational& r, unsigned digits);

// Largest k <= cap with width <= 10^-k; returns cap when width is zero.
unsigned certified_decimals(const Rational& width, unsigned cap);

}  // namespace sylvester
