#include "sylvester/exact_arith.hpp"

#include <cassert>
#include <stdexcept>

namespace sylvester {

Rational::Rational(const BigInt& numerator, const BigInt& denominator)
    : value_(numerator, denominator) {
  if (denominator == 0) throw std::domain_error("Rational: zero denominator");
  value_.canonicalize();
}

Rational Rational::from_coprime(BigInt numerator, BigInt denominator) {
  Rational r;
  r.value_.get_num() = std::move(numerator);
  r.value_.get_den() = std::move(denominator);
#ifndef NDEBUG
  mpq_class check = r.value_;
  check.canonicalize();
  assert(check.get_num() == r.value_.get_num() && check.get_den() == r.value_.get_den());
#endif
  return r;
}

Rational Rational::reciprocal() const {
  if (sign() == 0) throw std::domain_error("Rational: reciprocal of zero");
  Rational r;
  mpq_inv(r.value_.get_mpq_t(), value_.get_mpq_t());
  return r;
}

Rational& Rational::operator+=(const Rational& other) {
  value_ += other.value_;
  return *this;
}

Rational& Rational::operator-=(const Rational& other) {
  value_ -= other.value_;
  return *this;
}

Rational& Rational::operator*=(const Rational& other) {
  value_ *= other.value_;
  return *this;
}

Rational& Rational::operator/=(const Rational& other) {
  if (other.sign() == 0) throw std::domain_error("Rational: division by zero");
  value_ /= other.value_;
  return *this;
}

Rational Rational::operator-() const {
  Rational r;
  r.value_ = -value_;
  return r;
}

std::string Rational::to_string() const {
  if (is_integer()) return numerator().get_str();
  return numerator().get_str() + "/" + denominator().get_str();
}

RationalInterval::RationalInterval(Rational lo, Rational hi)
    : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (hi_ < lo_) throw std::invalid_argument("RationalInterval: lo > hi");
}

BigInt isqrt_floor(const BigInt& x) {
  if (x < 0) throw std::domain_error("isqrt_floor: negative argument");
  BigInt r;
  mpz_sqrt(r.get_mpz_t(), x.get_mpz_t());
  return r;
}

BigInt isqrt_ceil(const BigInt& x) {
  BigInt r = isqrt_floor(x);
  if (r * r < x) ++r;
  return r;
}

Rational rat_pow2(const Rational& r, unsigned i) {
  // Squares of coprime integers stay coprime, so no gcd is needed.
  BigInt num = r.numerator();
  BigInt den = r.denominator();
  for (unsigned k = 0; k < i; ++k) {
    num *= num;
    den *= den;
  }
  return Rational::from_coprime(std::move(num), std::move(den));
}

RationalInterval rat_pow2(const RationalInterval& x, unsigned i) {
  if (x.lo().sign() < 0) throw std::domain_error("rat_pow2: interval must be nonnegative");
  return RationalInterval(rat_pow2(x.lo(), i), rat_pow2(x.hi(), i));
}

BigInt pow10(unsigned exponent) {
  BigInt p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, exponent);
  return p;
}

namespace {

void check_root_args(unsigned i, unsigned digits) {
  if (i > kMaxDyadicExponent)
    throw std::invalid_argument("dyadic exponent exceeds " + std::to_string(kMaxDyadicExponent));
  if (digits == 0) throw std::invalid_argument("digits must be positive");
}

// A with A/10^p <= r^(2^-i). Each step takes a floor square root of a lower
// bound, so the invariant survives every iteration.
Rational root_lower(const Rational& r, unsigned i, unsigned p) {
  const BigInt scale = pow10(p);
  BigInt a;
  mpz_fdiv_q(a.get_mpz_t(), BigInt(r.numerator() * scale).get_mpz_t(),
             r.denominator().get_mpz_t());
  for (unsigned k = 0; k < i; ++k) a = isqrt_floor(a * scale);
  return Rational(a, scale);
}

// A with A/10^p >= r^(2^-i).
Rational root_upper(const Rational& r, unsigned i, unsigned p) {
  const BigInt scale = pow10(p);
  BigInt a;
  mpz_cdiv_q(a.get_mpz_t(), BigInt(r.numerator() * scale).get_mpz_t(),
             r.denominator().get_mpz_t());
  for (unsigned k = 0; k < i; ++k) a = isqrt_ceil(a * scale);
  return Rational(a, scale);
}

}  // namespace

RationalInterval pow2_root_bounds(const BigInt& x, unsigned i, unsigned digits) {
  if (x < 1) throw std::domain_error("pow2_root_bounds: x must be >= 1");
  check_root_args(i, digits);
  const Rational target(x);
  const Rational max_width(BigInt(1), pow10(digits));
  // For x >= 1 every iterate stays >= 1, where sqrt contracts errors by half,
  // so the total error per side is below 2 * 10^-p. One guard digit suffices;
  // the loop only exists to make the contract unconditional.
  for (unsigned p = digits + 1;; p += 2) {
    RationalInterval out(root_lower(target, i, p), root_upper(target, i, p));
    if (out.width() <= max_width) return out;
  }
}

RationalInterval pow2_root_enclosure(const RationalInterval& x, unsigned i, unsigned digits) {
  if (x.lo() < Rational(1)) throw std::domain_error("pow2_root_enclosure: needs lo >= 1");
  check_root_args(i, digits);
  return RationalInterval(root_lower(x.lo(), i, digits + 1), root_upper(x.hi(), i, digits + 1));
}

std::size_t decimal_digits(const BigInt& x) {
  if (x == 0) return 1;
  const BigInt a = abs(x);
  std::size_t d = mpz_sizeinbase(a.get_mpz_t(), 10);
  // sizeinbase may overshoot by one.
  if (d > 1 && a < pow10(static_cast<unsigned>(d - 1))) --d;
  return d;
}

std::string decimal_truncate(const Rational& r, unsigned digits) {
  BigInt q;
  mpz_tdiv_q(q.get_mpz_t(), BigInt(abs(r.numerator()) * pow10(digits)).get_mpz_t(),
             r.denominator().get_mpz_t());
  std::string s = q.get_str();
  if (s.size() < digits + 1) s.insert(0, digits + 1 - s.size(), '0');
  if (digits > 0) s.insert(s.size() - digits, ".");
  if (r.sign() < 0 && q != 0) s.insert(0, "-");
  return s;
}

unsigned certified_decimals(const Rational& width, unsigned cap) {
  if (width.sign() <= 0) return cap;
  unsigned k = 0;
  Rational scaled = width * Rational(10);
  while (k < cap && scaled <= Rational(1)) {
    ++k;
    scaled *= Rational(10);
  }
  return k;
}

}  // namespace sylvester
