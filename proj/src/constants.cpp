#include "sylvester/constants.hpp"

#include <algorithm>
#include <stdexcept>

#include "sylvester/errors.hpp"
#include "sylvester/sequence.hpp"

namespace sylvester {

namespace {

constexpr unsigned kMaxConstDigits = 1000;
constexpr unsigned kFirstRefinementIndex = 4;
constexpr unsigned kFirstRefinementDigits = 8;

// Unnested index-i bounds: lo <= (s_i - 1)^(2^-i), hi >= s_i^(2^-i).
RationalInterval raw_bounds(const BigInt& n, unsigned i, unsigned digits) {
  const BigInt s = term(n, i);
  return pow2_root_enclosure(RationalInterval(Rational(BigInt(s - 1)), Rational(s)), i, digits);
}

RationalInterval intersect(const RationalInterval& a, const RationalInterval& b) {
  return RationalInterval(std::max(a.lo(), b.lo()), std::min(a.hi(), b.hi()));
}

void check_seed(const BigInt& n) {
  if (n < 1) throw std::invalid_argument("c_n requires n >= 1");
}

}  // namespace

std::string ScoreExpr::to_string() const {
  return "c_" + base.get_str() + "^(2^" + std::to_string(-halvings) + ")";
}

std::string to_string(Ordering ordering) {
  switch (ordering) {
    case Ordering::LT: return "LT";
    case Ordering::EQ: return "EQ";
    case Ordering::GT: return "GT";
  }
  return "?";
}

RationalInterval c_bounds(const BigInt& n, unsigned i, unsigned digits) {
  check_seed(n);
  if (i < 1 || i > kMaxDyadicExponent)
    throw std::invalid_argument("c_bounds: index must be in [1, 64]");
  RationalInterval out = raw_bounds(n, 1, digits);
  for (unsigned j = 2; j <= i; ++j) out = intersect(out, raw_bounds(n, j, digits));
  return out;
}

RationalInterval c_value(const BigInt& n, unsigned digits) {
  check_seed(n);
  if (digits < 1 || digits > kMaxConstDigits)
    throw std::invalid_argument("c_value: digits must be in [1, 1000]");
  const Rational max_width(BigInt(1), pow10(digits));
  RationalInterval out = raw_bounds(n, 1, digits + 1);
  for (unsigned i = 1;; ++i) {
    if (i > 1) out = intersect(out, raw_bounds(n, i, digits + 1));
    if (out.width() <= max_width) return out;
    if (i == kMaxDyadicExponent)
      throw ResourceGuardError("c_value: no enclosure of the requested width by index 64");
  }
}

ScoreExpr score_normalize(ScoreExpr s) {
  if (s.base < 1) throw std::invalid_argument("score base must be >= 1");
  for (;;) {
    const BigInt j = isqrt_floor(s.base);
    if (j * (j + 1) != s.base) return s;
    s.base = j;
    --s.halvings;
  }
}

Ordering score_compare(const ScoreExpr& a, const ScoreExpr& b) {
  const ScoreExpr na = score_normalize(a);
  const ScoreExpr nb = score_normalize(b);
  if (na == nb) return Ordering::EQ;

  // Raise both sides to 2^K, K = max halvings. One exponent becomes zero.
  const std::int64_t common = std::max(na.halvings, nb.halvings);
  const std::int64_t raise_a = common - na.halvings;
  const std::int64_t raise_b = common - nb.halvings;
  if (raise_a > kMaxDyadicExponent || raise_b > kMaxDyadicExponent)
    throw ResourceGuardError("score_compare: halvings differ by more than 64");

  unsigned digits = kFirstRefinementDigits;
  for (unsigned i = kFirstRefinementIndex;; ++i, digits *= 2) {
    if (i > kMaxDyadicExponent)
      throw RefinementGuardError("score_compare: refinement passed index 64 for " +
                                 na.to_string() + " vs " + nb.to_string());
    const RationalInterval ea =
        rat_pow2(c_bounds(na.base, i, digits), static_cast<unsigned>(raise_a));
    const RationalInterval eb =
        rat_pow2(c_bounds(nb.base, i, digits), static_cast<unsigned>(raise_b));
    if (ea.hi() < eb.lo()) return Ordering::LT;
    if (eb.hi() < ea.lo()) return Ordering::GT;
  }
}

RationalInterval score_enclosure(const ScoreExpr& s, unsigned digits) {
  if (s.halvings >= 0) {
    const RationalInterval c = c_value(s.base, std::min(digits + 1, kMaxConstDigits));
    return pow2_root_enclosure(c, static_cast<unsigned>(s.halvings), digits + 1);
  }
  const auto power = static_cast<unsigned>(-s.halvings);
  if (power > kMaxDyadicExponent)
    throw std::invalid_argument("score_enclosure: halvings below -64");
  const Rational max_width(BigInt(1), pow10(digits));
  for (unsigned d = std::min(digits + 2, kMaxConstDigits);; d = std::min(2 * d, kMaxConstDigits)) {
    RationalInterval out = rat_pow2(c_value(s.base, d), power);
    if (out.width() <= max_width || d == kMaxConstDigits) return out;
  }
}

}  // namespace sylvester
