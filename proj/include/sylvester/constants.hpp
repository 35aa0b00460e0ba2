#pragma once

#include <cstdint>
#include <string>

#include "sylvester/exact_arith.hpp"

namespace sylvester {

// c_n = lim_i s_i(n)^(2^-i). The two-sided bounds
//   (s_i(n) - 1)^(2^-i) < c_n < s_i(n)^(2^-i)
// tighten monotonically in i.

// Symbolic value c_base^(2^-halvings).
struct ScoreExpr {
  BigInt base = 1;
  std::int64_t halvings = 0;

  friend bool operator==(const ScoreExpr& a, const ScoreExpr& b) {
    return a.base == b.base && a.halvings == b.halvings;
  }
  std::string to_string() const;
};

enum class Ordering { LT, EQ, GT };

std::string to_string(Ordering ordering);

// Enclosure of c_n from the index-i bounds with endpoints rounded outward at
// `digits` places. Nested in i by construction. Requires 1 <= i <= 64.
RationalInterval c_bounds(const BigInt& n, unsigned i, unsigned digits);

// Enclosure of c_n of width <= 10^-digits. Requires 1 <= digits <= 1000.
RationalInterval c_value(const BigInt& n, unsigned digits);

// Rewrites (j(j+1), k) to (j, k-1) until the base is not pronic. Uses
// c_j^2 = c_{j(j+1)}.
ScoreExpr score_normalize(ScoreExpr s);

// Equal normal forms are EQ. Otherwise both sides are raised to a common
// power of two and c-enclosures refined until they separate. Throws
// RefinementGuardError if the refinement index would pass 64.
Ordering score_compare(const ScoreExpr& a, const ScoreExpr& b);

// Rigorous enclosure of the real c_base^(2^-halvings), for display. The width
// is governed by both the c-enclosure and the root rounding at `digits`.
RationalInterval score_enclosure(const ScoreExpr& s, unsigned digits);

}  // namespace sylvester
