#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "sylvester/constants.hpp"
#include "sylvester/exact_arith.hpp"
#include "sylvester/lemma.hpp"

namespace sylvester {

class DecompositionError : public std::invalid_argument {
 public:
  enum class Kind { kBadValue, kMassMismatch, kNotMonotone };

  DecompositionError(Kind kind, const std::string& what)
      : std::invalid_argument(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// 1/n = sum_{i<=k} 1/a_i + sum_{i>=1} 1/s_i(tail_base): a finite prefix
// followed by the Sylvester sequence seeded at tail_base.
class TailDecomposition {
 public:
  // Validates positivity, a_i >= 2, monotonicity (including the splice
  // tail_base + 1 >= a_k) and the exact mass identity.
  static TailDecomposition make(BigInt n, std::vector<BigInt> prefix, BigInt tail_base);

  const BigInt& n() const { return n_; }
  const std::vector<BigInt>& prefix() const { return prefix_; }
  const BigInt& tail_base() const { return tail_base_; }

  // a_i, 1-based; tail terms come from the sequence cache.
  BigInt term(std::size_t i) const;

  friend bool operator==(const TailDecomposition&, const TailDecomposition&) = default;

 private:
  TailDecomposition() = default;

  BigInt n_;
  std::vector<BigInt> prefix_;
  BigInt tail_base_;
};

TailDecomposition make_tail(const BigInt& n, std::vector<BigInt> prefix, const BigInt& tail_base);

// Folds trailing prefix entries p with tail_base == (p - 1) p into the tail.
TailDecomposition canonicalize(const TailDecomposition& d);

bool is_sylvester(const TailDecomposition& d);

// liminf a_i^(2^-i) = c_m^(2^-k) for canonical prefix length k and tail base m.
ScoreExpr score(const TailDecomposition& d);

// Sylvester decompositions must score EQ to c_n, all others LT.
bool theorem_check(const TailDecomposition& d);

// A non-Sylvester decomposition of 1/n. Even n: [n+2] then tail n(n+2)/2.
// Odd n: [n+1, n'+2] then tail n'(n'+2)/2 where n' = n(n+1).
TailDecomposition witness(const BigInt& n);

// n' = s_k(n) - 1, the seed of the sequence shifted by k - 1 places.
BigInt shift_reduce(const BigInt& n, std::size_t k);

// u_i = head_i for i <= |head|, then 1/s_{i-|head|}(tail_seed).
struct ComparisonSequenceSpec {
  BigInt n;
  Rational u;
  std::size_t t = 1;
  std::vector<Rational> head;
  BigInt tail_seed;
  std::vector<Rational> terms;
};

// n >= 2: head (1/(n+2), 2/(n+1)^2), tail seed n(n+1)^2(n+2)/2, t = 2.
// n == 1: head (1/3, 1/3, 3/10), tail seed 30, t = 3.
ComparisonSequenceSpec comparison_sequence(const BigInt& n, std::size_t count);

bool verify_comparison_equation(const BigInt& n, std::size_t m_max);

struct ResidualCheck {
  bool holds = false;  // 1/n - sum_{i<=m} 1/a_i >= 1 / (n prod_{i<=m} a_i)
  bool tight = false;  // ... with equality
};

// Throws std::domain_error if the truncated sum is not strictly below 1/n.
ResidualCheck residual_integrality(const TailDecomposition& d, std::size_t m);
bool residual_integrality_check(const TailDecomposition& d, std::size_t m);

// n(n+1)(n^2+n+1) > n(n+1)^2(n+2)/2. Rejects n < 2.
bool verify_l_inequality(const BigInt& n);

struct GreedyExpansion {
  std::vector<BigInt> denominators;
  bool complete = false;
};

// Greedy unit-fraction expansion of p/q in (0, 1), at most max_terms terms.
GreedyExpansion greedy_expand(const BigInt& p, const BigInt& q, std::size_t max_terms);

// {"n": "...", "prefix": ["...", ...], "tail_base": "..."}, decimal strings.
nlohmann::json to_json(const TailDecomposition& d);
// Throws std::invalid_argument on schema errors, DecompositionError on
// invalid values.
TailDecomposition decomposition_from_json(const nlohmann::json& j);

}  // namespace sylvester
