#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "sylvester/exact_arith.hpp"

namespace sylvester {

struct FuzzReport;

// Data of the comparison lemma: a target u > 0, a threshold t, and two
// nonincreasing positive sequences of equal length N >= t.
//
// Hypotheses:
//   sum_{i<=m} u_i + u * prod_{i<=m} u_i  = u   for t <= m <= N
//   sum_{i<=m} v_i + u * prod_{i<=m} v_i <= u   for t <= m <= N
//   v_m <= u_m                                  for m < t
// Conclusion: sum_{i<=m} v_i <= sum_{i<=m} u_i for every m.
class ComparisonInstance {
 public:
  // Throws std::invalid_argument if any structural invariant fails.
  static ComparisonInstance make(Rational u, std::size_t t, std::vector<Rational> u_seq,
                                 std::vector<Rational> v_seq);

  const Rational& u() const { return u_; }
  std::size_t t() const { return t_; }
  const std::vector<Rational>& u_seq() const { return u_seq_; }
  const std::vector<Rational>& v_seq() const { return v_seq_; }
  std::size_t length() const { return u_seq_.size(); }

  nlohmann::json to_json() const;

 private:
  friend FuzzReport fuzz_comparison(std::uint64_t, std::size_t, std::size_t);

  ComparisonInstance() = default;
  // For generators whose output is nonincreasing by construction.
  static ComparisonInstance make_trusted(Rational u, std::size_t t, std::vector<Rational> u_seq,
                                         std::vector<Rational> v_seq);

  Rational u_;
  std::size_t t_ = 1;
  std::vector<Rational> u_seq_;
  std::vector<Rational> v_seq_;
};

bool check_equation_hypothesis(const ComparisonInstance& inst);
bool check_inequality_hypothesis(const ComparisonInstance& inst);
bool conclusion_holds(const ComparisonInstance& inst);

struct ProductLemmaResult {
  bool hypothesis = false;  // every prefix product of x >= that of y
  bool conclusion = false;  // sum x >= sum y
};

// Both lists nonincreasing, positive, same length; throws otherwise.
ProductLemmaResult check_prefix_product_lemma(std::span<const Rational> x,
                                              std::span<const Rational> y);

// The unique next term keeping sum + u * prod = u at the extended length:
// (u - sum(prefix)) / (1 + u * prod(prefix)). When the equation already holds
// on the prefix this is uP / (1 + uP). Throws std::domain_error if the result
// is not positive or exceeds the last prefix element.
Rational extend_equation_sequence(const Rational& u, std::span<const Rational> prefix);

struct FuzzReport {
  std::uint64_t seed = 0;
  std::size_t cases = 0;
  std::size_t length = 0;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t rejected_drafts = 0;
  std::size_t retries_exhausted = 0;
  std::vector<std::string> case_lines;
  std::vector<nlohmann::json> counterexamples;

  bool ok() const { return failed == 0 && passed == cases; }
  std::string to_text() const;
  nlohmann::json to_json() const;
};

// Generates `cases` instances satisfying both hypotheses, each from its own RNG
// stream keyed by (seed, case index), and checks the conclusion on each.
FuzzReport fuzz_comparison(std::uint64_t seed, std::size_t cases, std::size_t length);

struct ProductFuzzReport {
  std::uint64_t seed = 0;
  std::size_t cases = 0;       // pairs with true hypothesis that were checked
  std::size_t drawn = 0;       // all pairs drawn, including hypothesis failures
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::vector<nlohmann::json> counterexamples;

  bool ok() const { return failed == 0 && passed == cases; }
  std::string to_text() const;
  nlohmann::json to_json() const;
};

// Draws random nonincreasing pairs until `cases` of them satisfy the
// prefix-product hypothesis, and checks the sum conclusion on each.
ProductFuzzReport fuzz_prefix_product(std::uint64_t seed, std::size_t cases,
                                      std::size_t max_length = 8);

}  // namespace sylvester
