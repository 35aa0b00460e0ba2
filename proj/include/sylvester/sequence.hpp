#pragma once

#include <cstddef>
#include <map>
#include <mutex>
#include <vector>

#include "sylvester/exact_arith.hpp"

namespace sylvester {

inline constexpr std::size_t kDefaultDigitBudget = 1'000'000;

// Memo table for generalized Sylvester sequences
//   s_1(n) = n + 1,  s_{i+1}(n) = s_i(n)^2 - s_i(n) + 1.
// Entries are write-once, so concurrent callers observe the same values as a
// serialized run would. Any term with more than `digit_budget` decimal digits
// raises ResourceGuardError instead of being computed further.
class SequenceCache {
 public:
  explicit SequenceCache(std::size_t digit_budget = kDefaultDigitBudget);

  // s_i(n) for n >= 1, i >= 1.
  BigInt term(const BigInt& n, std::size_t i);

  // s_1(n), ..., s_count(n).
  std::vector<BigInt> terms(const BigInt& n, std::size_t count);

  std::size_t digit_budget() const;
  // Also drops the memo table, since cached terms may exceed a lower budget.
  void set_digit_budget(std::size_t budget);
  void clear();

 private:
  const std::vector<BigInt>& extend_locked(const BigInt& n, std::size_t count);

  mutable std::mutex mutex_;
  std::size_t digit_budget_;
  std::map<BigInt, std::vector<BigInt>> table_;
};

// Process-wide cache used by the free functions below.
SequenceCache& default_cache();

BigInt term(const BigInt& n, std::size_t i);

// sum_{i<j} 1/s_i(n) + 1/(s_j(n) - 1) == 1/n
bool verify_telescoping(const BigInt& n, std::size_t j);

// s_j(n) - 1 == n * prod_{i<j} s_i(n)
bool verify_product(const BigInt& n, std::size_t j);

// s_{i+j-1}(n) == s_i(s_j(n) - 1)
bool verify_shift(const BigInt& n, std::size_t i, std::size_t j);

}  // namespace sylvester
