#include "sylvester/sequence.hpp"

#include <stdexcept>
#include <string>

#include "sylvester/errors.hpp"

namespace sylvester {

namespace {

void check_index(const BigInt& n, std::size_t i) {
  if (n < 1) throw std::invalid_argument("Sylvester seed n must be >= 1");
  if (i < 1) throw std::invalid_argument("Sylvester index must be >= 1");
}

}  // namespace

SequenceCache::SequenceCache(std::size_t digit_budget) : digit_budget_(digit_budget) {}

const std::vector<BigInt>& SequenceCache::extend_locked(const BigInt& n, std::size_t count) {
  auto& seq = table_[n];
  if (seq.empty()) {
    BigInt first = n + 1;
    if (decimal_digits(first) > digit_budget_)
      throw ResourceGuardError("s_1(" + n.get_str() + ") exceeds the digit budget");
    seq.push_back(std::move(first));
  }
  while (seq.size() < count) {
    const BigInt& last = seq.back();
    // digits(next) >= 2 * digits(last) - 1; bail before squaring a hopeless case.
    if (2 * decimal_digits(last) - 1 > digit_budget_)
      throw ResourceGuardError("s_" + std::to_string(seq.size() + 1) + "(" + n.get_str() +
                               ") would exceed the digit budget of " +
                               std::to_string(digit_budget_) + " digits");
    BigInt next = last * last - last + 1;
    if (decimal_digits(next) > digit_budget_)
      throw ResourceGuardError("s_" + std::to_string(seq.size() + 1) + "(" + n.get_str() +
                               ") would exceed the digit budget of " +
                               std::to_string(digit_budget_) + " digits");
    seq.push_back(std::move(next));
  }
  return seq;
}

BigInt SequenceCache::term(const BigInt& n, std::size_t i) {
  check_index(n, i);
  std::lock_guard lock(mutex_);
  return extend_locked(n, i)[i - 1];
}

std::vector<BigInt> SequenceCache::terms(const BigInt& n, std::size_t count) {
  if (n < 1) throw std::invalid_argument("Sylvester seed n must be >= 1");
  if (count == 0) return {};
  std::lock_guard lock(mutex_);
  const auto& seq = extend_locked(n, count);
  return {seq.begin(), seq.begin() + static_cast<std::ptrdiff_t>(count)};
}

std::size_t SequenceCache::digit_budget() const {
  std::lock_guard lock(mutex_);
  return digit_budget_;
}

void SequenceCache::set_digit_budget(std::size_t budget) {
  std::lock_guard lock(mutex_);
  digit_budget_ = budget;
  table_.clear();
}

void SequenceCache::clear() {
  std::lock_guard lock(mutex_);
  table_.clear();
}

SequenceCache& default_cache() {
  static SequenceCache cache;
  return cache;
}

BigInt term(const BigInt& n, std::size_t i) { return default_cache().term(n, i); }

bool verify_telescoping(const BigInt& n, std::size_t j) {
  check_index(n, j);
  const auto s = default_cache().terms(n, j);
  Rational sum;
  for (std::size_t i = 0; i + 1 < j; ++i) sum += Rational(BigInt(1), s[i]);
  sum += Rational(BigInt(1), s[j - 1] - 1);
  return sum == Rational(BigInt(1), n);
}

bool verify_product(const BigInt& n, std::size_t j) {
  check_index(n, j);
  const auto s = default_cache().terms(n, j);
  BigInt product = n;
  for (std::size_t i = 0; i + 1 < j; ++i) product *= s[i];
  return s[j - 1] - 1 == product;
}

bool verify_shift(const BigInt& n, std::size_t i, std::size_t j) {
  check_index(n, i);
  check_index(n, j);
  const BigInt shifted_seed = term(n, j) - 1;
  return term(n, i + j - 1) == term(shifted_seed, i);
}

}  // namespace sylvester
