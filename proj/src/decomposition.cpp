#include "sylvester/decomposition.hpp"

#include <algorithm>

#include "sylvester/sequence.hpp"

namespace sylvester {

namespace {

using nlohmann::json;
using Kind = DecompositionError::Kind;

Rational unit(const BigInt& a) { return Rational(BigInt(1), a); }

BigInt parse_decimal(const json& value, const std::string& field) {
  if (!value.is_string())
    throw std::invalid_argument("field '" + field + "' must be a decimal string");
  const auto& text = value.get_ref<const std::string&>();
  if (text.empty() || !std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw std::invalid_argument("field '" + field + "' is not a nonnegative decimal integer: \"" +
                                text + "\"");
  return BigInt(text, 10);
}

}  // namespace

TailDecomposition TailDecomposition::make(BigInt n, std::vector<BigInt> prefix, BigInt tail_base) {
  if (n < 1) throw DecompositionError(Kind::kBadValue, "n must be >= 1");
  if (tail_base < 1) throw DecompositionError(Kind::kBadValue, "tail_base must be >= 1");
  for (const auto& a : prefix)
    if (a < 2) throw DecompositionError(Kind::kBadValue, "prefix entries must be >= 2");
  for (std::size_t i = 1; i < prefix.size(); ++i)
    if (prefix[i] < prefix[i - 1])
      throw DecompositionError(Kind::kNotMonotone, "prefix is not nondecreasing at position " +
                                                       std::to_string(i + 1));
  if (!prefix.empty() && tail_base + 1 < prefix.back())
    throw DecompositionError(Kind::kNotMonotone,
                             "tail does not continue the prefix: tail_base + 1 < last prefix entry");
  Rational mass = unit(tail_base);
  for (const auto& a : prefix) mass += unit(a);
  if (mass != unit(n))
    throw DecompositionError(Kind::kMassMismatch, "mass mismatch: prefix and tail sum to " +
                                                      mass.to_string() + ", expected 1/" +
                                                      n.get_str());
  TailDecomposition d;
  d.n_ = std::move(n);
  d.prefix_ = std::move(prefix);
  d.tail_base_ = std::move(tail_base);
  return d;
}

BigInt TailDecomposition::term(std::size_t i) const {
  if (i < 1) throw std::invalid_argument("decomposition index must be >= 1");
  if (i <= prefix_.size()) return prefix_[i - 1];
  return sylvester::term(tail_base_, i - prefix_.size());
}

TailDecomposition make_tail(const BigInt& n, std::vector<BigInt> prefix, const BigInt& tail_base) {
  return TailDecomposition::make(n, std::move(prefix), tail_base);
}

TailDecomposition canonicalize(const TailDecomposition& d) {
  std::vector<BigInt> prefix = d.prefix();
  BigInt base = d.tail_base();
  // s_1(p - 1) = p and s_2(p - 1) - 1 = (p - 1) p, so [.., p] + tail((p-1)p)
  // is the same sequence as [..] + tail(p - 1).
  while (!prefix.empty() && base == (prefix.back() - 1) * prefix.back()) {
    base = prefix.back() - 1;
    prefix.pop_back();
  }
  return TailDecomposition::make(d.n(), std::move(prefix), std::move(base));
}

bool is_sylvester(const TailDecomposition& d) {
  const auto c = canonicalize(d);
  return c.prefix().empty() && c.tail_base() == d.n();
}

ScoreExpr score(const TailDecomposition& d) {
  const auto c = canonicalize(d);
  return ScoreExpr{c.tail_base(), static_cast<std::int64_t>(c.prefix().size())};
}

bool theorem_check(const TailDecomposition& d) {
  const Ordering ord = score_compare(score(d), ScoreExpr{d.n(), 0});
  return is_sylvester(d) ? ord == Ordering::EQ : ord == Ordering::LT;
}

TailDecomposition witness(const BigInt& n) {
  if (n < 1) throw std::invalid_argument("witness requires n >= 1");
  if (n % 2 == 0) return make_tail(n, {BigInt(n + 2)}, BigInt(n * (n + 2) / 2));
  const BigInt shifted = n * (n + 1);
  return make_tail(n, {BigInt(n + 1), BigInt(shifted + 2)}, BigInt(shifted * (shifted + 2) / 2));
}

BigInt shift_reduce(const BigInt& n, std::size_t k) { return term(n, k) - 1; }

ComparisonSequenceSpec comparison_sequence(const BigInt& n, std::size_t count) {
  if (n < 1) throw std::invalid_argument("comparison_sequence requires n >= 1");
  ComparisonSequenceSpec spec;
  spec.n = n;
  spec.u = unit(n);
  if (n == 1) {
    spec.t = 3;
    spec.head = {Rational(BigInt(1), BigInt(3)), Rational(BigInt(1), BigInt(3)),
                 Rational(BigInt(3), BigInt(10))};
    spec.tail_seed = 30;
  } else {
    spec.t = 2;
    const BigInt n1 = n + 1;
    spec.head = {unit(n + 2), Rational(BigInt(2), BigInt(n1 * n1))};
    spec.tail_seed = n * n1 * n1 * (n + 2) / 2;
  }
  if (count < spec.t)
    throw std::invalid_argument("comparison_sequence: count must be >= t = " +
                                std::to_string(spec.t));
  for (std::size_t i = 0; i < count && i < spec.head.size(); ++i) spec.terms.push_back(spec.head[i]);
  if (count > spec.head.size())
    for (const auto& s : default_cache().terms(spec.tail_seed, count - spec.head.size()))
      spec.terms.push_back(unit(s));
  return spec;
}

bool verify_comparison_equation(const BigInt& n, std::size_t m_max) {
  auto spec = comparison_sequence(n, m_max);
  const auto inst = ComparisonInstance::make(spec.u, spec.t, spec.terms, spec.terms);
  return check_equation_hypothesis(inst);
}

ResidualCheck residual_integrality(const TailDecomposition& d, std::size_t m) {
  Rational sum;
  BigInt product = d.n();
  for (std::size_t i = 1; i <= m; ++i) {
    const BigInt a = d.term(i);
    sum += unit(a);
    product *= a;
  }
  const Rational residual = unit(d.n()) - sum;
  if (residual.sign() <= 0)
    throw std::domain_error("residual_integrality: truncated sum is not below 1/n");
  const Rational bound = unit(product);
  return ResidualCheck{residual >= bound, residual == bound};
}

bool residual_integrality_check(const TailDecomposition& d, std::size_t m) {
  return residual_integrality(d, m).holds;
}

bool verify_l_inequality(const BigInt& n) {
  if (n < 2) throw std::invalid_argument("verify_l_inequality requires n >= 2");
  const BigInt l = n * (n + 1) * (n + 1) * (n + 2) / 2;
  return n * (n + 1) * (n * n + n + 1) > l;
}

GreedyExpansion greedy_expand(const BigInt& p, const BigInt& q, std::size_t max_terms) {
  if (p <= 0 || q <= 0 || p >= q) throw std::invalid_argument("greedy_expand requires 0 < p/q < 1");
  GreedyExpansion out;
  Rational rest(p, q);
  while (rest.sign() > 0 && out.denominators.size() < max_terms) {
    BigInt a;
    mpz_cdiv_q(a.get_mpz_t(), rest.denominator().get_mpz_t(), rest.numerator().get_mpz_t());
    rest -= unit(a);
    out.denominators.push_back(std::move(a));
  }
  out.complete = rest.sign() == 0;
  return out;
}

json to_json(const TailDecomposition& d) {
  json prefix = json::array();
  for (const auto& a : d.prefix()) prefix.push_back(a.get_str());
  return json{{"n", d.n().get_str()}, {"prefix", prefix}, {"tail_base", d.tail_base().get_str()}};
}

TailDecomposition decomposition_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("decomposition must be a JSON object");
  for (const char* key : {"n", "prefix", "tail_base"})
    if (!j.contains(key)) throw std::invalid_argument(std::string("missing field '") + key + "'");
  if (!j.at("prefix").is_array()) throw std::invalid_argument("field 'prefix' must be an array");
  std::vector<BigInt> prefix;
  for (const auto& a : j.at("prefix")) prefix.push_back(parse_decimal(a, "prefix"));
  return make_tail(parse_decimal(j.at("n"), "n"), std::move(prefix),
                   parse_decimal(j.at("tail_base"), "tail_base"));
}

}  // namespace sylvester
