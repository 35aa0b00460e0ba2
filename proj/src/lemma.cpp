#include "sylvester/lemma.hpp"

#include <algorithm>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>

namespace sylvester {

namespace {

using nlohmann::json;

constexpr std::size_t kMaxDrafts = 64;
constexpr std::size_t kMaxPerturbations = 16;

void require_nonincreasing_positive(std::span<const Rational> seq, const char* name) {
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (seq[i].sign() <= 0) throw std::invalid_argument(std::string(name) + " must be positive");
    if (i > 0 && seq[i] > seq[i - 1])
      throw std::invalid_argument(std::string(name) + " must be nonincreasing");
  }
}

// Running prefix sum and product over a common unreduced denominator. Avoids
// gcd on terms whose size doubles with the index.
struct PrefixAccumulator {
  BigInt sum_num = 0;
  BigInt prod_num = 1;
  BigInt den = 1;

  void push(const Rational& x) {
    sum_num = sum_num * x.denominator() + x.numerator() * den;
    prod_num *= x.numerator();
    den *= x.denominator();
  }

  // Sign of (sum + u * prod) - u.
  int compare_with_target(const Rational& u) const {
    const BigInt lhs = sum_num * u.denominator() + u.numerator() * prod_num;
    const BigInt rhs = u.numerator() * den;
    return cmp(lhs, rhs);
  }
};

json rational_list(std::span<const Rational> seq) {
  json out = json::array();
  for (const auto& x : seq) out.push_back(x.to_string());
  return out;
}

class CaseRng {
 public:
  CaseRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(index),
                      static_cast<std::uint32_t>(index >> 32)};
    engine_.seed(seq);
  }

  // Uniform-ish in [0, n). Modulo reduction keeps the stream identical across
  // standard library implementations.
  std::uint64_t below(std::uint64_t n) { return engine_() % n; }

  // a/b with 2 <= b <= 10, 1 <= a < b.
  Rational fraction_below_one() {
    const long b = 2 + static_cast<long>(below(9));
    const long a = 1 + static_cast<long>(below(static_cast<std::uint64_t>(b - 1)));
    return Rational(BigInt(a), BigInt(b));
  }

 private:
  std::mt19937_64 engine_;
};

constexpr std::uint64_t kComparisonStream = 1;
constexpr std::uint64_t kProductStream = 2;

struct Draft {
  Rational u;
  std::size_t t = 1;
  std::vector<Rational> u_seq;
};

// Free terms below index t, then the solved term at t, then the forced
// recurrence. Returns false when the draft breaks monotonicity.
// With forced_t == 1 the draft always succeeds: u_1 = u/(1+u) and
// u_2 = r/(1+r) with r = u u_1 < u.
bool draw_equation_sequence(CaseRng& rng, std::size_t length, std::size_t forced_t,
                            Draft& draft) {
  const long p = 1 + static_cast<long>(rng.below(100));
  const long q = 1 + static_cast<long>(rng.below(100));
  draft.u = Rational(BigInt(p), BigInt(q));
  draft.t = forced_t != 0
                ? forced_t
                : 1 + static_cast<std::size_t>(rng.below(std::min<std::size_t>(4, length)));
  draft.u_seq.clear();

  Rational sum;
  Rational product(1);
  for (std::size_t i = 1; i < draft.t; ++i) {
    Rational next = (draft.u - sum) * rng.fraction_below_one();
    if (!draft.u_seq.empty()) next = std::min(next, draft.u_seq.back());
    sum += next;
    product *= next;
    draft.u_seq.push_back(std::move(next));
  }
  Rational at_t = (draft.u - sum) / (Rational(1) + draft.u * product);
  if (!draft.u_seq.empty() && at_t > draft.u_seq.back()) return false;
  product *= at_t;
  draft.u_seq.push_back(std::move(at_t));

  // residual r = u * prod = p/q in lowest terms; next term r / (1 + r) =
  // p / (p + q) and next residual p^2 / (q (p + q)), both already coprime.
  const Rational residual = draft.u * product;
  BigInt rn = residual.numerator();
  BigInt rd = residual.denominator();
  for (std::size_t m = draft.t; m < length; ++m) {
    BigInt next_den = rn + rd;
    draft.u_seq.push_back(Rational::from_coprime(rn, next_den));
    if (m == draft.t && draft.u_seq[m] > draft.u_seq[m - 1]) return false;
    if (m + 1 == length) break;
    rd *= next_den;
    rn *= rn;
  }
  return true;
}

bool nonincreasing_prefix(std::span<const Rational> seq, std::size_t upto) {
  for (std::size_t i = 1; i <= upto && i < seq.size(); ++i)
    if (seq[i] > seq[i - 1]) return false;
  return true;
}

std::string join_indices(const std::vector<std::size_t>& indices) {
  std::string out = "[";
  for (std::size_t k = 0; k < indices.size(); ++k) {
    if (k) out += ",";
    out += std::to_string(indices[k] + 1);
  }
  return out + "]";
}

}  // namespace

ComparisonInstance ComparisonInstance::make(Rational u, std::size_t t, std::vector<Rational> u_seq,
                                            std::vector<Rational> v_seq) {
  if (u.sign() <= 0) throw std::invalid_argument("u must be positive");
  if (t < 1) throw std::invalid_argument("t must be >= 1");
  if (u_seq.size() != v_seq.size())
    throw std::invalid_argument("u_seq and v_seq must have equal length");
  if (u_seq.size() < t) throw std::invalid_argument("sequence length must be >= t");
  require_nonincreasing_positive(u_seq, "u_seq");
  require_nonincreasing_positive(v_seq, "v_seq");
  ComparisonInstance inst;
  inst.u_ = std::move(u);
  inst.t_ = t;
  inst.u_seq_ = std::move(u_seq);
  inst.v_seq_ = std::move(v_seq);
  return inst;
}

ComparisonInstance ComparisonInstance::make_trusted(Rational u, std::size_t t,
                                                    std::vector<Rational> u_seq,
                                                    std::vector<Rational> v_seq) {
  ComparisonInstance inst;
  inst.u_ = std::move(u);
  inst.t_ = t;
  inst.u_seq_ = std::move(u_seq);
  inst.v_seq_ = std::move(v_seq);
  return inst;
}

json ComparisonInstance::to_json() const {
  return json{{"u", u_.to_string()},
              {"t", t_},
              {"u_seq", rational_list(u_seq_)},
              {"v_seq", rational_list(v_seq_)}};
}

namespace {

// Q_m = u * prod_{i<=m} u_i for t <= m <= N, or nullopt if the equation
// sum + u * prod = u fails at some m >= t.
//
// Once the equation holds at m - 1, it holds at m iff u_m = Q / (1 + Q) with
// Q = Q_{m-1}. For Q = a/b in lowest terms that is a/(a+b), already
// canonical, so the test is a structural comparison and the next residual
// a^2 / (b(a+b)) is canonical without a gcd.
std::optional<std::vector<Rational>> equation_residuals(const Rational& target, std::size_t t,
                                                       std::span<const Rational> u_seq) {
  Rational sum;
  Rational product(1);
  for (std::size_t i = 0; i < t; ++i) {
    sum += u_seq[i];
    product *= u_seq[i];
  }
  Rational q = target * product;
  if (target - sum != q) return std::nullopt;

  std::vector<Rational> residuals;
  residuals.reserve(u_seq.size() - t + 1);
  BigInt a = q.numerator();
  BigInt b = q.denominator();
  residuals.push_back(std::move(q));
  for (std::size_t m = t + 1; m <= u_seq.size(); ++m) {
    const Rational& x = u_seq[m - 1];
    BigInt next_den = a + b;
    if (x.numerator() != a || x.denominator() != next_den) return std::nullopt;
    b *= next_den;
    a *= a;
    residuals.push_back(Rational::from_coprime(a, b));
  }
  return residuals;
}

bool inequality_by_accumulation(const ComparisonInstance& inst) {
  PrefixAccumulator acc;
  for (std::size_t m = 1; m <= inst.length(); ++m) {
    acc.push(inst.v_seq()[m - 1]);
    if (m >= inst.t() && acc.compare_with_target(inst.u()) > 0) return false;
  }
  return true;
}

// Inequality clause (b) given the residuals Q_m of a u-sequence satisfying
// the equation. With u - sum u = Q_m, the slack u - sum v - u prod v equals
// Q_m (1 - rho) - delta, where delta = sum (v_i - u_i) and rho = prod v_i / u_i.
// Both only change where v and u differ.
bool inequality_with_residuals(std::size_t t, std::span<const Rational> u_seq,
                               std::span<const Rational> v_seq,
                               const std::vector<Rational>& residuals) {
  Rational delta;
  Rational rho(1);
  for (std::size_t m = 1; m <= u_seq.size(); ++m) {
    const Rational& v = v_seq[m - 1];
    const Rational& u = u_seq[m - 1];
    if (v != u) {
      delta += v - u;
      rho *= v / u;
    }
    if (m < t || (delta.sign() == 0 && rho == Rational(1))) continue;
    const Rational slack = residuals[m - t] * (Rational(1) - rho) - delta;
    if (slack.sign() < 0) return false;
  }
  return true;
}

bool below_threshold_dominated(std::size_t t, std::span<const Rational> u_seq,
                               std::span<const Rational> v_seq) {
  for (std::size_t m = 1; m < t; ++m)
    if (v_seq[m - 1] > u_seq[m - 1]) return false;
  return true;
}

}  // namespace

bool check_equation_hypothesis(const ComparisonInstance& inst) {
  return equation_residuals(inst.u(), inst.t(), inst.u_seq()).has_value();
}

bool check_inequality_hypothesis(const ComparisonInstance& inst) {
  if (!below_threshold_dominated(inst.t(), inst.u_seq(), inst.v_seq())) return false;
  const auto residuals = equation_residuals(inst.u(), inst.t(), inst.u_seq());
  if (!residuals) return inequality_by_accumulation(inst);
  return inequality_with_residuals(inst.t(), inst.u_seq(), inst.v_seq(), *residuals);
}

bool conclusion_holds(const ComparisonInstance& inst) {
  // Track sum(v) - sum(u); positions where the sequences agree cost nothing.
  Rational excess;
  for (std::size_t i = 0; i < inst.length(); ++i) {
    const Rational& v = inst.v_seq()[i];
    const Rational& u = inst.u_seq()[i];
    if (v != u) excess += v - u;
    if (excess.sign() > 0) return false;
  }
  return true;
}

ProductLemmaResult check_prefix_product_lemma(std::span<const Rational> x,
                                              std::span<const Rational> y) {
  if (x.size() != y.size()) throw std::invalid_argument("x and y must have equal length");
  require_nonincreasing_positive(x, "x");
  require_nonincreasing_positive(y, "y");
  ProductLemmaResult result;
  result.hypothesis = true;
  Rational px(1), py(1), sx, sy;
  for (std::size_t j = 0; j < x.size(); ++j) {
    px *= x[j];
    py *= y[j];
    sx += x[j];
    sy += y[j];
    if (px < py) result.hypothesis = false;
  }
  result.conclusion = sx >= sy;
  return result;
}

Rational extend_equation_sequence(const Rational& u, std::span<const Rational> prefix) {
  if (u.sign() <= 0) throw std::invalid_argument("u must be positive");
  Rational sum;
  Rational product(1);
  for (const auto& x : prefix) {
    if (x.sign() <= 0) throw std::invalid_argument("prefix must be positive");
    sum += x;
    product *= x;
  }
  Rational next = (u - sum) / (Rational(1) + u * product);
  if (next.sign() <= 0)
    throw std::domain_error("extend_equation_sequence: prefix already exhausts u");
  if (!prefix.empty() && next > prefix.back())
    throw std::domain_error("extend_equation_sequence: next term exceeds the last prefix term");
  return next;
}

FuzzReport fuzz_comparison(std::uint64_t seed, std::size_t cases, std::size_t length) {
  if (length < 1) throw std::invalid_argument("fuzz length must be >= 1");
  FuzzReport report;
  report.seed = seed;
  report.cases = cases;
  report.length = length;

  for (std::size_t c = 0; c < cases; ++c) {
    CaseRng rng(seed, kComparisonStream, c);
    Draft draft;
    std::size_t drafts = 0;
    while (!draw_equation_sequence(rng, length, 0, draft)) {
      ++report.rejected_drafts;
      if (++drafts == kMaxDrafts) {
        draw_equation_sequence(rng, length, 1, draft);
        break;
      }
    }
    // Exact equation check, computed once; a failure here is a generator bug
    // and is reported as a counterexample below.
    const auto residuals = equation_residuals(draft.u, draft.t, draft.u_seq);
    // Perturbations stay within the first few indices, where terms are small.
    const std::size_t window = std::min(length, draft.t + 3);
    std::vector<Rational> v_seq;
    std::vector<std::size_t> touched;
    std::string mode = "identity";
    bool accepted = false;
    for (std::size_t attempt = 0; attempt < kMaxPerturbations && !accepted; ++attempt) {
      v_seq = draft.u_seq;
      touched.clear();
      const bool transfer = rng.below(2) == 1;
      if (transfer) {
        const auto j = static_cast<std::size_t>(rng.below(window));
        v_seq[j] *= rng.fraction_below_one();
        touched.push_back(j);
        if (j + 1 < window) {
          const auto k = j + 1 + static_cast<std::size_t>(rng.below(window - j - 1));
          v_seq[k] *= Rational(1) + rng.fraction_below_one();
          touched.push_back(k);
        }
      } else {
        const auto count = 1 + static_cast<std::size_t>(rng.below(std::min<std::size_t>(3, window)));
        for (std::size_t n = 0; n < count; ++n) {
          const auto j = static_cast<std::size_t>(rng.below(window));
          v_seq[j] *= rng.fraction_below_one();
          touched.push_back(j);
        }
      }
      std::sort(touched.begin(), touched.end());
      touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
      if (!nonincreasing_prefix(v_seq, window)) continue;
      if (!below_threshold_dominated(draft.t, draft.u_seq, v_seq)) continue;
      if (residuals && !inequality_with_residuals(draft.t, draft.u_seq, v_seq, *residuals)) continue;
      accepted = true;
      mode = transfer ? "transfer" : "down";
    }
    if (!accepted) {
      ++report.retries_exhausted;
      v_seq = draft.u_seq;
      touched.clear();
    }

    const auto inst = ComparisonInstance::make_trusted(draft.u, draft.t, std::move(draft.u_seq),
                                                       std::move(v_seq));
    const bool equation = residuals.has_value();
    const bool inequality =
        below_threshold_dominated(inst.t(), inst.u_seq(), inst.v_seq()) &&
        (residuals ? inequality_with_residuals(inst.t(), inst.u_seq(), inst.v_seq(), *residuals)
                   : inequality_by_accumulation(inst));
    const bool holds = conclusion_holds(inst);
    const bool pass = equation && inequality && holds;
    if (pass) {
      ++report.passed;
    } else {
      ++report.failed;
      json cex = inst.to_json();
      cex["case"] = c;
      cex["equation_hypothesis"] = equation;
      cex["inequality_hypothesis"] = inequality;
      cex["conclusion"] = holds;
      report.counterexamples.push_back(std::move(cex));
    }
    std::ostringstream line;
    line << "case " << c << ": u=" << inst.u().to_string() << " t=" << inst.t()
         << " mode=" << mode << " perturbed=" << join_indices(touched)
         << " result=" << (pass ? "pass" : "FAIL");
    report.case_lines.push_back(line.str());
  }
  return report;
}

std::string FuzzReport::to_text() const {
  std::ostringstream out;
  out << "comparison-lemma fuzz: seed=" << seed << " cases=" << cases << " length=" << length
      << "\n";
  for (const auto& line : case_lines) out << line << "\n";
  out << "passed=" << passed << " failed=" << failed << " rejected_drafts=" << rejected_drafts
      << " retries_exhausted=" << retries_exhausted << "\n";
  for (const auto& cex : counterexamples) out << "counterexample: " << cex.dump() << "\n";
  return out.str();
}

json FuzzReport::to_json() const {
  return json{{"seed", seed},
              {"cases", cases},
              {"length", length},
              {"passed", passed},
              {"failed", failed},
              {"rejected_drafts", rejected_drafts},
              {"retries_exhausted", retries_exhausted},
              {"case_lines", case_lines},
              {"counterexamples", counterexamples}};
}

namespace {

std::vector<Rational> draw_nonincreasing(CaseRng& rng, std::size_t length) {
  std::vector<Rational> out;
  out.emplace_back(BigInt(1 + static_cast<long>(rng.below(20))),
                   BigInt(1 + static_cast<long>(rng.below(20))));
  while (out.size() < length) {
    const long b = 1 + static_cast<long>(rng.below(10));
    const long a = 1 + static_cast<long>(rng.below(static_cast<std::uint64_t>(b)));
    out.push_back(out.back() * Rational(BigInt(a), BigInt(b)));
  }
  return out;
}

// y with prefix products bounded by those of x: each y_j is capped by both
// y_{j-1} and prod(x_{<=j}) / prod(y_{<j}), then shrunk by a factor in [1/2, 1].
std::vector<Rational> draw_dominated(CaseRng& rng, std::span<const Rational> x) {
  std::vector<Rational> y;
  Rational px(1), py(1);
  for (const auto& xj : x) {
    px *= xj;
    Rational cap = px / py;
    if (!y.empty()) cap = std::min(cap, y.back());
    const long b = 2 + static_cast<long>(rng.below(9));
    const long a = (b + 1) / 2 + static_cast<long>(rng.below(static_cast<std::uint64_t>(b - (b + 1) / 2 + 1)));
    Rational yj = cap * Rational(BigInt(a), BigInt(b));
    py *= yj;
    y.push_back(std::move(yj));
  }
  return y;
}

}  // namespace

ProductFuzzReport fuzz_prefix_product(std::uint64_t seed, std::size_t cases,
                                      std::size_t max_length) {
  if (max_length < 1) throw std::invalid_argument("max_length must be >= 1");
  ProductFuzzReport report;
  report.seed = seed;
  for (std::uint64_t index = 0; report.cases < cases; ++index) {
    CaseRng rng(seed, kProductStream, index);
    ++report.drawn;
    const auto length = 1 + static_cast<std::size_t>(rng.below(max_length));
    const auto x = draw_nonincreasing(rng, length);
    const auto y = rng.below(2) == 0 ? draw_dominated(rng, x) : draw_nonincreasing(rng, length);
    const auto result = check_prefix_product_lemma(x, y);
    if (!result.hypothesis) continue;
    ++report.cases;
    if (result.conclusion) {
      ++report.passed;
    } else {
      ++report.failed;
      report.counterexamples.push_back(
          json{{"index", index}, {"x", rational_list(x)}, {"y", rational_list(y)}});
    }
  }
  return report;
}

std::string ProductFuzzReport::to_text() const {
  std::ostringstream out;
  out << "prefix-product fuzz: seed=" << seed << " cases=" << cases << " drawn=" << drawn
      << " passed=" << passed << " failed=" << failed << "\n";
  for (const auto& cex : counterexamples) out << "counterexample: " << cex.dump() << "\n";
  return out.str();
}

json ProductFuzzReport::to_json() const {
  return json{{"seed", seed},
              {"cases", cases},
              {"drawn", drawn},
              {"passed", passed},
              {"failed", failed},
              {"counterexamples", counterexamples}};
}

}  // namespace sylvester
