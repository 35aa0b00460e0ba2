#include "sylvester/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>

#include "sylvester/constants.hpp"
#include "sylvester/decomposition.hpp"
#include "sylvester/errors.hpp"
#include "sylvester/lemma.hpp"
#include "sylvester/sequence.hpp"

namespace sylvester::cli {

namespace {

using nlohmann::json;

class InvalidInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

BigInt parse_positive(const std::string& text, const char* what) {
  if (text.empty() ||
      !std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw InvalidInput(std::string(what) + " must be a positive integer, got \"" + text + "\"");
  BigInt value(text, 10);
  if (value < 1) throw InvalidInput(std::string(what) + " must be >= 1");
  return value;
}

std::int64_t parse_signed(const std::string& text, const char* what) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw InvalidInput(std::string(what) + " must be an integer, got \"" + text + "\"");
  }
}

std::string width_label(const RationalInterval& x, unsigned cap) {
  if (x.width().sign() == 0) return "0";
  return "1e-" + std::to_string(certified_decimals(x.width(), cap));
}

json interval_json(const RationalInterval& x, unsigned digits) {
  return json{{"lo", x.lo().to_string()},
              {"hi", x.hi().to_string()},
              {"decimal", decimal_truncate(x.lo(), digits)},
              {"width_le", width_label(x, digits + 8)}};
}

json score_json(const ScoreExpr& s) {
  return json{{"base", s.base.get_str()}, {"halvings", s.halvings}, {"text", s.to_string()}};
}

struct Options {
  bool json_output = false;
  std::size_t max_digits = kDefaultDigitBudget;
  std::string n;
  std::size_t count = 0;
  unsigned digits = 0;
  std::optional<std::uint64_t> seed;
  std::size_t cases = 100;
  std::size_t len = 20;
  std::string suite;
  std::string decomposition;
  std::vector<std::string> positionals;
};

Status cmd_seq(const Options& o, std::ostream& out) {
  const BigInt n = parse_positive(o.n, "--n");
  if (o.count < 1) throw InvalidInput("--count must be >= 1");
  const auto terms = default_cache().terms(n, o.count);
  if (o.json_output) {
    json arr = json::array();
    for (const auto& s : terms) arr.push_back(s.get_str());
    out << arr.dump() << "\n";
  } else {
    for (const auto& s : terms) out << s.get_str() << "\n";
  }
  return Status::kOk;
}

Status cmd_const(const Options& o, std::ostream& out) {
  const BigInt n = parse_positive(o.n, "--n");
  if (o.digits < 1 || o.digits > 1000) throw InvalidInput("--digits must be in [1, 1000]");
  const RationalInterval c = c_value(n, o.digits);
  if (o.json_output) {
    json j = interval_json(c, o.digits);
    j["n"] = n.get_str();
    j["digits"] = o.digits;
    out << j.dump() << "\n";
  } else {
    out << "n: " << n.get_str() << "\n"
        << "digits: " << o.digits << "\n"
        << "decimal: " << decimal_truncate(c.lo(), o.digits) << "\n"
        << "width_le: " << width_label(c, o.digits + 8) << "\n"
        << "lo: " << c.lo().to_string() << "\n"
        << "hi: " << c.hi().to_string() << "\n";
  }
  return Status::kOk;
}

// Collects pass counts per named check and the inputs of every failure.
class Sweep {
 public:
  void check(const std::string& name, bool passed, const std::string& inputs) {
    auto& entry = find(name);
    ++entry.total;
    if (passed) {
      ++entry.passed;
    } else {
      failures_.push_back(name + " " + inputs);
    }
  }

  // Runs `body`, counting exceptions as failures with their message.
  void guarded(const std::string& name, const std::string& inputs,
               const std::function<bool()>& body) {
    try {
      check(name, body(), inputs);
    } catch (const std::exception& e) {
      check(name, false, inputs + " (" + e.what() + ")");
    }
  }

  bool ok() const { return failures_.empty(); }

  void print(const std::string& suite, bool as_json, std::ostream& out) const {
    if (as_json) {
      json checks = json::array();
      for (const auto& e : entries_)
        checks.push_back(json{{"name", e.name}, {"passed", e.passed}, {"total", e.total}});
      out << json{{"suite", suite}, {"ok", ok()}, {"checks", checks}, {"failures", failures_}}.dump()
          << "\n";
      return;
    }
    for (const auto& e : entries_)
      out << e.name << ": " << e.passed << "/" << e.total << (e.passed == e.total ? " ok" : " FAILED")
          << "\n";
    for (const auto& f : failures_) out << "FAIL " << f << "\n";
    out << suite << ": " << (ok() ? "ok" : "verification failed") << "\n";
  }

 private:
  struct Entry {
    std::string name;
    std::size_t passed = 0;
    std::size_t total = 0;
  };

  Entry& find(const std::string& name) {
    for (auto& e : entries_)
      if (e.name == name) return e;
    entries_.push_back(Entry{name});
    return entries_.back();
  }

  std::vector<Entry> entries_;
  std::vector<std::string> failures_;
};

std::string args_text(std::initializer_list<std::pair<const char*, std::string>> args) {
  std::string out;
  for (const auto& [k, v] : args) {
    if (!out.empty()) out += " ";
    out += std::string(k) + "=" + v;
  }
  return out;
}

Status verify_identities(const Options& o, std::ostream& out) {
  const std::size_t max_n = o.n.empty() ? 10 : parse_positive(o.n, "--n").get_ui();
  const std::size_t max_j = o.count == 0 ? 6 : o.count;
  Sweep sweep;
  for (std::size_t n = 1; n <= max_n; ++n) {
    const BigInt bn(static_cast<unsigned long>(n));
    for (std::size_t j = 1; j <= max_j; ++j) {
      const auto in = args_text({{"n", std::to_string(n)}, {"j", std::to_string(j)}});
      sweep.guarded("telescoping", in, [&] { return verify_telescoping(bn, j); });
      sweep.guarded("product", in, [&] { return verify_product(bn, j); });
    }
    for (std::size_t i = 1; i <= max_j; ++i)
      for (std::size_t j = 1; i + j <= max_j + 1; ++j)
        sweep.guarded("shift",
                      args_text({{"n", std::to_string(n)}, {"i", std::to_string(i)},
                                 {"j", std::to_string(j)}}),
                      [&] { return verify_shift(bn, i, j); });
    sweep.guarded("square-normalization", args_text({{"n", std::to_string(n)}}), [&] {
      return score_compare(ScoreExpr{bn, 0}, ScoreExpr{BigInt(bn * (bn + 1)), 1}) == Ordering::EQ;
    });
    for (std::size_t k = 1; k <= max_j; ++k)
      sweep.guarded("shift-reduce", args_text({{"n", std::to_string(n)}, {"k", std::to_string(k)}}),
                    [&] {
                      const ScoreExpr shifted{shift_reduce(bn, k), static_cast<std::int64_t>(k) - 1};
                      return score_compare(shifted, ScoreExpr{bn, 0}) == Ordering::EQ;
                    });
  }
  sweep.print("identities", o.json_output, out);
  return sweep.ok() ? Status::kOk : Status::kVerificationFailed;
}

Status verify_theorem(const Options& o, std::ostream& out) {
  const std::size_t max_n = o.n.empty() ? 50 : parse_positive(o.n, "--n").get_ui();
  const std::size_t m_max = o.count == 0 ? 8 : o.count;
  Sweep sweep;
  for (std::size_t n = 1; n <= max_n; ++n) {
    const BigInt bn(static_cast<unsigned long>(n));
    const auto in = args_text({{"n", std::to_string(n)}});
    sweep.guarded("witness", in, [&] {
      const auto w = witness(bn);
      return !is_sylvester(w) && theorem_check(w);
    });
    sweep.guarded("sylvester-eq", in, [&] { return theorem_check(make_tail(bn, {}, bn)); });
    sweep.guarded("comparison-equation",
                  args_text({{"n", std::to_string(n)}, {"m_max", std::to_string(m_max)}}),
                  [&] { return verify_comparison_equation(bn, m_max); });
    if (n >= 2) sweep.guarded("l-inequality", in, [&] { return verify_l_inequality(bn); });
    for (std::size_t m = 0; m <= 6; ++m)
      sweep.guarded("residual-integrality",
                    args_text({{"n", std::to_string(n)}, {"m", std::to_string(m)}}), [&] {
                      const auto r = residual_integrality(make_tail(bn, {}, bn), m);
                      return r.holds && r.tight;
                    });
  }
  sweep.print("theorem", o.json_output, out);
  return sweep.ok() ? Status::kOk : Status::kVerificationFailed;
}

Status verify_lemma(const Options& o, std::ostream& out) {
  if (!o.seed) throw InvalidInput("verify lemma requires --seed");
  if (o.len < 1) throw InvalidInput("--len must be >= 1");
  const FuzzReport comparison = fuzz_comparison(*o.seed, o.cases, o.len);
  const ProductFuzzReport product = fuzz_prefix_product(*o.seed, o.cases);
  const bool ok = comparison.ok() && product.ok();
  if (o.json_output) {
    out << json{{"suite", "lemma"},
                {"ok", ok},
                {"comparison", comparison.to_json()},
                {"prefix_product", product.to_json()}}
               .dump()
        << "\n";
  } else {
    out << comparison.to_text() << product.to_text()
        << "lemma: " << (ok ? "ok" : "verification failed") << ", " << comparison.passed << "/"
        << comparison.cases << " comparison instances, " << product.passed << "/" << product.cases
        << " product pairs\n";
  }
  return ok ? Status::kOk : Status::kVerificationFailed;
}

Status cmd_verify(const Options& o, std::ostream& out) {
  if (o.suite == "identities") return verify_identities(o, out);
  if (o.suite == "theorem") return verify_theorem(o, out);
  if (o.suite == "lemma") return verify_lemma(o, out);
  throw InvalidInput("unknown suite \"" + o.suite + "\" (expected identities, theorem or lemma)");
}

json read_decomposition_json(const std::string& source, std::istream& in) {
  std::string text;
  const auto first = source.find_first_not_of(" \t\r\n");
  if (source == "-") {
    text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  } else if (first != std::string::npos && source[first] == '{') {
    text = source;
  } else {
    std::ifstream file(source);
    if (!file) throw InvalidInput("cannot read decomposition file \"" + source + "\"");
    text.assign(std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>());
  }
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw InvalidInput("decomposition is not valid JSON");
  // `witness --json` wraps the decomposition; accept that shape too.
  if (j.is_object() && j.contains("decomposition")) return j.at("decomposition");
  return j;
}

Status report_decomposition(const TailDecomposition& d, unsigned digits, bool as_json,
                            bool include_source, std::ostream& out) {
  const auto canonical = canonicalize(d);
  const ScoreExpr s = score(d);
  const ScoreExpr target{d.n(), 0};
  const Ordering verdict = score_compare(s, target);
  const bool ok = theorem_check(d);
  const RationalInterval lhs = score_enclosure(s, digits);
  const RationalInterval rhs = score_enclosure(target, digits);
  if (as_json) {
    json j{{"canonical", to_json(canonical)},
           {"score", score_json(s)},
           {"normal_form", score_json(score_normalize(s))},
           {"score_enclosure", interval_json(lhs, digits)},
           {"c_n_enclosure", interval_json(rhs, digits)},
           {"sylvester", is_sylvester(d)},
           {"verdict", to_string(verdict)},
           {"theorem_check", ok}};
    if (include_source) j["decomposition"] = to_json(d);
    out << j.dump() << "\n";
  } else {
    if (include_source) out << to_json(d).dump() << "\n";
    out << "canonical: " << to_json(canonical).dump() << "\n"
        << "score: " << s.to_string() << "\n"
        << "normal_form: " << score_normalize(s).to_string() << "\n"
        << "score_decimal: " << decimal_truncate(lhs.lo(), digits)
        << " (width_le " << width_label(lhs, digits + 8) << ")\n"
        << "c_n_decimal: " << decimal_truncate(rhs.lo(), digits)
        << " (width_le " << width_label(rhs, digits + 8) << ")\n"
        << "verdict: " << to_string(verdict) << "\n";
  }
  return ok ? Status::kOk : Status::kVerificationFailed;
}

Status cmd_score(const Options& o, std::istream& in, std::ostream& out) {
  const TailDecomposition d = decomposition_from_json(read_decomposition_json(o.decomposition, in));
  if (!o.n.empty() && parse_positive(o.n, "--n") != d.n())
    throw InvalidInput("--n does not match the decomposition's n");
  return report_decomposition(d, o.digits, o.json_output, false, out);
}

Status cmd_witness(const Options& o, std::ostream& out) {
  const BigInt n = parse_positive(o.n, "--n");
  const auto w = witness(n);
  const bool ok = !is_sylvester(w) && theorem_check(w);
  const Ordering verdict = score_compare(score(w), ScoreExpr{n, 0});
  if (o.json_output) {
    out << json{{"decomposition", to_json(w)},
                {"score", score_json(score(w))},
                {"verdict", to_string(verdict)}}
               .dump()
        << "\n";
  } else {
    out << to_json(w).dump() << "\n" << "verdict: " << to_string(verdict) << "\n";
  }
  return ok ? Status::kOk : Status::kVerificationFailed;
}

Status cmd_compare(const Options& o, std::ostream& out) {
  if (o.positionals.size() != 4)
    throw InvalidInput("compare expects: BASE_A HALVINGS_A BASE_B HALVINGS_B");
  const ScoreExpr a{parse_positive(o.positionals[0], "BASE_A"),
                    parse_signed(o.positionals[1], "HALVINGS_A")};
  const ScoreExpr b{parse_positive(o.positionals[2], "BASE_B"),
                    parse_signed(o.positionals[3], "HALVINGS_B")};
  const Ordering ord = score_compare(a, b);
  if (o.json_output) {
    out << json{{"a", score_json(a)},
                {"b", score_json(b)},
                {"a_normal_form", score_json(score_normalize(a))},
                {"b_normal_form", score_json(score_normalize(b))},
                {"ordering", to_string(ord)}}
               .dump()
        << "\n";
  } else {
    out << score_normalize(a).to_string() << " vs " << score_normalize(b).to_string() << ": "
        << to_string(ord) << "\n";
  }
  return Status::kOk;
}

Status cmd_greedy(const Options& o, std::ostream& out) {
  if (o.positionals.size() != 2) throw InvalidInput("greedy expects: P Q");
  const BigInt p = parse_positive(o.positionals[0], "P");
  const BigInt q = parse_positive(o.positionals[1], "Q");
  if (p >= q) throw InvalidInput("greedy requires 0 < P/Q < 1");
  const std::size_t max_terms = o.count == 0 ? 64 : o.count;
  const auto g = greedy_expand(p, q, max_terms);
  if (o.json_output) {
    json arr = json::array();
    for (const auto& a : g.denominators) arr.push_back(a.get_str());
    out << json{{"denominators", arr}, {"complete", g.complete}}.dump() << "\n";
  } else {
    for (std::size_t i = 0; i < g.denominators.size(); ++i)
      out << (i ? " " : "") << g.denominators[i].get_str();
    out << "\n" << (g.complete ? "complete" : "incomplete") << "\n";
  }
  return Status::kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  Options o;
  CLI::App app{"Generalized Sylvester sequences, their limit constants, and Egyptian-fraction "
               "decompositions of 1/n"};
  app.name(args.empty() ? "sylvester" : args.front());
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", o.json_output, "Machine-readable JSON output");
  app.add_option("--max-digits", o.max_digits, "Digit budget for any single sequence term")
      ->check(CLI::PositiveNumber);

  auto* seq = app.add_subcommand("seq", "Print s_1(n), ..., s_count(n)");
  seq->add_option("--n", o.n, "Seed n >= 1")->required();
  seq->add_option("--count", o.count, "Number of terms")->required();

  auto* cst = app.add_subcommand("const", "Rigorous enclosure of c_n");
  cst->add_option("--n", o.n, "Seed n >= 1")->required();
  cst->add_option("--digits", o.digits, "Enclosure width 10^-digits")->default_val(10);

  auto* verify = app.add_subcommand("verify", "Exact verification sweeps");
  verify->add_option("suite", o.suite, "identities | theorem | lemma")->required();
  verify->add_option("--n", o.n, "Largest n in the sweep");
  verify->add_option("--count", o.count, "Largest index j (identities) or m (theorem)");
  verify->add_option("--seed", o.seed, "Fuzz seed (required for lemma)");
  verify->add_option("--cases", o.cases, "Fuzz cases")->default_val(100);
  verify->add_option("--len", o.len, "Fuzz sequence length")->default_val(20);

  auto* sc = app.add_subcommand("score", "Score a decomposition against c_n");
  sc->add_option("decomposition", o.decomposition, "JSON text, file path, or - for stdin")
      ->required();
  sc->add_option("--n", o.n, "Expected n");
  sc->add_option("--digits", o.digits, "Decimal places shown")->default_val(12);

  auto* wit = app.add_subcommand("witness", "Non-Sylvester decomposition of 1/n beating c_n");
  wit->add_option("--n", o.n, "Target n >= 1")->required();

  auto* cmp = app.add_subcommand("compare", "Order c_a^(2^-k) against c_b^(2^-l)");
  cmp->add_option("values", o.positionals, "BASE_A HALVINGS_A BASE_B HALVINGS_B")->expected(4);

  auto* greedy = app.add_subcommand("greedy", "Greedy unit-fraction expansion of p/q");
  greedy->add_option("values", o.positionals, "P Q")->expected(2);
  greedy->add_option("--count", o.count, "Maximum number of terms (default 64)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();
  try {
    app.parse(reversed);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return static_cast<int>(Status::kInvalidInput);
  }

  if (o.max_digits != default_cache().digit_budget()) default_cache().set_digit_budget(o.max_digits);

  try {
    Status status = Status::kOk;
    if (*seq) status = cmd_seq(o, out);
    else if (*cst) status = cmd_const(o, out);
    else if (*verify) status = cmd_verify(o, out);
    else if (*sc) status = cmd_score(o, in, out);
    else if (*wit) status = cmd_witness(o, out);
    else if (*cmp) status = cmd_compare(o, out);
    else if (*greedy) status = cmd_greedy(o, out);
    return static_cast<int>(status);
  } catch (const RefinementGuardError& e) {
    err << "verification failed: " << e.what() << "\n";
    return static_cast<int>(Status::kVerificationFailed);
  } catch (const std::exception& e) {
    err << "invalid input: " << e.what() << "\n";
    return static_cast<int>(Status::kInvalidInput);
  }
}

}  // namespace sylvester::cli
