// Acceptance gate: one PASS/FAIL line per criterion. Exit status is nonzero if
// any criterion fails.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "oracles.hpp"
#include "sylvester/cli.hpp"
#include "sylvester/constants.hpp"
#include "sylvester/decomposition.hpp"
#include "sylvester/errors.hpp"
#include "sylvester/lemma.hpp"
#include "sylvester/sequence.hpp"

#ifndef SYLVESTER_CLI
#error "SYLVESTER_CLI must point at the built command-line binary"
#endif
#ifndef GOLDEN_DIR
#error "GOLDEN_DIR must point at tests/golden"
#endif

using namespace sylvester;
using Clock = std::chrono::steady_clock;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      if (pass) detail << "first failure: " << what << "; ";
      pass = false;
    }
  }
};

int failures = 0;

void criterion(int number, const std::string& name, double limit_seconds,
               const std::function<void(Verdict&)>& body) {
  Verdict v;
  const auto start = Clock::now();
  try {
    body(v);
  } catch (const std::exception& e) {
    v.require(false, std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  if (limit_seconds > 0) {
    std::ostringstream lim;
    lim << "runtime " << secs << " s exceeds " << limit_seconds << " s";
    v.require(secs < limit_seconds, lim.str());
  }
  if (!v.pass) ++failures;
  std::cout << "criterion " << number << ": " << (v.pass ? "PASS" : "FAIL") << "  " << name
            << "  [" << v.detail.str() << std::fixed;
  std::cout.precision(3);
  std::cout << secs << " s]" << std::endl;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

struct Process {
  int code = -1;
  std::string out;
};

// Runs a shell command line and captures stdout; stderr is discarded.
Process shell(const std::string& command) {
  Process p;
  FILE* pipe = popen((command + " 2>/dev/null").c_str(), "r");
  if (!pipe) throw std::runtime_error("popen failed");
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) p.out.append(buf, got);
  const int status = pclose(pipe);
  p.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return p;
}

std::string quoted(const std::string& s) { return "'" + s + "'"; }

bool is_pronic(long m) {
  const long j = static_cast<long>(isqrt_floor(m).get_si());
  return j * (j + 1) == m;
}

}  // namespace

int main() {
  std::cout << "acceptance criteria" << std::endl;

  criterion(1, "constant reproduction: const --n 1 --digits 4 begins 1.2640", 1.0, [](Verdict& v) {
    std::istringstream in;
    std::ostringstream out, err;
    const int code = cli::run({"sylvester", "--json", "const", "--n", "1", "--digits", "4"}, in,
                              out, err);
    v.require(code == 0, "exit code 0");
    const auto j = nlohmann::json::parse(out.str());
    const std::string decimal = j.at("decimal");
    v.require(decimal.rfind("1.2640", 0) == 0, "decimal rendering begins 1.2640");
    const auto parse_rat = [](const std::string& s) {
      mpq_class q(s, 10);
      q.canonicalize();
      return Rational(q.get_num(), q.get_den());
    };
    const Rational lo = parse_rat(j.at("lo"));
    const Rational hi = parse_rat(j.at("hi"));
    v.require(hi - lo <= Rational(BigInt(1), BigInt(10000)), "width <= 1e-4");
    v.require(decimal_truncate(lo, 4) == "1.2640" && decimal_truncate(hi, 4) == "1.2640",
              "both endpoints truncate to 1.2640");
    v.detail << "enclosure [" << lo.to_string() << ", " << hi.to_string() << "]; ";
  });

  criterion(2, "sandwich: n < lo^2 and hi^2 < n+1 for c_value(n, 10), n <= 100", 30.0,
            [](Verdict& v) {
              for (long n = 1; n <= 100; ++n) {
                const auto c = c_value(n, 10);
                v.require(c.width() <= Rational(BigInt(1), pow10(10)),
                          "width n=" + std::to_string(n));
                v.require(Rational(n) < rat_pow2(c.lo(), 1), "lower n=" + std::to_string(n));
                v.require(rat_pow2(c.hi(), 1) < Rational(n + 1), "upper n=" + std::to_string(n));
              }
              v.detail << "100 enclosures; ";
            });

  criterion(3, "identity suites: telescoping/product n<=30 j<=8, shift n<=10 i+j<=9", 60.0,
            [](Verdict& v) {
              std::size_t checks = 0;
              for (long n = 1; n <= 30; ++n)
                for (std::size_t j = 1; j <= 8; ++j) {
                  v.require(verify_telescoping(n, j), "telescoping " + std::to_string(n));
                  v.require(verify_product(n, j), "product " + std::to_string(n));
                  checks += 2;
                }
              for (long n = 1; n <= 10; ++n)
                for (std::size_t i = 1; i <= 8; ++i)
                  for (std::size_t j = 1; i + j <= 9; ++j) {
                    v.require(verify_shift(n, i, j), "shift " + std::to_string(n));
                    ++checks;
                  }
              v.detail << checks << " exact checks; ";
            });

  criterion(4, "score calculus: normalization EQ, shift_reduce EQ, no refinement guard", 0,
            [](Verdict& v) {
              for (long n = 1; n <= 50; ++n)
                v.require(score_compare({n, 0}, {n * (n + 1), 1}) == Ordering::EQ,
                          "normalization n=" + std::to_string(n));
              for (long n = 1; n <= 10; ++n)
                for (std::size_t k = 1; k <= 5; ++k)
                  v.require(score_compare({shift_reduce(n, k), static_cast<std::int64_t>(k) - 1},
                                          {n, 0}) == Ordering::EQ,
                            "shift_reduce n=" + std::to_string(n));

              // Distinct normal forms with base <= 200 and |halvings| <= 8.
              std::vector<ScoreExpr> forms;
              for (long m = 1; m <= 200; ++m)
                if (!is_pronic(m))
                  for (long k = -8; k <= 8; ++k) forms.push_back({m, k});
              std::vector<std::pair<std::size_t, std::size_t>> pairs;
              // Every form against its neighbours in base and in halvings.
              for (std::size_t a = 0; a < forms.size(); ++a)
                for (std::size_t b = a + 1; b < forms.size() && b <= a + 18; ++b)
                  pairs.emplace_back(a, b);
              // Plus a seeded random sample of arbitrary pairs.
              std::mt19937_64 rng(4);
              for (int r = 0; r < 20000; ++r) {
                const std::size_t a = rng() % forms.size();
                const std::size_t b = rng() % forms.size();
                if (a != b) pairs.emplace_back(a, b);
              }
              std::size_t guard_hits = 0;
              for (const auto& [a, b] : pairs) {
                try {
                  const Ordering o = score_compare(forms[a], forms[b]);
                  v.require(o != Ordering::EQ && o == oracle::compare_by_index(forms[a], forms[b]),
                            "ordering of " + forms[a].to_string() + " vs " + forms[b].to_string());
                } catch (const RefinementGuardError& e) {
                  ++guard_hits;
                  v.require(false, e.what());
                }
              }
              v.detail << forms.size() << " normal forms, " << pairs.size()
                       << " distinct pairs, guard hits " << guard_hits << "; ";
            });

  criterion(5, "theorem apparatus: comparison equation, l-inequality, witnesses", 120.0,
            [](Verdict& v) {
              for (long n = 1; n <= 20; ++n)
                v.require(verify_comparison_equation(n, 8),
                          "comparison equation n=" + std::to_string(n));
              for (long n = 2; n <= 10000; ++n)
                v.require(verify_l_inequality(n), "l-inequality n=" + std::to_string(n));
              for (long n = 1; n <= 200; ++n) {
                const auto w = witness(n);
                const auto again = make_tail(w.n(), w.prefix(), w.tail_base());
                v.require(again == w, "witness revalidates n=" + std::to_string(n));
                v.require(!is_sylvester(w), "witness non-Sylvester n=" + std::to_string(n));
                v.require(theorem_check(w), "theorem_check n=" + std::to_string(n));
                v.require(score_compare(score(w), {n, 0}) == Ordering::LT,
                          "witness LT n=" + std::to_string(n));
              }
              v.detail << "20 equations, 9999 inequalities, 200 witnesses; ";
            });

  criterion(6, "comparison-lemma fuzz (1000 x length 20) and 1000 prefix-product pairs", 0,
            [](Verdict& v) {
              constexpr std::uint64_t kSeed = 20241015;
              const auto comparison = fuzz_comparison(kSeed, 1000, 20);
              const auto product = fuzz_prefix_product(kSeed, 1000);
              v.require(comparison.passed == 1000 && comparison.failed == 0,
                        "all comparison instances satisfy the conclusion");
              v.require(product.cases == 1000 && product.passed == 1000 && product.failed == 0,
                        "all prefix-product pairs satisfy the conclusion");
              const std::string text = comparison.to_text() + product.to_text();
              const std::string golden =
                  read_file(std::string(GOLDEN_DIR) + "/lemma_fuzz_seed20241015.txt");
              v.require(text == golden, "report is byte-identical to the recorded run");
              v.detail << "comparison " << comparison.passed << "/" << comparison.cases
                       << ", product " << product.passed << "/" << product.cases
                       << ", identity fallbacks " << comparison.retries_exhausted << "; ";
            });

  criterion(7, "residual integrality tight on Sylvester prefixes, n <= 20, m <= 6", 0,
            [](Verdict& v) {
              for (long n = 1; n <= 20; ++n) {
                const auto d = make_tail(n, {}, n);
                for (std::size_t m = 0; m <= 6; ++m) {
                  const auto r = residual_integrality(d, m);
                  v.require(residual_integrality_check(d, m) && r.holds && r.tight,
                            "n=" + std::to_string(n) + " m=" + std::to_string(m));
                }
              }
              v.detail << "140 prefixes; ";
            });

  criterion(8, "CLI contract: golden outputs, exit codes 0/1/2, witness -> score", 0,
            [](Verdict& v) {
              const std::string cli = quoted(SYLVESTER_CLI);
              const std::string golden_dir = GOLDEN_DIR;
              const std::string witness_n1 = R"({"n":"1","prefix":["2","4"],"tail_base":"4"})";
              struct Golden {
                std::string args;
                std::string file;
              };
              const std::vector<Golden> goldens = {
                  {"seq --n 1 --count 5", "seq_n1_count5.txt"},
                  {"--json seq --n 1 --count 5", "seq_n1_count5.json"},
                  {"const --n 1 --digits 4", "const_n1_digits4.txt"},
                  {"--json const --n 1 --digits 4", "const_n1_digits4.json"},
                  {"--json const --n 3 --digits 1", "const_n3_digits1.json"},
                  {"witness --n 1", "witness_n1.txt"},
                  {"--json witness --n 2", "witness_n2.json"},
                  {"--json witness --n 4", "witness_n4.json"},
                  {"score " + quoted(witness_n1), "score_witness_n1.txt"},
                  {"--json score " + quoted(witness_n1), "score_witness_n1.json"},
                  {"--json score " + quoted(R"({"n":"3","prefix":[],"tail_base":"3"})"),
                   "score_sylvester_n3.json"},
              };
              for (const auto& g : goldens) {
                const auto p = shell(cli + " " + g.args);
                v.require(p.code == 0, "exit 0 for " + g.args);
                v.require(p.out == read_file(golden_dir + "/" + g.file), "golden " + g.file);
              }

              struct ExitCase {
                std::string args;
                int code;
              };
              const std::vector<ExitCase> exits = {
                  {"seq --n 1 --count 0", 2},
                  {"witness --n 0", 2},
                  {"verify lemma --cases 3", 2},
                  {"score " + quoted(R"({"n":"1","prefix":["2","5"],"tail_base":"4"})"), 2},
                  {"const --n 1 --digits 1001", 2},
                  {"--max-digits 20 verify identities --n 1 --count 8", 1},
                  {"verify identities --n 3 --count 5", 0},
                  {"verify lemma --seed 1 --cases 3 --len 6", 0},
              };
              bool saw[3] = {false, false, false};
              for (const auto& e : exits) {
                const auto p = shell(cli + " " + e.args);
                v.require(p.code == e.code, "exit " + std::to_string(e.code) + " for " + e.args +
                                                " (got " + std::to_string(p.code) + ")");
                if (p.code >= 0 && p.code <= 2 && p.code == e.code) saw[p.code] = true;
              }
              v.require(saw[0] && saw[1] && saw[2], "exit codes 0, 1 and 2 all observed");

              for (const char* n : {"1", "2", "3", "10", "57"}) {
                const auto p = shell(cli + " --json witness --n " + n + " | " + cli + " --json score -");
                v.require(p.code == 0, std::string("round trip exit 0 n=") + n);
                const auto j = nlohmann::json::parse(p.out);
                v.require(j.at("verdict") == "LT" && j.at("theorem_check") == true,
                          std::string("round trip verdict n=") + n);
              }
              v.detail << goldens.size() << " golden files, " << exits.size()
                       << " exit-code cases, 5 round trips; ";
            });

  std::cout << (failures == 0 ? "acceptance: all criteria PASS"
                              : "acceptance: " + std::to_string(failures) + " criteria FAIL")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
