// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <fmt/format.h>
#include <fmt/ranges.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <sstream>
#include <sys/wait.h>

#include "sstt/cli/cli.h"
#include "sstt/corpus/corpus.h"
#include "sstt/kernel/module.h"
#include "sstt/shape/shape.h"
#include "sstt/surface/syntax.h"
#include "sstt/tope/oracle.h"
#include "sstt/tope/parse.h"
#include "sstt/tope/tope.h"
#include "support/json_schema.h"
#include "support/random_term.h"
#include "support/random_tope.h"

namespace {

using namespace sstt;
using tope::IntervalTerm;
using tope::Tope;

struct Verdict {
  bool pass;
  std::string detail;
};

// Every atom over the given variables and the endpoints, without trivially
// reflexive ones.
std::vector<Tope> all_atoms(const std::vector<std::string>& vars) {
  std::vector<IntervalTerm> terms = {IntervalTerm::zero(), IntervalTerm::one()};
  for (const auto& v : vars) terms.push_back(IntervalTerm::var(v));
  std::vector<Tope> atoms = {Tope::top(), Tope::bot()};
  for (std::size_t i = 0; i < terms.size(); ++i)
    for (std::size_t j = 0; j < terms.size(); ++j) {
      if (i == j) continue;
      atoms.push_back(Tope::le(terms[i], terms[j]));
      if (i < j) atoms.push_back(Tope::eq(terms[i], terms[j]));
    }
  return atoms;
}

Verdict entailment_agrees_with_oracle() {
  auto start = std::chrono::steady_clock::now();
  std::size_t exhaustive = 0, random = 0, random_true = 0;
  std::string first_disagreement;
  auto compare = [&](const tope::CubeContext& cube, const Tope& hyp, const Tope& goal) {
    if (tope::entails(cube, hyp, goal) != tope::oracle_entails(cube, hyp, goal) &&
        first_disagreement.empty())
      first_disagreement = tope::to_string(hyp) + " => " + tope::to_string(goal);
  };

  // Queries with at most three atoms in total, over one and two variables.
  for (const std::vector<std::string>& vars : {std::vector<std::string>{"t"}, {"t", "s"}}) {
    tope::CubeContext cube(vars);
    std::vector<Tope> one = all_atoms(vars);
    std::vector<Tope> two;
    for (const auto& a : one)
      for (const auto& b : one) {
        two.push_back(Tope::make_and(a, b));
        two.push_back(Tope::make_or(a, b));
      }
    for (const auto& h : one)
      for (const auto& g : one) compare(cube, h, g), ++exhaustive;
    for (const auto& a : one)
      for (const auto& b : two) {
        compare(cube, a, b);
        compare(cube, b, a);
        exhaustive += 2;
      }
    // Every three-atom tope, as a goal from TOP and as a hypothesis for BOT.
    for (const auto& a : one)
      for (const auto& b : two) {
        for (const Tope& t : {Tope::make_and(a, b), Tope::make_or(a, b), Tope::make_and(b, a),
                              Tope::make_or(b, a)}) {
          compare(cube, Tope::top(), t);
          compare(cube, t, Tope::bot());
          exhaustive += 2;
        }
      }
  }

  for (std::size_t n : {3, 4}) {
    std::vector<std::string> vars = {"t", "s", "r", "q"};
    vars.resize(n);
    tope::CubeContext cube(vars);
    testing::RandomTopes gen(vars, 1000 + n);
    for (int i = 0; i < 500; ++i) {
      int depth = 1 + i % 6;
      Tope hyp = gen.tope(depth), goal = gen.tope(depth);
      compare(cube, hyp, goal);
      random_true += tope::oracle_entails(cube, hyp, goal);
      ++random;
    }
  }

  double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  bool pass = first_disagreement.empty() && seconds < 60;
  std::string detail = fmt::format("{} exhaustive + {} random queries ({} valid) in {:.1f}s",
                                   exhaustive, random, random_true, seconds);
  if (!first_disagreement.empty()) detail += "; disagree on " + first_disagreement;
  return {pass, detail};
}

struct Outcome {
  int code;
  std::string out, err;
};

Outcome cli(std::vector<std::string> args, const std::string& input = "") {
  std::ostringstream out, err;
  std::istringstream in(input);
  int code = cli::run_cli(args, out, err, in);
  return {code, out.str(), err.str()};
}

// Runs the installed binary through the shell and returns its exit status.
int binary_exit(const std::string& args) {
  std::string command = fmt::format("\"{}\" {} >/dev/null 2>&1", SSTT_BINARY, args);
  int status = std::system(command.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Verdict linearity_queries() {
  Outcome forward = cli({"tope", "entails", "[t,s] TOP => (s<=t)\\/(t<=s)"});
  Outcome converse = cli({"tope", "entails", "[t,s] (s<=t)\\/(t<=s) => TOP"});
  bool pass = forward.code == 0 && forward.out == "true\n" && converse.code == 0 &&
              converse.out == "true\n";
  auto verdict = [](const Outcome& o) { return o.out.substr(0, o.out.find('\n')); };
  return {pass, fmt::format("TOP => s<=t \\/ t<=s is {}, converse is {}", verdict(forward),
                            verdict(converse))};
}

Verdict leibniz_goldens() {
  using shape::leibniz_tensor;
  using shape::standard_inclusion;
  shape::Shape square = shape::standard_shape("square");
  struct Golden {
    const char* j;
    const char* k;
    const char* sub;
  };
  std::vector<std::string> failures;
  for (const Golden& g : {Golden{"b1", "b1", "(t==0 \\/ t==1) \\/ (s==0 \\/ s==1)"},
                          Golden{"b1", "i0", "(t==0 \\/ t==1) \\/ (s==0)"},
                          Golden{"i0", "i0", "(t==0) \\/ (s==0)"}}) {
    shape::ShapeInclusion r = leibniz_tensor(standard_inclusion(g.j), standard_inclusion(g.k));
    std::string got = tope::to_string_grouped(r.sub());
    if (got != g.sub || !tope::equiv(r.cube(), r.sub(), tope::parse_tope(g.sub)))
      failures.push_back(fmt::format("{}x{} gave {}", g.j, g.k, got));
    if (!r.verified() || !shape::subseteq(r.domain(), square).ok() ||
        !shape::shape_equal(r.codomain(), square))
      failures.push_back(fmt::format("{}x{} is not an inclusion into the square", g.j, g.k));
  }
  shape::ShapeInclusion id =
      leibniz_tensor(standard_inclusion("id:Delta1"), standard_inclusion("id:Delta1"));
  if (!shape::shape_equal(id.domain(), id.codomain()))
    failures.push_back("id x id has different endpoints");
  return {failures.empty(),
          failures.empty() ? "b1xb1, b1xi0, i0xi0 match and land in the square; id x id is an identity"
                           : fmt::format("{}", fmt::join(failures, "; "))};
}

Verdict simplex_inclusions() {
  using shape::standard_shape;
  shape::Shape horn = standard_shape("Lambda21"), simplex = standard_shape("Delta2"),
               square = standard_shape("square"), boundary = standard_shape("dDelta2");
  std::vector<std::string> failures;
  if (!shape::subseteq(horn, simplex).ok()) failures.push_back("horn not in simplex");
  if (!shape::subseteq(simplex, square).ok()) failures.push_back("simplex not in square");
  const auto& v = simplex.cube.vars();
  Tope diagonal = Tope::make_and(simplex.tope,
                                 Tope::eq(IntervalTerm::var(v[0]), IntervalTerm::var(v[1])));
  shape::Shape horn_and_diagonal{simplex.cube, Tope::make_or(horn.tope, diagonal)};
  if (!shape::shape_equal(boundary, horn_and_diagonal))
    failures.push_back("boundary differs from horn with diagonal");
  Outcome rejected = cli({"shape", "subseteq", "square", "Delta2"});
  std::string countermodel;
  if (auto pos = rejected.out.find("countermodel: "); pos != std::string::npos)
    countermodel = rejected.out.substr(pos + 14, rejected.out.find('\n', pos) - pos - 14);
  if (rejected.code != cli::kExitFailure || countermodel.empty())
    failures.push_back("square in simplex was not rejected with a countermodel");
  return {failures.empty(),
          failures.empty()
              ? "horn in simplex in square; boundary = horn + diagonal; square in simplex rejected at " +
                    countermodel
              : fmt::format("{}", fmt::join(failures, "; "))};
}

struct CorpusRuns {
  corpus::CorpusReport plain;
  corpus::CorpusReport oracle;
};

const CorpusRuns& corpus_runs() {
  static const CorpusRuns runs = [] {
    auto entries = corpus::load(SSTT_TEST_CORPUS_DIR);
    kernel::CheckOptions with_oracle;
    with_oracle.oracle_crosscheck = true;
    return CorpusRuns{corpus::run(entries), corpus::run(entries, with_oracle)};
  }();
  return runs;
}

Verdict corpus_checks() {
  const auto& report = corpus_runs().plain;
  std::vector<std::string> failed;
  std::size_t ok_files = 0;
  for (const auto& e : report.entries) {
    if (!e.entry.expects_ok()) continue;
    ++ok_files;
    if (!e.pass) failed.push_back(e.entry.label());
  }
  for (const char* need : {"basics.sst", "simplicial.sst", "comma.sst", "reladj.sst", "lari.sst[i0]",
                           "cocart.sst", "axioms.sst"}) {
    bool present = false;
    for (const auto& e : report.entries) present = present || e.entry.label() == need;
    if (!present) failed.push_back(std::string(need) + " missing");
  }
  bool pass = failed.empty() && report.sweep.failures.empty() && report.sweep.points > 0;
  std::string detail = fmt::format("{} files, {} declarations; boundary sweep {} points, {} failures",
                                   ok_files, report.declarations, report.sweep.points,
                                   report.sweep.failures.size());
  if (!failed.empty()) detail += fmt::format("; failing: {}", fmt::join(failed, ", "));
  return {pass, detail};
}

Verdict negatives_rejected() {
  const auto& report = corpus_runs().plain;
  std::size_t total = 0, rejected = 0;
  std::vector<std::string> wrong;
  for (const auto& e : report.entries) {
    if (e.entry.expects_ok()) continue;
    ++total;
    if (e.pass) ++rejected;
    else wrong.push_back(fmt::format("{} gave {}", e.entry.label(), e.actual));
  }
  std::string detail = fmt::format("{}/{} variants rejected with the expected class", rejected, total);
  if (!wrong.empty()) detail += fmt::format("; {}", fmt::join(wrong, ", "));
  return {wrong.empty() && rejected >= 10, detail};
}

Verdict round_trip() {
  std::size_t files = 0, terms = 0;
  std::vector<std::string> failures;
  auto stable = [&](const std::string& label, const std::string& text) {
    surface::ParseResult first = surface::parse_module(text, label);
    if (!first.errors.empty()) {
      failures.push_back(label + " does not parse");
      return;
    }
    std::string printed = surface::print_module(first.module);
    surface::ParseResult second = surface::parse_module(printed, label);
    if (!second.errors.empty() || !surface::alpha_equal_module(first.module, second.module) ||
        surface::print_module(second.module) != printed)
      failures.push_back(label + " changes under print and reparse");
  };
  for (const auto& loaded : corpus::load(SSTT_TEST_CORPUS_DIR)) {
    if (loaded.entry.expected == "expected-error:syntax-error") continue;
    stable(loaded.entry.label(), loaded.source.text);
    ++files;
  }
  testing::RandomTerms gen(7);
  kernel::Env env;
  for (int i = 0; i < 500; ++i) {
    std::string text = gen.declaration("r" + std::to_string(i));
    surface::ParseResult parsed = surface::parse_module(text);
    auto results = kernel::check_module(env, surface::elaborate(parsed.module));
    if (results.size() != 1 || !results[0].ok) failures.push_back("random term is ill-typed: " + text);
    stable("random term " + std::to_string(i), text);
    ++terms;
  }
  std::string detail = fmt::format("{} corpus files and {} well-typed random terms", files, terms);
  if (!failures.empty())
    detail += fmt::format("; {} failures, first: {}", failures.size(), failures.front());
  return {failures.empty(), detail};
}

Verdict cli_contract() {
  std::vector<std::string> failures;
  std::string dir = SSTT_TEST_CORPUS_DIR;
  auto expect_exit = [&](const std::string& args, int want) {
    int got = binary_exit(args);
    if (got != want) failures.push_back(fmt::format("`sstt {}` exited {} not {}", args, got, want));
  };
  expect_exit(fmt::format("check {0}/basics.sst {0}/simplicial.sst", dir), 0);
  expect_exit(fmt::format("check {0}/basics.sst {0}/simplicial.sst {0}/neg/wrong-boundary.sst", dir), 1);
  expect_exit("check /nonexistent.sst", 2);
  expect_exit("tope entails '[t] t <='", 2);
  expect_exit("--version", 0);

  std::ifstream schema_file(SSTT_TEST_SCHEMA);
  nlohmann::json schema = nlohmann::json::parse(schema_file);
  std::size_t documents = 0;
  for (const auto& loaded : corpus::load(dir)) {
    if (loaded.entry.expects_ok()) continue;
    Outcome r = cli({"check", "--json", "--dump", "--stdin"}, loaded.source.text);
    auto errors = testing::validate_json(schema, nlohmann::json::parse(r.out));
    if (!errors.empty()) failures.push_back(loaded.entry.label() + ": " + errors.front());
    ++documents;
  }
  Outcome full = cli({"corpus", "--dir", dir, "--json"});
  auto errors = testing::validate_json(schema, nlohmann::json::parse(full.out));
  if (!errors.empty()) failures.push_back("corpus report: " + errors.front());
  ++documents;

  const auto& runs = corpus_runs();
  std::size_t same = 0;
  for (std::size_t i = 0; i < runs.plain.entries.size(); ++i) {
    const auto& a = runs.plain.entries[i];
    const auto& b = runs.oracle.entries[i];
    if (a.actual == b.actual && cli::render_json({a.report}) == cli::render_json({b.report})) ++same;
    else failures.push_back(a.entry.label() + " differs under --oracle");
  }
  std::string detail = fmt::format(
      "exit codes 0/1/2 as documented; {} JSON reports valid; {}/{} corpus verdicts identical with --oracle",
      documents, same, runs.plain.entries.size());
  if (!failures.empty()) detail = fmt::format("{}", fmt::join(failures, "; "));
  return {failures.empty(), detail};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Verdict()> run;
  };
  const std::array<Criterion, 8> criteria = {{
      {"entailment agrees with the oracle", entailment_agrees_with_oracle},
      {"linearity through the tope command", linearity_queries},
      {"Leibniz tensor goldens", leibniz_goldens},
      {"simplex, horn and boundary inclusions", simplex_inclusions},
      {"corpus checks with clean boundary sweep", corpus_checks},
      {"negative variants rejected", negatives_rejected},
      {"parse/print/parse is stable", round_trip},
      {"CLI exit codes, JSON schema, oracle mode", cli_contract},
  }};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    if (!v.pass) ++failed;
    fmt::print("{} [{}] {}: {}\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].name, v.detail);
  }
  fmt::print("{}/{} criteria pass\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
