#include "sstt/cli/cli.h"

#include <fmt/format.h>

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "sstt/corpus/corpus.h"
#include "sstt/shape/shape.h"
#include "sstt/tope/oracle.h"
#include "sstt/tope/parse.h"

namespace sstt::cli {

using nlohmann::json;

std::string render_json(const std::vector<FileReport>& files) {
  json decls = json::array();
  std::size_t ok = 0, errors = 0;
  for (const auto& f : files) {
    for (const auto& d : f.decls) {
      json diags = json::array();
      for (const auto& g : d.diagnostics)
        diags.push_back({{"severity", g.severity},
                         {"message", g.message},
                         {"class", g.error_class},
                         {"hint", g.hint},
                         {"span", {{"file", g.file}, {"line", g.line}, {"col", g.col}}}});
      json entry = {{"file", f.file},
                    {"name", d.name},
                    {"kind", d.kind},
                    {"status", d.ok ? "ok" : "error"},
                    {"diagnostics", diags}};
      if (!d.core_type.empty()) entry["core"] = {{"type", d.core_type}, {"value", d.core_value}};
      decls.push_back(std::move(entry));
      (d.ok ? ok : errors)++;
    }
  }
  json doc = {{"version", std::string(kVersion)},
              {"declarations", decls},
              {"summary", {{"ok", ok}, {"error", errors}, {"total", ok + errors}}}};
  return doc.dump(2);
}

namespace {

struct CheckArgs {
  std::vector<std::string> files;
  bool json = false;
  bool dump = false;
  bool oracle = false;
  bool from_stdin = false;
  unsigned jobs = 1;
};

void print_human(const std::vector<FileReport>& files, std::ostream& out, std::ostream& err) {
  std::size_t ok = 0, errors = 0;
  for (const auto& f : files) {
    out << f.file << "\n";
    for (const auto& d : f.decls) {
      out << fmt::format("  {:<6} {:<7} {}\n", d.ok ? "ok" : "error", d.kind, d.name);
      if (!d.core_type.empty()) out << fmt::format("           : {}\n", d.core_type);
      if (!d.core_value.empty()) out << fmt::format("          := {}\n", d.core_value);
      for (const auto& g : d.diagnostics) {
        err << fmt::format("{}:{}:{}: {}: [{}] {}\n", g.file, g.line, g.col, g.severity,
                           g.error_class, g.message);
        if (!g.hint.empty()) err << "  " << g.hint << "\n";
      }
      (d.ok ? ok : errors)++;
    }
  }
  out << fmt::format("summary: {} ok, {} error, {} total\n", ok, errors, ok + errors);
}

int run_check(const CheckArgs& args, std::ostream& out, std::ostream& err, std::istream& in) {
  std::vector<Source> sources;
  if (args.from_stdin) {
    std::ostringstream ss;
    ss << in.rdbuf();
    sources.push_back({"<stdin>", ss.str()});
  }
  for (const auto& path : args.files) {
    std::ifstream file(path, std::ios::binary);
    if (!file) {
      err << fmt::format("sstt: file not found: {}\n", path);
      return kExitUsage;
    }
    std::ostringstream ss;
    ss << file.rdbuf();
    sources.push_back({path, ss.str()});
  }
  if (sources.empty()) {
    err << "sstt: check needs at least one file or --stdin\n";
    return kExitUsage;
  }
  DriverOptions options;
  options.check.oracle_crosscheck = args.oracle;
  options.jobs = args.jobs;
  options.dump = args.dump;
  std::vector<FileReport> reports = check_sources(sources, options);
  if (args.json) out << render_json(reports) << "\n";
  else print_human(reports, out, err);
  for (const auto& r : reports)
    if (r.errors() > 0) return kExitFailure;
  return kExitOk;
}

int run_entails(const std::string& query, bool oracle, std::ostream& out) {
  tope::EntailmentQuery q = tope::parse_entailment_query(query);
  bool holds = oracle ? tope::oracle_entails(q.cube, q.hyp, q.goal)
                      : tope::entails(q.cube, q.hyp, q.goal);
  out << (holds ? "true" : "false") << "\n";
  if (!holds) {
    if (auto cm = tope::find_countermodel(q.cube, q.hyp, q.goal))
      out << "countermodel: " << tope::format_countermodel(*cm) << "\n";
  }
  return holds ? kExitOk : kExitFailure;
}

void print_verdict(const shape::InclusionResult& r, std::ostream& out) {
  out << (r.ok() ? "true" : "false") << "\n";
  if (r.countermodel) out << "countermodel: " << tope::format_countermodel(*r.countermodel) << "\n";
}

int run_corpus(const std::string& dir, bool oracle, bool as_json, std::ostream& out) {
  kernel::CheckOptions options;
  options.oracle_crosscheck = oracle;
  corpus::CorpusReport report = corpus::run(corpus::load(dir), options);
  if (as_json) {
    std::vector<FileReport> files;
    for (const auto& e : report.entries) files.push_back(e.report);
    out << render_json(files) << "\n";
  } else {
    for (const auto& e : report.entries)
      out << fmt::format("{:<5} {:<32} expected {:<38} got {}\n", e.pass ? "pass" : "FAIL",
                         e.entry.label(), e.entry.expected, e.actual);
    out << fmt::format("boundary sweep: {} declarations, {} points, {} failures\n",
                       report.sweep.declarations, report.sweep.points, report.sweep.failures.size());
    for (const auto& f : report.sweep.failures)
      out << fmt::format("  {} at {}: {}\n", f.name, f.point, f.message);
    out << fmt::format("corpus: {}\n", report.ok() ? "ok" : "failed");
  }
  return report.ok() ? kExitOk : kExitFailure;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            std::istream& in) {
  CLI::App app{"Type checker for simplicial type theory with shapes and extension types", "sstt"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  CheckArgs check;
  auto* check_cmd = app.add_subcommand("check", "Check .sst files in order, sharing one environment");
  check_cmd->add_option("files", check.files, "Source files");
  check_cmd->add_flag("--json", check.json, "Machine-readable report");
  check_cmd->add_flag("--dump", check.dump, "Print the elaborated core of each declaration");
  check_cmd->add_flag("--oracle", check.oracle, "Cross-check every tope entailment with the oracle");
  check_cmd->add_flag("--stdin", check.from_stdin, "Read a module from standard input");
  check_cmd->add_option("--jobs,-j", check.jobs, "Check independent files concurrently")
      ->check(CLI::Range(1u, 256u));

  auto* tope_cmd = app.add_subcommand("tope", "Tope logic queries");
  tope_cmd->require_subcommand(1);
  std::string query;
  bool tope_oracle = false;
  auto* entails_cmd = tope_cmd->add_subcommand("entails", "Decide `[vars] HYP => GOAL`");
  entails_cmd->add_option("query", query, "Entailment query")->required();
  entails_cmd->add_flag("--oracle", tope_oracle, "Decide with the brute-force oracle");

  auto* shape_cmd = app.add_subcommand("shape", "Shape calculus");
  shape_cmd->require_subcommand(1);
  std::string lhs, rhs;
  auto* tensor_cmd = shape_cmd->add_subcommand("tensor", "Leibniz tensor of two inclusions");
  auto* subseteq_cmd = shape_cmd->add_subcommand("subseteq", "Decide S ⊆ T");
  auto* eq_cmd = shape_cmd->add_subcommand("eq", "Decide S = T");
  for (auto* cmd : {tensor_cmd, subseteq_cmd, eq_cmd}) {
    cmd->add_option("lhs", lhs)->required();
    cmd->add_option("rhs", rhs)->required();
  }

  auto* corpus_cmd = app.add_subcommand("corpus", "Check the bundled corpus manifest");
  std::string corpus_dir = corpus::default_dir();
  bool corpus_oracle = false, corpus_json = false;
  corpus_cmd->add_option("--dir", corpus_dir, "Corpus directory");
  corpus_cmd->add_flag("--oracle", corpus_oracle, "Cross-check every tope entailment with the oracle");
  corpus_cmd->add_flag("--json", corpus_json, "Machine-readable report");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "sstt: " << e.what() << "\n" << "run `sstt --help` for usage\n";
    return kExitUsage;
  }

  try {
    if (check_cmd->parsed()) return run_check(check, out, err, in);
    if (entails_cmd->parsed()) return run_entails(query, tope_oracle, out);
    if (tensor_cmd->parsed()) {
      shape::ShapeInclusion j = shape::leibniz_tensor(shape::parse_inclusion(lhs),
                                                      shape::parse_inclusion(rhs));
      out << tope::to_string_grouped(j.sub()) << "\n" << shape::to_string(j) << "\n";
      return kExitOk;
    }
    if (subseteq_cmd->parsed()) {
      auto r = shape::subseteq(shape::parse_shape(lhs), shape::parse_shape(rhs));
      print_verdict(r, out);
      return r.ok() ? kExitOk : kExitFailure;
    }
    if (eq_cmd->parsed()) {
      shape::Shape a = shape::parse_shape(lhs), b = shape::parse_shape(rhs);
      auto ab = shape::subseteq(a, b);
      auto r = ab.ok() ? shape::subseteq(b, a) : ab;
      print_verdict(r, out);
      return r.ok() ? kExitOk : kExitFailure;
    }
    if (corpus_cmd->parsed()) return run_corpus(corpus_dir, corpus_oracle, corpus_json, out);
  } catch (const syntax::SyntaxError& e) {
    err << fmt::format("sstt: syntax error at column {}: {}\n", e.span().col, e.message());
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "sstt: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace sstt::cli
