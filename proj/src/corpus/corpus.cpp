#include "sstt/corpus/corpus.h"

#include <fmt/format.h>
#include <fmt/ranges.h>

#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "sstt/shape/shape.h"

namespace sstt::corpus {

std::string ManifestEntry::expected_class() const {
  constexpr std::string_view prefix = "expected-error:";
  return expected.starts_with(prefix) ? expected.substr(prefix.size()) : std::string();
}

std::vector<ManifestEntry> parse_manifest(std::string_view text) {
  std::vector<ManifestEntry> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    ManifestEntry e;
    if (!(words >> e.file)) continue;
    if (!(words >> e.expected))
      throw std::runtime_error(fmt::format("manifest line {}: missing expected status", number));
    if (!e.expects_ok() && e.expected_class().empty())
      throw std::runtime_error(
          fmt::format("manifest line {}: status must be ok or expected-error:CLASS", number));
    if (auto open = e.file.find('['); open != std::string::npos) {
      if (e.file.back() != ']')
        throw std::runtime_error(fmt::format("manifest line {}: unterminated instance", number));
      e.instance = e.file.substr(open + 1, e.file.size() - open - 2);
      e.file.erase(open);
    }
    e.line = number;
    out.push_back(std::move(e));
  }
  return out;
}

namespace {

shape::ShapeInclusion named_inclusion(const std::string& j) {
  if (auto star = j.find('*'); star != std::string::npos)
    return shape::leibniz_tensor(shape::standard_inclusion(j.substr(0, star)),
                                 shape::standard_inclusion(j.substr(star + 1)));
  return shape::standard_inclusion(j);
}

void replace_all(std::string& s, std::string_view from, const std::string& to) {
  for (std::size_t pos = s.find(from); pos != std::string::npos; pos = s.find(from, pos + to.size()))
    s.replace(pos, from.size(), to);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error(fmt::format("cannot read {}", path));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::string instantiate(std::string_view text, const std::string& j) {
  shape::ShapeInclusion inc = named_inclusion(j);
  // Rename j's variables so that `t` stays free for the b1 factor.
  static const std::vector<std::string> kNames = {"s", "s2", "s3", "s4", "s5"};
  if (inc.cube().size() > kNames.size()) throw std::runtime_error("inclusion has too many variables");
  std::map<std::string, tope::IntervalTerm> rename;
  std::vector<std::string> vars;
  for (std::size_t i = 0; i < inc.cube().size(); ++i) {
    rename.emplace(inc.cube().vars()[i], tope::IntervalTerm::var(kNames[i]));
    vars.push_back(kNames[i]);
  }
  shape::ShapeInclusion renamed =
      shape::is_inclusion(tope::CubeContext(vars), tope::substitute(inc.sub(), rename),
                          tope::substitute(inc.sup(), rename));
  shape::ShapeInclusion bj = shape::leibniz_tensor(shape::standard_inclusion("b1"), renamed);

  // Parenthesized so that substitution next to a connective keeps its meaning.
  auto group = [](const tope::Tope& t) { return "(" + tope::to_string(t) + ")"; };
  std::string suffix;
  for (char c : j) suffix += c == '*' ? 'x' : c;
  std::string out(text);
  replace_all(out, "$BVARS", fmt::format("{}", fmt::join(bj.cube().vars(), " ")));
  replace_all(out, "$BPTS", fmt::format("{}", fmt::join(bj.cube().vars(), ", ")));
  replace_all(out, "$BPSI", group(bj.sup()));
  replace_all(out, "$BPHI", group(bj.sub()));
  replace_all(out, "$VARS", fmt::format("{}", fmt::join(vars, " ")));
  replace_all(out, "$PTS", fmt::format("{}", fmt::join(vars, ", ")));
  replace_all(out, "$PSI", group(renamed.sup()));
  replace_all(out, "$PHI", group(renamed.sub()));
  replace_all(out, "$J", suffix);
  return out;
}

std::vector<LoadedEntry> load(const std::string& dir) {
  std::vector<LoadedEntry> out;
  for (auto& e : parse_manifest(read_file(dir + "/manifest.txt"))) {
    std::string text = read_file(dir + "/" + e.file);
    if (!e.instance.empty()) text = instantiate(text, e.instance);
    std::string label = e.label();
    out.push_back({std::move(e), {label, std::move(text)}});
  }
  return out;
}

bool CorpusReport::ok() const {
  for (const auto& e : entries)
    if (!e.pass) return false;
  return sweep.failures.empty();
}

CorpusReport run(const std::vector<LoadedEntry>& entries, const kernel::CheckOptions& options) {
  CorpusReport report;
  kernel::Env env;
  cli::DriverOptions driver;
  driver.check = options;
  std::vector<std::string> defined;
  for (const auto& loaded : entries) {
    EntryResult r;
    r.entry = loaded.entry;
    if (r.entry.expects_ok()) {
      std::size_t before = env.order().size();
      r.report = cli::check_source(env, loaded.source, driver);
      defined.insert(defined.end(), env.order().begin() + static_cast<std::ptrdiff_t>(before),
                     env.order().end());
      report.declarations += r.report.decls.size();
      r.pass = r.report.errors() == 0;
      r.actual = r.pass ? "ok" : fmt::format("{} error(s)", r.report.errors());
    } else {
      kernel::Env scratch = env;
      r.report = cli::check_source(scratch, loaded.source, driver);
      r.actual = "ok";
      for (const auto& d : r.report.decls) {
        if (d.ok) continue;
        r.actual = "expected-error:" + d.diagnostics.front().error_class;
        break;
      }
      r.pass = r.actual == r.entry.expected;
    }
    report.entries.push_back(std::move(r));
  }
  report.sweep = kernel::boundary_sweep(env, defined);
  return report;
}

std::string default_dir() {
  if (const char* dir = std::getenv("SSTT_CORPUS_DIR"); dir && *dir) return dir;
  return SSTT_SOURCE_CORPUS_DIR;
}

}  // namespace sstt::corpus
