#include "sstt/cli/driver.h"

#include <algorithm>
#include <atomic>
#include <set>
#include <thread>

#include "sstt/kernel/print.h"
#include "sstt/surface/syntax.h"
#include "sstt/tope/oracle.h"

namespace sstt::cli {

std::size_t FileReport::errors() const {
  return static_cast<std::size_t>(
      std::count_if(decls.begin(), decls.end(), [](const DeclReport& d) { return !d.ok; }));
}

namespace {

struct Parsed {
  std::vector<syntax::SyntaxError> syntax_errors;
  kernel::Module module;
  std::set<std::string> defines;
  std::set<std::string> mentions;
};

Parsed parse(const Source& src) {
  Parsed p;
  surface::ParseResult r = surface::parse_module(src.text, src.file);
  p.syntax_errors = std::move(r.errors);
  p.module = surface::elaborate(r.module);
  for (const auto& d : p.module.decls) {
    if (d.kind == kernel::DeclKind::kDef || d.kind == kernel::DeclKind::kAxiom)
      p.defines.insert(d.name);
    for (const auto* t : {&d.type, &d.value})
      if (*t) p.mentions.insert(t->free_names().begin(), t->free_names().end());
  }
  return p;
}

struct Checked {
  FileReport report;
  std::vector<kernel::CheckResult> results;
};

Checked check_parsed(kernel::Env& env, const std::string& file, const Parsed& p,
                     const DriverOptions& options) {
  Checked c;
  c.report.file = file;
  c.results = kernel::check_module(env, p.module, options.check);
  struct Entry {
    int line, col;
    DeclReport report;
  };
  std::vector<Entry> entries;
  for (const auto& e : p.syntax_errors) {
    DeclReport d{"<parse>", "syntax", false, {}, {}, {}};
    d.diagnostics.push_back({"error", e.message(), file, e.span().line, e.span().col, "syntax-error", {}});
    entries.push_back({e.span().line, e.span().col, std::move(d)});
  }
  for (std::size_t i = 0; i < c.results.size(); ++i) {
    const auto& r = c.results[i];
    const auto& decl = p.module.decls[i];
    DeclReport d{r.name, std::string(kernel::decl_kind_name(r.kind)), r.ok, {}, {}, {}};
    if (!r.ok) {
      Diagnostic diag{"error", r.message, file, r.pos.line, r.pos.col,
                      r.error_class ? std::string(kernel::error_class_name(*r.error_class)) : "", {}};
      if (r.countermodel) diag.hint = "countermodel: " + tope::format_countermodel(*r.countermodel);
      d.diagnostics.push_back(std::move(diag));
    }
    if (options.dump && r.ok) {
      if (r.type) d.core_type = kernel::to_string(r.type);
      if (r.value) d.core_value = kernel::to_string(r.value);
    }
    entries.push_back({decl.pos.line, decl.pos.col, std::move(d)});
  }
  std::stable_sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return std::tie(a.line, a.col) < std::tie(b.line, b.col);
  });
  for (auto& e : entries) c.report.decls.push_back(std::move(e.report));
  return c;
}

// Replays the checked declarations of a file into `env`.
void replay(kernel::Env& env, const Checked& c) {
  for (const auto& r : c.results) {
    bool named = r.kind == kernel::DeclKind::kDef || r.kind == kernel::DeclKind::kAxiom;
    if (!named) continue;
    if (!r.ok) {
      env.mark_failed(r.name);
      continue;
    }
    // A later duplicate of an existing name failed and never reaches here.
    if (env.contains(r.name)) continue;
    bool def = r.kind == kernel::DeclKind::kDef;
    env.add({r.name, def ? kernel::GlobalKind::kDefinition : kernel::GlobalKind::kAxiom, r.type,
             def ? r.value : kernel::Term()});
  }
}

template <typename F>
void parallel_for(std::size_t n, unsigned jobs, F&& body) {
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  unsigned workers = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(n)));
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) body(i);
    });
  for (auto& t : pool) t.join();
}

}  // namespace

FileReport check_source(kernel::Env& env, const Source& src, const DriverOptions& options) {
  return check_parsed(env, src.file, parse(src), options).report;
}

std::vector<FileReport> check_sources(const std::vector<Source>& sources,
                                      const DriverOptions& options) {
  std::size_t n = sources.size();
  std::vector<Parsed> parsed(n);
  parallel_for(n, options.jobs, [&](std::size_t i) { parsed[i] = parse(sources[i]); });

  std::vector<Checked> checked(n);
  if (options.jobs <= 1) {
    kernel::Env env;
    for (std::size_t i = 0; i < n; ++i)
      checked[i] = check_parsed(env, sources[i].file, parsed[i], options);
  } else {
    // File i depends on an earlier file that defines a name it mentions or
    // redefines; independent files are checked in the same wave.
    std::vector<std::vector<std::size_t>> deps(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < i; ++j) {
        bool uses = std::any_of(parsed[j].defines.begin(), parsed[j].defines.end(),
                                [&](const std::string& name) {
                                  return parsed[i].mentions.count(name) || parsed[i].defines.count(name);
                                });
        if (uses) deps[i].push_back(j);
      }
    std::vector<bool> done(n, false);
    std::size_t remaining = n;
    while (remaining > 0) {
      std::vector<std::size_t> wave;
      for (std::size_t i = 0; i < n; ++i)
        if (!done[i] && std::all_of(deps[i].begin(), deps[i].end(), [&](std::size_t j) { return done[j]; }))
          wave.push_back(i);
      parallel_for(wave.size(), options.jobs, [&](std::size_t k) {
        std::size_t i = wave[k];
        std::set<std::size_t> closure;
        std::vector<std::size_t> stack = deps[i];
        while (!stack.empty()) {
          std::size_t j = stack.back();
          stack.pop_back();
          if (closure.insert(j).second) stack.insert(stack.end(), deps[j].begin(), deps[j].end());
        }
        kernel::Env env;
        for (std::size_t j : closure) replay(env, checked[j]);
        checked[i] = check_parsed(env, sources[i].file, parsed[i], options);
      });
      for (std::size_t i : wave) done[i] = true;
      remaining -= wave.size();
    }
  }
  std::vector<FileReport> out;
  for (auto& c : checked) out.push_back(std::move(c.report));
  return out;
}

}  // namespace sstt::cli
