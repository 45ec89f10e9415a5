#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sstt/kernel/context.h"
#include "sstt/kernel/module.h"

namespace sstt::cli {

struct Diagnostic {
  std::string severity = "error";
  std::string message;
  std::string file;
  int line = 0;
  int col = 0;
  // Error class name such as `boundary-mismatch`; empty for notes.
  std::string error_class;
  // Tope countermodel, when the failure has one.
  std::string hint;
};

struct DeclReport {
  std::string name;
  // def, axiom, check, entails, or syntax for a declaration that did not parse.
  std::string kind;
  bool ok = false;
  std::vector<Diagnostic> diagnostics;
  // Elaborated core, filled when dumping.
  std::string core_type;
  std::string core_value;
};

struct FileReport {
  std::string file;
  std::vector<DeclReport> decls;
  std::size_t errors() const;
};

struct Source {
  std::string file;
  std::string text;
};

struct DriverOptions {
  kernel::CheckOptions check;
  // Worker threads; files without dependencies on each other are checked
  // concurrently. Reports are identical for every value.
  unsigned jobs = 1;
  bool dump = false;
};

// Parses, elaborates and checks one source against `env`, extending it.
FileReport check_source(kernel::Env& env, const Source& src, const DriverOptions& options = {});

// Checks the sources as if concatenated in order into one environment.
std::vector<FileReport> check_sources(const std::vector<Source>& sources,
                                      const DriverOptions& options = {});

}  // namespace sstt::cli
