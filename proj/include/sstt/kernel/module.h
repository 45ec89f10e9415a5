#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sstt/kernel/check.h"
#include "sstt/kernel/context.h"
#include "sstt/kernel/errors.h"
#include "sstt/kernel/term.h"
#include "sstt/tope/parse.h"

namespace sstt::kernel {

enum class DeclKind { kDef, kAxiom, kCheck, kEntails };

std::string_view decl_kind_name(DeclKind k);

struct SourcePos {
  std::string file;
  int line = 0;
  int col = 0;
};

struct Declaration {
  DeclKind kind = DeclKind::kDef;
  std::string name;  // synthesized for commands, e.g. `#check@12`
  Term type;         // def/axiom type, or the type in `#check e : T`
  Term value;        // def body or the checked term; null for axioms
  tope::EntailmentQuery query;  // #entails only
  SourcePos pos;
};

struct Module {
  std::string file;
  std::vector<Declaration> decls;
};

struct CheckResult {
  std::string name;
  DeclKind kind = DeclKind::kDef;
  bool ok = false;
  // On success: the resolved type and value as entered into the environment.
  Term type;
  Term value;
  // On failure.
  std::optional<ErrorClass> error_class;
  std::string message;
  SourcePos pos;
  std::optional<tope::Assignment> countermodel;
};

// Checks declarations in order, extending `env` with every successful
// def/axiom. A failing declaration does not stop later ones; declarations
// referring to a failed one report a dependency error.
std::vector<CheckResult> check_module(Env& env, const Module& m, const CheckOptions& options = {});

struct SweepFailure {
  std::string name;
  std::string point;  // e.g. `(0, 1)`
  std::string message;
};

struct SweepReport {
  std::size_t declarations = 0;  // globals of extension type that were swept
  std::size_t points = 0;        // endpoint tuples compared against a boundary
  std::vector<SweepFailure> failures;
};

// For every global whose type (after its Pi binders) is an extension type,
// applies it to every 0/1 tuple lying in the subshape and compares the result
// with the boundary there.
SweepReport boundary_sweep(const Env& env, const std::vector<std::string>& names);

}  // namespace sstt::kernel
