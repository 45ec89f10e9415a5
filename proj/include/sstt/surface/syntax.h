#pragma once

#include <string>
#include <vector>

#include "sstt/kernel/module.h"
#include "sstt/kernel/term.h"
#include "sstt/syntax/lexer.h"
#include "sstt/tope/parse.h"

namespace sstt::surface {

// `(x y : A)`.
struct Binder {
  std::vector<std::string> names;
  kernel::Term type;
};

struct SurfaceDecl {
  kernel::DeclKind kind = kernel::DeclKind::kDef;
  std::string name;
  std::vector<Binder> params;
  // `(t s : 2)` parameters and the optional `[TOPE]` constraint on them.
  std::vector<std::string> cube_params;
  tope::Tope cube_constraint;
  kernel::Term type;
  kernel::Term value;
  tope::EntailmentQuery query;
  syntax::Span span;
};

struct SurfaceModule {
  std::string file;
  std::vector<SurfaceDecl> decls;
};

struct ParseResult {
  SurfaceModule module;
  // Declarations that failed to parse are skipped up to the next `;`.
  std::vector<syntax::SyntaxError> errors;
};

ParseResult parse_module(std::string_view text, const std::string& file = "<input>");
// A single term; trailing input is an error. Identifiers stay unresolved.
kernel::Term parse_term(std::string_view text, const std::string& file = "<input>");

std::string print_term(const kernel::Term& t);
std::string print_decl(const SurfaceDecl& d);
std::string print_module(const SurfaceModule& m);

bool alpha_equal_decl(const SurfaceDecl& a, const SurfaceDecl& b);
bool alpha_equal_module(const SurfaceModule& a, const SurfaceModule& b);

// Parameters become Pi binders and lambdas, cube parameters an extension type
// with empty subshape, and `rec01 a b` a case split on the innermost cube
// variable.
kernel::Module elaborate(const SurfaceModule& m);
kernel::Term desugar(const kernel::Term& t, const std::vector<std::string>& cube_scope = {});

}  // namespace sstt::surface
