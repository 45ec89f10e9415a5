#include <fmt/format.h>
#include <fmt/ranges.h>

#include <algorithm>

#include "sstt/kernel/print.h"
#include "sstt/surface/syntax.h"

namespace sstt::surface {

using kernel::Term;
using kernel::TermKind;

std::string print_term(const Term& t) { return kernel::to_string(t); }

std::string print_decl(const SurfaceDecl& d) {
  switch (d.kind) {
    case kernel::DeclKind::kCheck:
      return fmt::format("#check {} : {} ;", print_term(d.value), print_term(d.type));
    case kernel::DeclKind::kEntails:
      return fmt::format("#entails [{}] {} => {} ;", fmt::join(d.query.cube.vars(), ", "),
                         tope::to_string(d.query.hyp), tope::to_string(d.query.goal));
    default: break;
  }
  std::string out = fmt::format("{} {}", d.kind == kernel::DeclKind::kDef ? "def" : "axiom", d.name);
  for (const auto& b : d.params)
    out += fmt::format(" ({} : {})", fmt::join(b.names, " "), print_term(b.type));
  if (!d.cube_params.empty()) {
    out += fmt::format(" ({} : 2)", fmt::join(d.cube_params, " "));
    if (d.cube_constraint.kind() != tope::TopeKind::kTop)
      out += fmt::format(" [{}]", tope::to_string(d.cube_constraint));
  }
  out += fmt::format(" : {}", print_term(d.type));
  if (d.kind == kernel::DeclKind::kDef) out += fmt::format(" := {}", print_term(d.value));
  return out + " ;";
}

std::string print_module(const SurfaceModule& m) {
  std::string out;
  for (const auto& d : m.decls) out += print_decl(d) + "\n";
  return out;
}

Term desugar(const Term& t, const std::vector<std::string>& cube_scope) {
  if (!t) return t;
  switch (t.kind()) {
    case TermKind::kRec01: {
      Term a = desugar(t.arg(0), cube_scope);
      Term b = desugar(t.arg(1), cube_scope);
      if (cube_scope.empty()) return kernel::with_args(t, {a, b});
      auto x = tope::IntervalTerm::var(cube_scope.back());
      Term c = kernel::cases({tope::Tope::eq(x, tope::IntervalTerm::zero()),
                              tope::Tope::eq(x, tope::IntervalTerm::one())},
                             {a, b});
      return kernel::at_pos(c, t.line(), t.col());
    }
    case TermKind::kExt:
    case TermKind::kExtLam: {
      std::vector<std::string> inner = cube_scope;
      inner.insert(inner.end(), t.cube_vars().begin(), t.cube_vars().end());
      std::vector<Term> args;
      for (const auto& a : t.args()) args.push_back(desugar(a, inner));
      return kernel::with_args(t, std::move(args));
    }
    case TermKind::kPi:
    case TermKind::kLam:
    case TermKind::kSigma: {
      // A term binder shadows a cube variable of the same name in its body.
      std::vector<std::string> inner = cube_scope;
      std::erase(inner, t.name());
      std::vector<Term> args;
      for (std::size_t i = 0; i < t.args().size(); ++i) {
        bool under_binder = t.kind() == TermKind::kLam || i == 1;
        args.push_back(desugar(t.arg(i), under_binder ? inner : cube_scope));
      }
      return kernel::with_args(t, std::move(args));
    }
    default: {
      if (t.args().empty()) return t;
      std::vector<Term> args;
      for (const auto& a : t.args()) args.push_back(desugar(a, cube_scope));
      return kernel::with_args(t, std::move(args));
    }
  }
}

namespace {

struct Elaborated {
  Term type;
  Term value;
};

Elaborated elaborate_decl(const SurfaceDecl& d) {
  Term type = d.type;
  Term value = d.value;
  if (!d.cube_params.empty()) {
    type = kernel::at_pos(kernel::ext(d.cube_params, d.cube_constraint, tope::Tope::bot(), type,
                                      kernel::rec_bot()),
                          type.line(), type.col());
    if (value) value = kernel::at_pos(kernel::ext_lam(d.cube_params, value), value.line(), value.col());
  }
  for (auto b = d.params.rbegin(); b != d.params.rend(); ++b) {
    for (auto n = b->names.rbegin(); n != b->names.rend(); ++n) {
      type = kernel::at_pos(kernel::pi(*n, b->type, type), b->type.line(), b->type.col());
      if (value) value = kernel::at_pos(kernel::lam(*n, value), value.line(), value.col());
    }
  }
  return {desugar(type), value ? desugar(value) : value};
}

}  // namespace

kernel::Module elaborate(const SurfaceModule& m) {
  kernel::Module out;
  out.file = m.file;
  for (const auto& d : m.decls) {
    kernel::Declaration k;
    k.kind = d.kind;
    k.name = d.name;
    k.query = d.query;
    k.pos = {m.file, d.span.line, d.span.col};
    if (d.kind != kernel::DeclKind::kEntails) {
      auto [type, value] = elaborate_decl(d);
      k.type = type;
      k.value = value;
    }
    out.decls.push_back(std::move(k));
  }
  return out;
}

bool alpha_equal_decl(const SurfaceDecl& a, const SurfaceDecl& b) {
  if (a.kind != b.kind) return false;
  // Command names carry their line number.
  bool named = a.kind == kernel::DeclKind::kDef || a.kind == kernel::DeclKind::kAxiom;
  if (named && a.name != b.name) return false;
  if (a.kind == kernel::DeclKind::kEntails)
    return a.query.cube == b.query.cube && a.query.hyp == b.query.hyp && a.query.goal == b.query.goal;
  if (a.params.size() != b.params.size() || a.cube_params.size() != b.cube_params.size())
    return false;
  for (std::size_t i = 0; i < a.params.size(); ++i)
    if (a.params[i].names.size() != b.params[i].names.size()) return false;
  Elaborated ea = elaborate_decl(a);
  Elaborated eb = elaborate_decl(b);
  if (!kernel::alpha_equal(ea.type, eb.type)) return false;
  if (bool(ea.value) != bool(eb.value)) return false;
  return !ea.value || kernel::alpha_equal(ea.value, eb.value);
}

bool alpha_equal_module(const SurfaceModule& a, const SurfaceModule& b) {
  if (a.decls.size() != b.decls.size()) return false;
  for (std::size_t i = 0; i < a.decls.size(); ++i)
    if (!alpha_equal_decl(a.decls[i], b.decls[i])) return false;
  return true;
}

}  // namespace sstt::surface
