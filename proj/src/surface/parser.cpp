#include <fmt/format.h>

#include "sstt/kernel/term.h"
#include "sstt/surface/syntax.h"

namespace sstt::surface {

using kernel::Term;
using syntax::Tok;
using syntax::Token;
using syntax::TokenStream;

namespace {

bool is_keyword(const std::string& s) {
  return s == "def" || s == "axiom" || s == "refl" || s == "Id" || s == "J" || s == "rec01" ||
         s == "cases";
}

class Parser {
 public:
  explicit Parser(TokenStream& ts) : ts_(ts) {}

  Term term() {
    const Token& start = ts_.peek();
    if (ts_.at(Tok::kBackslash)) return lambda();
    if (ts_.at(Tok::kSigma)) {
      ts_.next();
      ts_.expect(Tok::kLParen);
      std::string x = ident("binder name");
      ts_.expect(Tok::kColon);
      Term a = term();
      ts_.expect(Tok::kRParen);
      Term b = term();
      return pos(kernel::sigma(x, a, b), start);
    }
    if (at_pi_binder()) {
      // A telescope `(x y : A) (z : B) -> C`.
      std::vector<std::pair<std::string, Term>> binders;
      while (at_pi_binder()) {
        ts_.next();
        std::vector<std::string> names;
        while (ts_.at(Tok::kIdent)) names.push_back(ident("binder name"));
        ts_.expect(Tok::kColon);
        Term a = term();
        ts_.expect(Tok::kRParen);
        for (auto& n : names) binders.emplace_back(std::move(n), a);
      }
      ts_.expect(Tok::kArrow);
      Term b = term();
      for (auto it = binders.rbegin(); it != binders.rend(); ++it) b = kernel::pi(it->first, it->second, b);
      return pos(b, start);
    }
    Term lhs = product();
    if (ts_.accept(Tok::kArrow)) return pos(kernel::arrow(lhs, term()), start);
    return lhs;
  }

  tope::Tope tope() { return tope::parse_tope(ts_); }

  std::string ident(std::string_view what) {
    const Token& t = ts_.peek();
    if (t.kind != Tok::kIdent || is_keyword(t.text))
      ts_.fail(fmt::format("expected {}, found {}", what, describe(t)), {std::string(what)});
    ts_.next();
    return t.text;
  }

  // Cube variable list inside braces, up to (not including) `|` or `}`.
  std::vector<std::string> cube_binders() {
    std::vector<std::string> vars;
    while (ts_.at(Tok::kIdent)) {
      vars.push_back(ident("cube variable"));
      if (ts_.accept(Tok::kColon)) expect_two();
      ts_.accept(Tok::kComma);
    }
    return vars;
  }

  void expect_two() {
    const Token& t = ts_.peek();
    if (t.kind != Tok::kNumber || t.text != "2") ts_.fail("cube variables range over 2", {"2"});
    ts_.next();
  }

  static std::string describe(const Token& t) {
    return t.kind == Tok::kEnd ? "end of input" : fmt::format("'{}'", t.text);
  }

 private:
  Term pos(Term t, const Token& start) { return kernel::at_pos(t, start.span.line, start.span.col); }

  bool at_pi_binder() const {
    if (!ts_.at(Tok::kLParen)) return false;
    std::size_t k = 1;
    while (ts_.at(Tok::kIdent, k) && !is_keyword(ts_.peek(k).text)) ++k;
    return k > 1 && ts_.at(Tok::kColon, k);
  }

  Term lambda() {
    const Token& start = ts_.next();
    if (ts_.accept(Tok::kLBrace)) {
      std::vector<std::string> vars = cube_binders();
      if (vars.empty()) ts_.fail("expected cube variable", {"cube variable"});
      ts_.expect(Tok::kRBrace);
      ts_.expect(Tok::kDot);
      return pos(kernel::ext_lam(vars, term()), start);
    }
    std::vector<std::string> names;
    while (ts_.at(Tok::kIdent)) names.push_back(ident("binder name"));
    if (names.empty()) ts_.fail("expected binder name after '\\'", {"identifier", "'{'"});
    ts_.expect(Tok::kDot);
    Term body = term();
    for (auto it = names.rbegin(); it != names.rend(); ++it) body = kernel::lam(*it, body);
    return pos(body, start);
  }

  Term product() {
    const Token& start = ts_.peek();
    Term lhs = spine();
    if (ts_.accept(Tok::kStar)) {
      Term rhs = product();
      std::string x = kernel::fresh_name("_", rhs.free_names());
      return pos(kernel::sigma(x, lhs, rhs), start);
    }
    return lhs;
  }

  bool at_atom_start() const {
    switch (ts_.peek().kind) {
      case Tok::kIdent: {
        const std::string& s = ts_.peek().text;
        return !is_keyword(s) || s == "refl" || s == "cases";
      }
      case Tok::kUniverse:
      case Tok::kLParen:
      case Tok::kLAngle:
        return true;
      default: return false;
    }
  }

  Term spine() {
    const Token& start = ts_.peek();
    Term head;
    if (ts_.at_ident("Id")) {
      ts_.next();
      Term a = atom(), x = atom(), y = atom();
      head = pos(kernel::id_type(a, x, y), start);
    } else if (ts_.at_ident("J")) {
      ts_.next();
      Term a = atom(), c = atom(), d = atom(), x = atom(), y = atom(), p = atom();
      head = pos(kernel::j_elim(a, c, d, x, y, p), start);
    } else if (ts_.at_ident("rec01")) {
      ts_.next();
      Term a = atom(), b = atom();
      head = pos(kernel::rec01(a, b), start);
    } else {
      head = atom();
    }
    while (true) {
      if (ts_.accept(Tok::kAt)) {
        head = pos(kernel::ext_app(head, points()), start);
      } else if (at_atom_start()) {
        head = pos(kernel::app(head, atom()), start);
      } else {
        return head;
      }
    }
  }

  std::vector<tope::IntervalTerm> points() {
    std::vector<tope::IntervalTerm> out;
    ts_.expect(Tok::kLParen);
    out.push_back(tope::parse_interval_term(ts_));
    while (ts_.accept(Tok::kComma)) out.push_back(tope::parse_interval_term(ts_));
    ts_.expect(Tok::kRParen);
    return out;
  }

  Term atom() {
    Term t = primary();
    while (true) {
      const Token& tok = ts_.peek();
      if (ts_.accept(Tok::kProj1)) t = pos(kernel::fst(t), tok);
      else if (ts_.accept(Tok::kProj2)) t = pos(kernel::snd(t), tok);
      else return t;
    }
  }

  Term primary() {
    const Token& start = ts_.peek();
    switch (start.kind) {
      case Tok::kUniverse:
        ts_.next();
        return pos(kernel::universe(), start);
      case Tok::kIdent: {
        if (start.text == "refl") {
          ts_.next();
          return pos(kernel::refl(), start);
        }
        if (start.text == "cases") {
          ts_.next();
          auto [guards, branches] = case_list();
          return pos(kernel::cases(guards, branches), start);
        }
        return pos(kernel::var(ident("term")), start);
      }
      case Tok::kLParen: {
        ts_.next();
        Term first = term();
        if (ts_.accept(Tok::kComma)) {
          Term second = term();
          ts_.expect(Tok::kRParen);
          return pos(kernel::pair(first, second), start);
        }
        ts_.expect(Tok::kRParen);
        return first;
      }
      case Tok::kLAngle: return extension();
      default:
        ts_.fail(fmt::format("expected a term, found {}", describe(start)),
                 {"identifier", "'U'", "'('", "'<'", "'\\'"});
    }
  }

  std::pair<std::vector<tope::Tope>, std::vector<Term>> case_list() {
    std::vector<tope::Tope> guards;
    std::vector<Term> branches;
    ts_.expect(Tok::kLBracket);
    if (ts_.accept(Tok::kRBracket)) return {guards, branches};
    do {
      guards.push_back(tope());
      ts_.expect(Tok::kMapsTo);
      branches.push_back(term());
    } while (ts_.accept(Tok::kComma));
    ts_.expect(Tok::kRBracket);
    return {guards, branches};
  }

  Term extension() {
    const Token& start = ts_.next();
    ts_.expect(Tok::kLBrace);
    std::vector<std::string> vars = cube_binders();
    ts_.expect(Tok::kBar);
    tope::Tope psi = tope();
    ts_.expect(Tok::kRBrace);
    ts_.expect(Tok::kArrow);
    Term family = term();
    tope::Tope phi = tope::Tope::bot();
    Term boundary = kernel::rec_bot();
    if (ts_.at(Tok::kLBracket)) {
      auto [guards, branches] = case_list();
      if (guards.size() == 1) {
        phi = guards[0];
        boundary = branches[0];
      } else if (!guards.empty()) {
        phi = tope::disj(guards);
        boundary = kernel::cases(guards, branches);
      }
    }
    ts_.expect(Tok::kRAngle);
    return pos(kernel::ext(vars, psi, phi, family, boundary), start);
  }

  TokenStream& ts_;
};

void parse_params(Parser& p, TokenStream& ts, SurfaceDecl& d) {
  while (ts.at(Tok::kLParen)) {
    ts.next();
    std::vector<std::string> names;
    while (ts.at(Tok::kIdent)) names.push_back(p.ident("parameter name"));
    if (names.empty()) ts.fail("expected parameter name", {"identifier"});
    ts.expect(Tok::kColon);
    if (ts.at(Tok::kNumber)) {
      p.expect_two();
      d.cube_params.insert(d.cube_params.end(), names.begin(), names.end());
    } else {
      if (!d.cube_params.empty())
        ts.fail("term parameters must come before cube parameters");
      d.params.push_back({names, p.term()});
    }
    ts.expect(Tok::kRParen);
  }
  if (ts.at(Tok::kLBracket)) {
    if (d.cube_params.empty()) ts.fail("a tope constraint needs cube parameters");
    ts.next();
    d.cube_constraint = p.tope();
    ts.expect(Tok::kRBracket);
  }
}

SurfaceDecl parse_decl(TokenStream& ts) {
  Parser p(ts);
  SurfaceDecl d;
  const Token& start = ts.peek();
  d.span = start.span;
  if (ts.at_ident("def") || ts.at_ident("axiom")) {
    bool is_def = ts.next().text == "def";
    d.kind = is_def ? kernel::DeclKind::kDef : kernel::DeclKind::kAxiom;
    d.name = p.ident("declaration name");
    parse_params(p, ts, d);
    ts.expect(Tok::kColon);
    d.type = p.term();
    if (is_def) {
      ts.expect(Tok::kDefEq);
      d.value = p.term();
    }
  } else if (ts.accept(Tok::kHashCheck)) {
    d.kind = kernel::DeclKind::kCheck;
    d.name = fmt::format("#check@{}", start.span.line);
    d.value = p.term();
    ts.expect(Tok::kColon);
    d.type = p.term();
  } else if (ts.accept(Tok::kHashEntails)) {
    d.kind = kernel::DeclKind::kEntails;
    d.name = fmt::format("#entails@{}", start.span.line);
    d.query = tope::parse_entailment_query(ts);
  } else {
    ts.fail(fmt::format("expected a declaration, found {}", Parser::describe(start)),
            {"'def'", "'axiom'", "'#check'", "'#entails'"});
  }
  ts.expect(Tok::kSemi);
  const Token& last = ts.peek();
  d.span.length = last.span.offset > d.span.offset ? last.span.offset - d.span.offset : 0;
  return d;
}

bool at_decl_start(const TokenStream& ts) {
  return ts.at_ident("def") || ts.at_ident("axiom") || ts.at(Tok::kHashCheck) ||
         ts.at(Tok::kHashEntails);
}

}  // namespace

ParseResult parse_module(std::string_view text, const std::string& file) {
  ParseResult out;
  out.module.file = file;
  std::vector<Token> tokens;
  try {
    tokens = syntax::tokenize(text, file);
  } catch (const syntax::SyntaxError& e) {
    out.errors.push_back(e);
    return out;
  }
  TokenStream ts(std::move(tokens));
  while (!ts.at(Tok::kEnd)) {
    try {
      out.module.decls.push_back(parse_decl(ts));
    } catch (const syntax::SyntaxError& e) {
      out.errors.push_back(e);
      // Resynchronize after the next `;`, or at the next declaration keyword.
      while (!ts.at(Tok::kEnd) && !ts.at(Tok::kSemi)) {
        ts.next();
        if (at_decl_start(ts)) break;
      }
      ts.accept(Tok::kSemi);
    }
  }
  return out;
}

Term parse_term(std::string_view text, const std::string& file) {
  TokenStream ts(syntax::tokenize(text, file));
  Parser p(ts);
  Term t = p.term();
  ts.expect(Tok::kEnd, "end of term");
  return t;
}

}  // namespace sstt::surface
