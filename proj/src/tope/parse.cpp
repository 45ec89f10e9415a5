#include "sstt/tope/parse.h"

#include <fmt/format.h>

namespace sstt::tope {

using syntax::Tok;
using syntax::TokenStream;

IntervalTerm parse_interval_term(TokenStream& ts) {
  const auto& tok = ts.peek();
  if (tok.kind == Tok::kIdent) {
    ts.next();
    return IntervalTerm::var(tok.text);
  }
  if (tok.kind == Tok::kNumber) {
    if (tok.text == "0") {
      ts.next();
      return IntervalTerm::zero();
    }
    if (tok.text == "1") {
      ts.next();
      return IntervalTerm::one();
    }
    ts.fail(fmt::format("interval constant must be 0 or 1, found '{}'", tok.text),
            {"0", "1"});
  }
  ts.fail(fmt::format("expected interval term, found {}",
                      tok.kind == Tok::kEnd ? std::string("end of input")
                                            : fmt::format("'{}'", tok.text)),
          {"identifier", "0", "1"});
}

namespace {

Tope parse_prim(TokenStream& ts) {
  if (ts.accept(Tok::kTop)) return Tope::top();
  if (ts.accept(Tok::kBot)) return Tope::bot();
  if (ts.accept(Tok::kLParen)) {
    Tope inner = parse_tope(ts);
    ts.expect(Tok::kRParen);
    return inner;
  }
  IntervalTerm lhs = parse_interval_term(ts);
  if (ts.accept(Tok::kLe)) return Tope::le(lhs, parse_interval_term(ts));
  if (ts.accept(Tok::kEqEq)) return Tope::eq(lhs, parse_interval_term(ts));
  ts.fail(fmt::format("expected '<=' or '==' after '{}'", lhs.str()), {"'<='", "'=='"});
}

Tope parse_conj(TokenStream& ts) {
  Tope out = parse_prim(ts);
  while (ts.accept(Tok::kAnd)) out = Tope::make_and(out, parse_prim(ts));
  return out;
}

}  // namespace

Tope parse_tope(TokenStream& ts) {
  Tope out = parse_conj(ts);
  while (ts.accept(Tok::kOr)) out = Tope::make_or(out, parse_conj(ts));
  return out;
}

Tope parse_tope(std::string_view text) {
  TokenStream ts(syntax::tokenize(text));
  Tope t = parse_tope(ts);
  ts.expect(Tok::kEnd, "end of tope");
  return t;
}

EntailmentQuery parse_entailment_query(TokenStream& ts) {
  EntailmentQuery q;
  ts.expect(Tok::kLBracket);
  while (!ts.at(Tok::kRBracket)) {
    const auto& name = ts.expect(Tok::kIdent, "cube variable");
    if (q.cube.contains(name.text))
      ts.fail(fmt::format("duplicate cube variable '{}'", name.text));
    q.cube.push(name.text);
    ts.accept(Tok::kComma);
  }
  ts.expect(Tok::kRBracket);
  q.hyp = parse_tope(ts);
  ts.expect(Tok::kImplies);
  q.goal = parse_tope(ts);
  return q;
}

EntailmentQuery parse_entailment_query(std::string_view text) {
  TokenStream ts(syntax::tokenize(text));
  EntailmentQuery q = parse_entailment_query(ts);
  ts.expect(Tok::kEnd, "end of query");
  return q;
}

}  // namespace sstt::tope
