#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "sstt/syntax/lexer.h"
#include "sstt/tope/tope.h"

namespace sstt::tope {

// tope  ::= conj ( '\/' conj )*
// conj  ::= prim ( '/\' prim )*
// prim  ::= TOP | BOT | '(' tope ')' | iterm ( '<=' | '==' ) iterm
// iterm ::= IDENT | 0 | 1
// Both connectives associate to the left.
Tope parse_tope(syntax::TokenStream& ts);
IntervalTerm parse_interval_term(syntax::TokenStream& ts);

// Whole-string variants; trailing input is a syntax error.
Tope parse_tope(std::string_view text);

struct EntailmentQuery {
  CubeContext cube;
  Tope hyp;
  Tope goal;
};

// `[t, s] HYP => GOAL`. Separating commas in the variable list are optional.
EntailmentQuery parse_entailment_query(syntax::TokenStream& ts);
EntailmentQuery parse_entailment_query(std::string_view text);

}  // namespace sstt::tope
