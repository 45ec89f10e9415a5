#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sstt/tope/tope.h"

namespace sstt::tope {

// A point of the finite chain {0, 1, ..., m+1}: 0 is the bottom, m+1 the top.
struct ChainValue {
  int position = 0;
  int top = 1;

  bool is_bottom() const { return position == 0; }
  bool is_top() const { return position == top; }
};

// Variable name to chain value, in cube-context order.
using Assignment = std::vector<std::pair<std::string, ChainValue>>;

// Brute force over all assignments of the occurring variables into a chain
// with two more elements than there are variables. Any countermodel in an
// arbitrary bounded total order induces one of these (only the relative order
// of the variables and the endpoints matters).
bool oracle_entails(const CubeContext& ctx, const Tope& hyp, const Tope& goal);

// An assignment satisfying hyp but not goal, if one exists. Endpoint values
// are tried before interior ones, so countermodels prefer corners.
std::optional<Assignment> find_countermodel(const CubeContext& ctx, const Tope& hyp,
                                            const Tope& goal);

bool evaluate(const Tope& t, const Assignment& assignment);

// `t=⊥, s=⊤`; interior points as fractions of the chain, e.g. `r=1/3`.
std::string format_countermodel(const Assignment& assignment);

}  // namespace sstt::tope
