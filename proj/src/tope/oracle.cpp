#include "sstt/tope/oracle.h"

#include <fmt/format.h>
#include <fmt/ranges.h>

#include <algorithm>

namespace sstt::tope {

namespace {

int value_of(const IntervalTerm& p, const Assignment& a, int top) {
  switch (p.kind()) {
    case IntervalTerm::Kind::kZero: return 0;
    case IntervalTerm::Kind::kOne: return top;
    case IntervalTerm::Kind::kVar:
      for (const auto& [name, v] : a)
        if (name == p.name()) return v.position;
      throw ScopeError(fmt::format("cube variable '{}' is not in scope", p.name()));
  }
  return 0;
}

bool eval(const Tope& t, const Assignment& a, int top) {
  switch (t.kind()) {
    case TopeKind::kTop: return true;
    case TopeKind::kBot: return false;
    case TopeKind::kLe: return value_of(t.left(), a, top) <= value_of(t.right(), a, top);
    case TopeKind::kEq: return value_of(t.left(), a, top) == value_of(t.right(), a, top);
    case TopeKind::kAnd: return eval(t.lhs(), a, top) && eval(t.rhs(), a, top);
    case TopeKind::kOr: return eval(t.lhs(), a, top) || eval(t.rhs(), a, top);
  }
  return false;
}

}  // namespace

bool evaluate(const Tope& t, const Assignment& assignment) {
  int top = assignment.empty() ? 1 : assignment.front().second.top;
  return eval(t, assignment, top);
}

std::optional<Assignment> find_countermodel(const CubeContext& ctx, const Tope& hyp,
                                            const Tope& goal) {
  check_scope(ctx, hyp);
  check_scope(ctx, goal);
  std::set<std::string> used = free_vars(hyp);
  for (const auto& v : free_vars(goal)) used.insert(v);
  std::vector<std::string> vars;
  for (const auto& v : ctx.vars())
    if (used.count(v)) vars.push_back(v);

  const int m = static_cast<int>(vars.size());
  const int top = m + 1;
  // Try order: bottom, top, then interior points.
  std::vector<int> order{0, top};
  for (int k = 1; k <= m; ++k) order.push_back(k);

  std::vector<std::size_t> digits(vars.size(), 0);
  Assignment a;
  for (const auto& v : vars) a.emplace_back(v, ChainValue{0, top});
  while (true) {
    for (std::size_t i = 0; i < vars.size(); ++i) a[i].second.position = order[digits[i]];
    if (eval(hyp, a, top) && !eval(goal, a, top)) return a;
    std::size_t i = 0;
    while (i < digits.size() && ++digits[i] == order.size()) digits[i++] = 0;
    if (i == digits.size()) break;
  }
  return std::nullopt;
}

bool oracle_entails(const CubeContext& ctx, const Tope& hyp, const Tope& goal) {
  return !find_countermodel(ctx, hyp, goal).has_value();
}

std::string format_countermodel(const Assignment& assignment) {
  std::vector<std::string> parts;
  for (const auto& [name, v] : assignment) {
    std::string value;
    if (v.is_bottom()) value = "⊥";
    else if (v.is_top()) value = "⊤";
    else value = fmt::format("{}/{}", v.position, v.top);
    parts.push_back(fmt::format("{}={}", name, value));
  }
  if (parts.empty()) return "(no variables)";
  return fmt::format("{}", fmt::join(parts, ", "));
}

}  // namespace sstt::tope
