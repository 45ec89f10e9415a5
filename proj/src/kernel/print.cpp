#include "sstt/kernel/print.h"

#include <fmt/format.h>
#include <fmt/ranges.h>

#include <algorithm>

namespace sstt::kernel {

namespace {

// Binding strength: lambdas and arrows < products < application < atoms.
enum Level { kLow = 0, kProduct = 1, kSpine = 2, kAtom = 3 };

std::string print(const Term& t, int need);

std::string paren_if(bool cond, std::string s) { return cond ? "(" + s + ")" : s; }

std::string point_list(const std::vector<tope::IntervalTerm>& ps) {
  std::vector<std::string> out;
  for (const auto& p : ps) out.push_back(p.str());
  return fmt::format("({})", fmt::join(out, ", "));
}

std::string case_list(const Term& c) {
  std::vector<std::string> parts;
  for (std::size_t i = 0; i < c.topes().size(); ++i)
    parts.push_back(fmt::format("{} |-> {}", tope::to_string(c.topes()[i]), print(c.arg(i), kLow)));
  if (parts.empty()) return "[ ]";
  return fmt::format("[ {} ]", fmt::join(parts, " , "));
}

std::string print_pi(const Term& t) {
  const Term& dom = t.arg(0);
  const Term& cod = t.arg(1);
  if (!cod.mentions(t.name())) return fmt::format("{} -> {}", print(dom, kProduct), print(cod, kLow));
  std::vector<std::string> names{t.name()};
  Term rest = cod;
  // Group `(x : A) -> (y : A) -> B` as `(x y : A) -> B` when A is shared.
  while (rest.is(TermKind::kPi) && rest.arg(1).mentions(rest.name()) &&
         alpha_equal(rest.arg(0), dom) && !rest.arg(0).mentions(names.back()) &&
         std::find(names.begin(), names.end(), rest.name()) == names.end()) {
    bool clash = false;
    for (const auto& n : names) clash = clash || dom.mentions(n);
    if (clash) break;
    names.push_back(rest.name());
    rest = rest.arg(1);
  }
  return fmt::format("({} : {}) -> {}", fmt::join(names, " "), print(dom, kLow), print(rest, kLow));
}

std::string print_ext(const Term& t) {
  std::string shape = fmt::format("{{{} | {}}}", fmt::join(t.cube_vars(), " "),
                                  tope::to_string(ext_shape(t)));
  std::string family = print(ext_family(t), kLow);
  const tope::Tope& phi = ext_subshape(t);
  const Term& a = ext_boundary(t);
  if (phi.kind() == tope::TopeKind::kBot && a.is(TermKind::kCase) && a.args().empty())
    return fmt::format("<{} -> {}>", shape, family);
  if (a.is(TermKind::kCase) && a.args().size() >= 2 && tope::disj(a.topes()) == phi)
    return fmt::format("<{} -> {} {}>", shape, family, case_list(a));
  return fmt::format("<{} -> {} [ {} |-> {} ]>", shape, family, tope::to_string(phi),
                     print(a, kLow));
}

std::string print(const Term& t, int need) {
  switch (t.kind()) {
    case TermKind::kVar:
    case TermKind::kConst: return t.name();
    case TermKind::kUniverse: return "U";
    case TermKind::kRefl: return "refl";
    case TermKind::kPi: return paren_if(need > kLow, print_pi(t));
    case TermKind::kLam: {
      std::vector<std::string> names{t.name()};
      Term body = t.arg(0);
      while (body.is(TermKind::kLam)) {
        names.push_back(body.name());
        body = body.arg(0);
      }
      return paren_if(need > kLow,
                      fmt::format("\\{}. {}", fmt::join(names, " "), print(body, kLow)));
    }
    case TermKind::kExtLam:
      return paren_if(need > kLow, fmt::format("\\{{{}}}. {}", fmt::join(t.cube_vars(), " "),
                                               print(t.arg(0), kLow)));
    case TermKind::kSigma:
      if (!t.arg(1).mentions(t.name()))
        return paren_if(need > kProduct,
                        fmt::format("{} * {}", print(t.arg(0), kSpine), print(t.arg(1), kProduct)));
      return paren_if(need > kLow, fmt::format("Sig ({} : {}) {}", t.name(), print(t.arg(0), kLow),
                                               print(t.arg(1), kLow)));
    case TermKind::kApp:
      return paren_if(need > kSpine,
                      fmt::format("{} {}", print(t.arg(0), kSpine), print(t.arg(1), kAtom)));
    case TermKind::kExtApp:
      return paren_if(need > kSpine,
                      fmt::format("{} @ {}", print(t.arg(0), kSpine), point_list(t.points())));
    case TermKind::kId:
      return paren_if(need > kSpine, fmt::format("Id {} {} {}", print(t.arg(0), kAtom),
                                                 print(t.arg(1), kAtom), print(t.arg(2), kAtom)));
    case TermKind::kJ: {
      std::vector<std::string> parts;
      for (const auto& a : t.args()) parts.push_back(print(a, kAtom));
      return paren_if(need > kSpine, fmt::format("J {}", fmt::join(parts, " ")));
    }
    case TermKind::kRec01:
      return paren_if(need > kSpine,
                      fmt::format("rec01 {} {}", print(t.arg(0), kAtom), print(t.arg(1), kAtom)));
    case TermKind::kPair:
      return fmt::format("({}, {})", print(t.arg(0), kLow), print(t.arg(1), kLow));
    case TermKind::kFst: return fmt::format("{}.1", print(t.arg(0), kAtom));
    case TermKind::kSnd: return fmt::format("{}.2", print(t.arg(0), kAtom));
    case TermKind::kExt: return print_ext(t);
    case TermKind::kCase: return fmt::format("cases {}", case_list(t));
  }
  return "?";
}

}  // namespace

std::string to_string(const Term& t) { return t ? print(t, kLow) : "<null>"; }

}  // namespace sstt::kernel
