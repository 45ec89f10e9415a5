#include "sstt/kernel/term.h"

#include <algorithm>
#include <cctype>

namespace sstt::kernel {

using tope::IntervalTerm;
using tope::Tope;

namespace {

using Node = Term::Node;

void add_tope_vars(const Tope& t, std::set<std::string>& out) {
  for (const auto& v : tope::free_vars(t)) out.insert(v);
}

Term finish(Node n) {
  auto& f = n.free;
  switch (n.kind) {
    case TermKind::kVar:
    case TermKind::kConst:
      f.insert(n.name);
      break;
    case TermKind::kPi:
    case TermKind::kSigma:
      f = n.args[1].free_names();
      f.erase(n.name);
      f.insert(n.args[0].free_names().begin(), n.args[0].free_names().end());
      break;
    case TermKind::kLam:
      f = n.args[0].free_names();
      f.erase(n.name);
      break;
    case TermKind::kExt:
    case TermKind::kExtLam:
      for (const auto& a : n.args) f.insert(a.free_names().begin(), a.free_names().end());
      for (const auto& t : n.topes) add_tope_vars(t, f);
      for (const auto& v : n.cube_vars) f.erase(v);
      break;
    default:
      for (const auto& a : n.args) f.insert(a.free_names().begin(), a.free_names().end());
      for (const auto& t : n.topes) add_tope_vars(t, f);
      for (const auto& p : n.points)
        if (p.is_var()) f.insert(p.name());
      break;
  }
  return Term(std::make_shared<const Node>(std::move(n)));
}

Term make(TermKind k, std::string name, std::vector<Term> args) {
  Node n;
  n.kind = k;
  n.name = std::move(name);
  n.args = std::move(args);
  return finish(std::move(n));
}

}  // namespace

Term var(std::string name) { return make(TermKind::kVar, std::move(name), {}); }
Term constant(std::string name) { return make(TermKind::kConst, std::move(name), {}); }
Term universe() {
  static const Term kU = make(TermKind::kUniverse, "", {});
  return kU;
}
Term pi(std::string x, Term dom, Term cod) {
  return make(TermKind::kPi, std::move(x), {std::move(dom), std::move(cod)});
}
Term arrow(Term dom, Term cod) {
  std::set<std::string> taken = cod.free_names();
  return pi(fresh_name("_", taken), std::move(dom), std::move(cod));
}
Term lam(std::string x, Term body) { return make(TermKind::kLam, std::move(x), {std::move(body)}); }
Term app(Term f, Term a) { return make(TermKind::kApp, "", {std::move(f), std::move(a)}); }
Term apps(Term f, const std::vector<Term>& as) {
  for (const auto& a : as) f = app(f, a);
  return f;
}
Term sigma(std::string x, Term a, Term b) {
  return make(TermKind::kSigma, std::move(x), {std::move(a), std::move(b)});
}
Term pair(Term a, Term b) { return make(TermKind::kPair, "", {std::move(a), std::move(b)}); }
Term fst(Term p) { return make(TermKind::kFst, "", {std::move(p)}); }
Term snd(Term p) { return make(TermKind::kSnd, "", {std::move(p)}); }
Term id_type(Term type, Term lhs, Term rhs) {
  return make(TermKind::kId, "", {std::move(type), std::move(lhs), std::move(rhs)});
}
Term refl() {
  static const Term kRefl = make(TermKind::kRefl, "", {});
  return kRefl;
}
Term j_elim(Term type, Term motive, Term base, Term lhs, Term rhs, Term path) {
  return make(TermKind::kJ, "",
              {std::move(type), std::move(motive), std::move(base), std::move(lhs),
               std::move(rhs), std::move(path)});
}

Term ext(std::vector<std::string> vars, Tope psi, Tope phi, Term family, Term boundary) {
  Node n;
  n.kind = TermKind::kExt;
  n.cube_vars = std::move(vars);
  n.topes = {std::move(psi), std::move(phi)};
  n.args = {std::move(family), std::move(boundary)};
  return finish(std::move(n));
}

Term ext_lam(std::vector<std::string> vars, Term body) {
  Node n;
  n.kind = TermKind::kExtLam;
  n.cube_vars = std::move(vars);
  n.args = {std::move(body)};
  return finish(std::move(n));
}

Term ext_app(Term f, std::vector<IntervalTerm> points) {
  Node n;
  n.kind = TermKind::kExtApp;
  n.args = {std::move(f)};
  n.points = std::move(points);
  return finish(std::move(n));
}

Term cases(std::vector<Tope> guards, std::vector<Term> branches) {
  Node n;
  n.kind = TermKind::kCase;
  n.topes = std::move(guards);
  n.args = std::move(branches);
  return finish(std::move(n));
}

Term rec_bot() {
  static const Term kRecBot = cases({}, {});
  return kRecBot;
}

Term rec01(Term at_zero, Term at_one) {
  return make(TermKind::kRec01, "", {std::move(at_zero), std::move(at_one)});
}

Term with_args(const Term& t, std::vector<Term> args) {
  Node n = t.node();
  n.args = std::move(args);
  n.free.clear();
  return finish(std::move(n));
}

Term at_pos(const Term& t, int line, int col) {
  Node n = t.node();
  n.line = line;
  n.col = col;
  return Term(std::make_shared<const Node>(std::move(n)));
}

std::string fresh_name(const std::string& base, const std::set<std::string>& taken) {
  if (!base.empty() && base != "_" && !taken.count(base)) return base;
  std::string stem = base;
  while (!stem.empty() && std::isdigit(static_cast<unsigned char>(stem.back()))) stem.pop_back();
  if (stem.empty() || stem == "_") stem = "x";
  for (int k = 1;; ++k) {
    std::string candidate = stem + std::to_string(k);
    if (!taken.count(candidate)) return candidate;
  }
}

// ---------------------------------------------------------------------------
// Substitution

namespace {

bool touches(const Term& t, const Subst& s) {
  for (const auto& [k, _] : s.terms)
    if (t.mentions(k)) return true;
  for (const auto& [k, _] : s.points)
    if (t.mentions(k)) return true;
  return false;
}

// Names free in the images of the keys that actually occur in `scope`.
std::set<std::string> range_names(const Subst& s, const std::set<std::string>& scope) {
  std::set<std::string> out;
  for (const auto& [k, v] : s.terms)
    if (scope.count(k)) out.insert(v.free_names().begin(), v.free_names().end());
  for (const auto& [k, v] : s.points)
    if (scope.count(k) && v.is_var()) out.insert(v.name());
  return out;
}

Term rebuild(const Term& t, Node n) {
  n.line = t.line();
  n.col = t.col();
  return finish(std::move(n));
}

Tope subst_tope(const Tope& t, const Subst& s) {
  if (s.points.empty()) return t;
  return tope::substitute(t, s.points);
}

Node shell(const Term& t) {
  Node n;
  n.kind = t.kind();
  n.name = t.name();
  n.cube_vars = t.cube_vars();
  return n;
}

// Removes `bound` from the substitution and renames those binders that would
// capture a free name of the substituted images. Returns the new binder names.
std::vector<std::string> enter_binders(const std::vector<std::string>& bound, const Term& scope_term,
                                       const std::set<std::string>& extra_scope, Subst& s,
                                       bool cube_binders) {
  for (const auto& b : bound) {
    s.terms.erase(b);
    s.points.erase(b);
  }
  std::set<std::string> scope = scope_term.free_names();
  scope.insert(extra_scope.begin(), extra_scope.end());
  std::set<std::string> danger = range_names(s, scope);
  std::vector<std::string> out = bound;
  std::set<std::string> taken = danger;
  taken.insert(scope.begin(), scope.end());
  for (const auto& [k, _] : s.terms) taken.insert(k);
  for (const auto& [k, _] : s.points) taken.insert(k);
  for (const auto& b : bound) taken.insert(b);
  for (auto& b : out) {
    if (!danger.count(b)) continue;
    std::string fresh = fresh_name(b, taken);
    taken.insert(fresh);
    if (cube_binders) s.points.emplace(b, IntervalTerm::var(fresh));
    else s.terms.emplace(b, var(fresh));
    b = fresh;
  }
  return out;
}

}  // namespace

Term substitute(const Term& t, const Subst& s) {
  if (!t || s.empty() || !touches(t, s)) return t;
  switch (t.kind()) {
    case TermKind::kVar: {
      auto it = s.terms.find(t.name());
      return it == s.terms.end() ? t : it->second;
    }
    case TermKind::kConst:
    case TermKind::kUniverse:
    case TermKind::kRefl:
      return t;
    case TermKind::kPi:
    case TermKind::kSigma:
    case TermKind::kLam: {
      bool has_dom = t.kind() != TermKind::kLam;
      const Term& body = has_dom ? t.arg(1) : t.arg(0);
      Subst inner = s;
      auto names = enter_binders({t.name()}, body, {}, inner, false);
      Node n = shell(t);
      n.name = names[0];
      if (has_dom) n.args = {substitute(t.arg(0), s), substitute(body, inner)};
      else n.args = {substitute(body, inner)};
      return rebuild(t, std::move(n));
    }
    case TermKind::kExt:
    case TermKind::kExtLam: {
      std::set<std::string> tope_scope;
      for (const auto& g : t.topes()) add_tope_vars(g, tope_scope);
      // The binder check must see every argument, so use a combined scope.
      Subst inner = s;
      Term combined = t.args().size() == 1 ? t.arg(0) : pair(t.arg(0), t.arg(1));
      auto names = enter_binders(t.cube_vars(), combined, tope_scope, inner, true);
      Node n = shell(t);
      n.cube_vars = names;
      for (const auto& g : t.topes()) n.topes.push_back(subst_tope(g, inner));
      for (const auto& a : t.args()) n.args.push_back(substitute(a, inner));
      return rebuild(t, std::move(n));
    }
    case TermKind::kExtApp: {
      Node n = shell(t);
      n.args = {substitute(t.arg(0), s)};
      for (const auto& p : t.points()) n.points.push_back(tope::substitute(p, s.points));
      return rebuild(t, std::move(n));
    }
    default: {
      Node n = shell(t);
      for (const auto& a : t.args()) n.args.push_back(substitute(a, s));
      for (const auto& g : t.topes()) n.topes.push_back(subst_tope(g, s));
      return rebuild(t, std::move(n));
    }
  }
}

Term subst_var(const Term& t, const std::string& x, const Term& u) {
  Subst s;
  s.terms.emplace(x, u);
  return substitute(t, s);
}

Term subst_points(const Term& t, const std::vector<std::string>& vars,
                  const std::vector<IntervalTerm>& points) {
  Subst s;
  for (std::size_t i = 0; i < vars.size() && i < points.size(); ++i)
    s.points.emplace(vars[i], points[i]);
  return substitute(t, s);
}

Tope subst_points(const Tope& t, const std::vector<std::string>& vars,
                  const std::vector<IntervalTerm>& points) {
  std::map<std::string, IntervalTerm> m;
  for (std::size_t i = 0; i < vars.size() && i < points.size(); ++i) m.emplace(vars[i], points[i]);
  return tope::substitute(t, m);
}

// ---------------------------------------------------------------------------
// Alpha equivalence

namespace {

bool alpha(const Term& a, const Term& b);

bool alpha_all(const std::vector<Term>& a, const std::vector<Term>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!alpha(a[i], b[i])) return false;
  return true;
}

bool alpha(const Term& a, const Term& b) {
  if (a.same_node(b)) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case TermKind::kVar:
    case TermKind::kConst:
      return a.name() == b.name();
    case TermKind::kPi:
    case TermKind::kSigma:
    case TermKind::kLam: {
      bool has_dom = a.kind() != TermKind::kLam;
      if (has_dom && !alpha(a.arg(0), b.arg(0))) return false;
      const Term& ab = a.args().back();
      const Term& bb = b.args().back();
      if (a.name() == b.name()) return alpha(ab, bb);
      std::set<std::string> taken = ab.free_names();
      taken.insert(bb.free_names().begin(), bb.free_names().end());
      std::string z = fresh_name(a.name(), taken);
      return alpha(subst_var(ab, a.name(), var(z)), subst_var(bb, b.name(), var(z)));
    }
    case TermKind::kExt:
    case TermKind::kExtLam: {
      if (a.cube_vars().size() != b.cube_vars().size()) return false;
      Term a2 = a, b2 = b;
      if (a.cube_vars() != b.cube_vars()) {
        // Rename both sides' binders to common fresh names.
        std::set<std::string> taken = a.free_names();
        taken.insert(b.free_names().begin(), b.free_names().end());
        for (const auto& v : a.cube_vars()) taken.insert(v);
        for (const auto& v : b.cube_vars()) taken.insert(v);
        std::vector<IntervalTerm> common;
        std::vector<std::string> names;
        for (const auto& v : a.cube_vars()) {
          std::string z = fresh_name(v, taken);
          taken.insert(z);
          names.push_back(z);
          common.push_back(IntervalTerm::var(z));
        }
        std::vector<Term> aa, ba;
        for (const auto& x : a.args()) aa.push_back(subst_points(x, a.cube_vars(), common));
        for (const auto& x : b.args()) ba.push_back(subst_points(x, b.cube_vars(), common));
        if (!alpha_all(aa, ba)) return false;
        for (std::size_t i = 0; i < a.topes().size(); ++i)
          if (!(subst_points(a.topes()[i], a.cube_vars(), common) ==
                subst_points(b.topes()[i], b.cube_vars(), common)))
            return false;
        return true;
      }
      return a2.topes() == b2.topes() && alpha_all(a2.args(), b2.args());
    }
    case TermKind::kExtApp:
      return a.points() == b.points() && alpha(a.arg(0), b.arg(0));
    default:
      return a.topes() == b.topes() && alpha_all(a.args(), b.args());
  }
}

}  // namespace

bool alpha_equal(const Term& a, const Term& b) { return alpha(a, b); }

std::size_t term_size(const Term& t) {
  std::size_t n = 1;
  for (const auto& a : t.args()) n += term_size(a);
  return n;
}

}  // namespace sstt::kernel
