#include "sstt/kernel/check.h"

#include <fmt/format.h>

#include <functional>

#include "sstt/kernel/print.h"
#include "sstt/tope/oracle.h"

namespace sstt::kernel {

using tope::IntervalTerm;
using tope::Tope;

namespace {

[[noreturn]] void fail(ErrorClass cls, std::string message,
                       std::optional<tope::Assignment> countermodel = std::nullopt) {
  throw KernelError(cls, std::move(message), std::move(countermodel));
}

std::string show(const Term& t) { return "`" + to_string(t) + "`"; }

std::vector<IntervalTerm> as_points(const std::vector<std::string>& names) {
  std::vector<IntervalTerm> out;
  for (const auto& n : names) out.push_back(IntervalTerm::var(n));
  return out;
}

// Fresh cube variables for the binders of an Ext/ExtLam, preferring `wanted`.
std::vector<std::string> fresh_cube_vars(const Context& ctx, const std::vector<std::string>& wanted,
                                         const std::set<std::string>& avoid) {
  std::set<std::string> taken = avoid;
  std::vector<std::string> out;
  for (const auto& w : wanted) {
    std::string v = ctx.fresh(w, taken);
    taken.insert(v);
    out.push_back(v);
  }
  return out;
}

std::set<std::string> names_of(const Term& a, const Term& b = Term()) {
  std::set<std::string> out = a.free_names();
  if (b) out.insert(b.free_names().begin(), b.free_names().end());
  return out;
}

// Opens the Ext type `e` at fresh cube variables `vs`.
struct OpenedExt {
  Tope psi;
  Tope phi;
  Term family;
  Term boundary;
};

OpenedExt open_ext(const Term& e, const std::vector<std::string>& vs) {
  auto pts = as_points(vs);
  return {subst_points(ext_shape(e), e.cube_vars(), pts),
          subst_points(ext_subshape(e), e.cube_vars(), pts),
          subst_points(ext_family(e), e.cube_vars(), pts),
          subst_points(ext_boundary(e), e.cube_vars(), pts)};
}

Term push_into_case(const Term& c, const std::function<Term(const Term&)>& elim) {
  std::vector<Term> branches;
  for (const auto& b : c.args()) branches.push_back(elim(b));
  return cases(c.topes(), std::move(branches));
}

Term motive_type(const Context& ctx, const Term& type, const std::set<std::string>& avoid) {
  std::string x = ctx.fresh("x", avoid);
  std::set<std::string> avoid2 = avoid;
  avoid2.insert(x);
  std::string y = ctx.fresh("y", avoid2);
  return pi(x, type, pi(y, type, arrow(id_type(type, var(x), var(y)), universe())));
}

Term base_type(const Context& ctx, const Term& type, const Term& motive) {
  std::string z = ctx.fresh("x", names_of(type, motive));
  return pi(z, type, apps(motive, {var(z), var(z), refl()}));
}

}  // namespace

// ---------------------------------------------------------------------------
// Scope resolution

namespace {

struct Scope {
  std::set<std::string> terms;
  std::set<std::string> cubes;
};

void resolve_point(const IntervalTerm& p, const Scope& s) {
  if (!p.is_var() || s.cubes.count(p.name())) return;
  if (s.terms.count(p.name()))
    fail(ErrorClass::kScope, fmt::format("'{}' is a term variable, not a cube variable", p.name()));
  fail(ErrorClass::kScope, fmt::format("cube variable '{}' is not in scope", p.name()));
}

void resolve_tope(const Tope& t, const Scope& s) {
  for (const auto& v : tope::free_vars(t)) resolve_point(IntervalTerm::var(v), s);
}

Term resolve_in(const Context& ctx, const Term& t, const Scope& s,
                const std::set<std::string>& failed) {
  try {
    switch (t.kind()) {
      case TermKind::kVar: {
        const std::string& x = t.name();
        if (s.terms.count(x)) return t;
        if (s.cubes.count(x))
          fail(ErrorClass::kScope,
               fmt::format("cube variable '{}' cannot be used as a term", x));
        if (ctx.env().contains(x)) return at_pos(constant(x), t.line(), t.col());
        if (failed.count(x))
          fail(ErrorClass::kDependency,
               fmt::format("depends on '{}', which failed to check", x));
        fail(ErrorClass::kScope, fmt::format("undeclared name '{}'", x));
      }
      case TermKind::kConst:
      case TermKind::kUniverse:
      case TermKind::kRefl:
        return t;
      case TermKind::kPi:
      case TermKind::kSigma: {
        Scope inner = s;
        inner.terms.insert(t.name());
        inner.cubes.erase(t.name());
        return with_args(t, {resolve_in(ctx, t.arg(0), s, failed),
                             resolve_in(ctx, t.arg(1), inner, failed)});
      }
      case TermKind::kLam: {
        Scope inner = s;
        inner.terms.insert(t.name());
        inner.cubes.erase(t.name());
        return with_args(t, {resolve_in(ctx, t.arg(0), inner, failed)});
      }
      case TermKind::kExt:
      case TermKind::kExtLam: {
        Scope inner = s;
        for (const auto& v : t.cube_vars()) {
          inner.cubes.insert(v);
          inner.terms.erase(v);
        }
        std::set<std::string> seen;
        for (const auto& v : t.cube_vars())
          if (!seen.insert(v).second)
            fail(ErrorClass::kScope, fmt::format("cube variable '{}' bound twice", v));
        for (const auto& g : t.topes()) resolve_tope(g, inner);
        std::vector<Term> args;
        for (const auto& a : t.args()) args.push_back(resolve_in(ctx, a, inner, failed));
        return with_args(t, std::move(args));
      }
      case TermKind::kExtApp: {
        for (const auto& p : t.points()) resolve_point(p, s);
        return with_args(t, {resolve_in(ctx, t.arg(0), s, failed)});
      }
      default: {
        for (const auto& g : t.topes()) resolve_tope(g, s);
        std::vector<Term> args;
        for (const auto& a : t.args()) args.push_back(resolve_in(ctx, a, s, failed));
        return with_args(t, std::move(args));
      }
    }
  } catch (KernelError& e) {
    if (!e.has_pos() && t.line() > 0) e.set_pos(t.line(), t.col());
    throw;
  }
}

}  // namespace

Term resolve(const Context& ctx, const Term& t, const std::set<std::string>& failed) {
  Scope s;
  s.cubes.insert(ctx.cube().vars().begin(), ctx.cube().vars().end());
  for (const auto& n : t.free_names())
    if (ctx.binds(n) && !ctx.is_cube_var(n)) s.terms.insert(n);
  return resolve_in(ctx, t, s, failed);
}

// ---------------------------------------------------------------------------
// Reduction

Term synth(const Context& ctx, const Term& t) {
  switch (t.kind()) {
    case TermKind::kVar: return ctx.type_of(t.name());
    case TermKind::kConst: {
      const Global* g = ctx.env().find(t.name());
      return g ? g->type : Term();
    }
    case TermKind::kApp: {
      Term f = synth(ctx, t.arg(0));
      if (!f) return f;
      Term fw = whnf(ctx, f);
      if (!fw.is(TermKind::kPi)) return Term();
      return subst_var(fw.arg(1), fw.name(), t.arg(1));
    }
    case TermKind::kFst:
    case TermKind::kSnd: {
      Term p = synth(ctx, t.arg(0));
      if (!p) return p;
      Term pw = whnf(ctx, p);
      if (!pw.is(TermKind::kSigma)) return Term();
      if (t.is(TermKind::kFst)) return pw.arg(0);
      return subst_var(pw.arg(1), pw.name(), fst(t.arg(0)));
    }
    case TermKind::kJ: return apps(t.arg(1), {t.arg(3), t.arg(4), t.arg(5)});
    case TermKind::kExtApp: {
      Term f = synth(ctx, t.arg(0));
      if (!f) return f;
      Term fw = whnf(ctx, f);
      if (!fw.is(TermKind::kExt) || fw.cube_vars().size() != t.points().size()) return Term();
      return subst_points(ext_family(fw), fw.cube_vars(), t.points());
    }
    default: return Term();
  }
}

Term whnf(const Context& ctx, const Term& input) {
  Term t = input;
  while (true) {
    ctx.tick();
    switch (t.kind()) {
      case TermKind::kConst: {
        const Global* g = ctx.env().find(t.name());
        if (g && g->kind == GlobalKind::kDefinition && g->value) {
          t = g->value;
          continue;
        }
        return t;
      }
      case TermKind::kApp: {
        Term f = whnf(ctx, t.arg(0));
        if (f.is(TermKind::kLam)) {
          t = subst_var(f.arg(0), f.name(), t.arg(1));
          continue;
        }
        Term a = t.arg(1);
        if (f.is(TermKind::kCase) && !f.args().empty())
          return push_into_case(f, [&](const Term& b) { return app(b, a); });
        return f.same_node(t.arg(0)) ? t : app(f, a);
      }
      case TermKind::kFst:
      case TermKind::kSnd: {
        Term p = whnf(ctx, t.arg(0));
        bool first = t.is(TermKind::kFst);
        if (p.is(TermKind::kPair)) {
          t = p.arg(first ? 0 : 1);
          continue;
        }
        if (p.is(TermKind::kCase) && !p.args().empty())
          return push_into_case(p, [&](const Term& b) { return first ? fst(b) : snd(b); });
        if (p.same_node(t.arg(0))) return t;
        return first ? fst(p) : snd(p);
      }
      case TermKind::kJ: {
        Term p = whnf(ctx, t.arg(5));
        if (p.is(TermKind::kRefl)) {
          t = app(t.arg(2), t.arg(3));
          continue;
        }
        if (p.is(TermKind::kCase) && !p.args().empty())
          return push_into_case(p, [&](const Term& b) {
            return j_elim(t.arg(0), t.arg(1), t.arg(2), t.arg(3), t.arg(4), b);
          });
        return p.same_node(t.arg(5))
                   ? t
                   : j_elim(t.arg(0), t.arg(1), t.arg(2), t.arg(3), t.arg(4), p);
      }
      case TermKind::kExtApp: {
        Term f = whnf(ctx, t.arg(0));
        const auto& pts = t.points();
        if (f.is(TermKind::kExtLam) && f.cube_vars().size() == pts.size()) {
          t = subst_points(f.arg(0), f.cube_vars(), pts);
          continue;
        }
        if (f.is(TermKind::kCase) && !f.args().empty())
          return push_into_case(f, [&](const Term& b) { return ext_app(b, pts); });
        Term ft = synth(ctx, f);
        if (ft) {
          Term fw = whnf(ctx, ft);
          if (fw.is(TermKind::kExt) && fw.cube_vars().size() == pts.size() &&
              ext_subshape(fw).kind() != tope::TopeKind::kBot &&
              ctx.holds(subst_points(ext_subshape(fw), fw.cube_vars(), pts))) {
            t = subst_points(ext_boundary(fw), fw.cube_vars(), pts);
            continue;
          }
        }
        return f.same_node(t.arg(0)) ? t : ext_app(f, pts);
      }
      case TermKind::kCase: {
        bool reduced = false;
        for (std::size_t i = 0; i < t.topes().size(); ++i) {
          if (ctx.holds(t.topes()[i])) {
            t = t.arg(i);
            reduced = true;
            break;
          }
        }
        if (reduced) continue;
        return t;
      }
      default: return t;
    }
  }
}

// ---------------------------------------------------------------------------
// Definitional equality

namespace {

bool conv(const Context& ctx, const Term& a, const Term& b, const Term& type);

struct NeutralMatch {
  bool ok = false;
  Term type;  // may be null when the head's type is unknown
};

bool conv_in_binder(const Context& ctx, const Term& dom, const std::string& x1, const Term& b1,
                    const std::string& x2, const Term& b2, const Term& type) {
  std::string z = ctx.fresh(x1, names_of(b1, b2));
  return conv(ctx.with_var(z, dom), subst_var(b1, x1, var(z)), subst_var(b2, x2, var(z)), type);
}

NeutralMatch conv_neutral(const Context& ctx, const Term& a, const Term& b) {
  if (a.kind() != b.kind()) return {};
  switch (a.kind()) {
    case TermKind::kVar:
      if (a.name() != b.name()) return {};
      return {true, ctx.type_of(a.name())};
    case TermKind::kConst: {
      if (a.name() != b.name()) return {};
      const Global* g = ctx.env().find(a.name());
      return {true, g ? g->type : Term()};
    }
    case TermKind::kApp: {
      NeutralMatch head = conv_neutral(ctx, a.arg(0), b.arg(0));
      if (!head.ok) return {};
      Term fw = head.type ? whnf(ctx, head.type) : Term();
      if (fw && fw.is(TermKind::kPi)) {
        if (!conv(ctx, a.arg(1), b.arg(1), fw.arg(0))) return {};
        return {true, subst_var(fw.arg(1), fw.name(), a.arg(1))};
      }
      return {alpha_equal(a.arg(1), b.arg(1)), Term()};
    }
    case TermKind::kFst:
    case TermKind::kSnd: {
      NeutralMatch inner = conv_neutral(ctx, a.arg(0), b.arg(0));
      if (!inner.ok) return {};
      Term pw = inner.type ? whnf(ctx, inner.type) : Term();
      if (!pw || !pw.is(TermKind::kSigma)) return {true, Term()};
      if (a.is(TermKind::kFst)) return {true, pw.arg(0)};
      return {true, subst_var(pw.arg(1), pw.name(), fst(a.arg(0)))};
    }
    case TermKind::kJ: {
      const Term& type = a.arg(0);
      if (!conv(ctx, type, b.arg(0), universe())) return {};
      Term mt = motive_type(ctx, type, names_of(a, b));
      if (!conv(ctx, a.arg(1), b.arg(1), mt)) return {};
      if (!conv(ctx, a.arg(2), b.arg(2), base_type(ctx, type, a.arg(1)))) return {};
      if (!conv(ctx, a.arg(3), b.arg(3), type) || !conv(ctx, a.arg(4), b.arg(4), type)) return {};
      if (!conv(ctx, a.arg(5), b.arg(5), id_type(type, a.arg(3), a.arg(4)))) return {};
      return {true, apps(a.arg(1), {a.arg(3), a.arg(4), a.arg(5)})};
    }
    case TermKind::kExtApp: {
      if (a.points().size() != b.points().size()) return {};
      NeutralMatch head = conv_neutral(ctx, a.arg(0), b.arg(0));
      if (!head.ok) return {};
      for (std::size_t i = 0; i < a.points().size(); ++i) {
        const auto& p = a.points()[i];
        const auto& q = b.points()[i];
        if (p != q && !ctx.holds(Tope::eq(p, q))) return {};
      }
      Term fw = head.type ? whnf(ctx, head.type) : Term();
      if (!fw || !fw.is(TermKind::kExt) || fw.cube_vars().size() != a.points().size())
        return {true, Term()};
      return {true, subst_points(ext_family(fw), fw.cube_vars(), a.points())};
    }
    default: return {};
  }
}

bool is_neutral(const Term& t) {
  switch (t.kind()) {
    case TermKind::kVar:
    case TermKind::kConst:
    case TermKind::kApp:
    case TermKind::kFst:
    case TermKind::kSnd:
    case TermKind::kJ:
    case TermKind::kExtApp:
      return true;
    default: return false;
  }
}

// Both sides in weak head normal form; `type` is not a Pi/Sigma/Ext.
bool conv_whnf(const Context& ctx, const Term& a, const Term& b, const Term& type) {
  if (alpha_equal(a, b)) return true;
  for (const Term* side : {&a, &b}) {
    if (!side->is(TermKind::kCase)) continue;
    const Term& c = *side;
    if (c.args().empty()) return false;
    if (!ctx.holds(tope::disj(c.topes()))) return false;
    for (const auto& g : c.topes()) {
      Context cg = ctx.restricted(g);
      if (cg.consistent() && !conv(cg, a, b, type)) return false;
    }
    return true;
  }
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case TermKind::kUniverse:
    case TermKind::kRefl:
      return true;
    case TermKind::kPi:
    case TermKind::kSigma:
      return conv(ctx, a.arg(0), b.arg(0), universe()) &&
             conv_in_binder(ctx, a.arg(0), a.name(), a.arg(1), b.name(), b.arg(1), universe());
    case TermKind::kId:
      return conv(ctx, a.arg(0), b.arg(0), universe()) &&
             conv(ctx, a.arg(1), b.arg(1), a.arg(0)) && conv(ctx, a.arg(2), b.arg(2), a.arg(0));
    case TermKind::kExt: {
      if (a.cube_vars().size() != b.cube_vars().size()) return false;
      auto vs = fresh_cube_vars(ctx, a.cube_vars(), names_of(a, b));
      OpenedExt ea = open_ext(a, vs), eb = open_ext(b, vs);
      Context c1 = ctx.with_cube(vs, Tope::top());
      const Tope& r = ctx.restriction();
      if (!c1.entails(r && ea.psi, eb.psi) || !c1.entails(r && eb.psi, ea.psi)) return false;
      Context cpsi = c1.restricted(ea.psi);
      if (!cpsi.entails(cpsi.restriction() && ea.phi, eb.phi) ||
          !cpsi.entails(cpsi.restriction() && eb.phi, ea.phi))
        return false;
      if (!conv(cpsi, ea.family, eb.family, universe())) return false;
      Context cphi = cpsi.restricted(ea.phi);
      return !cphi.consistent() || conv(cphi, ea.boundary, eb.boundary, ea.family);
    }
    default:
      if (is_neutral(a)) return conv_neutral(ctx, a, b).ok;
      return false;
  }
}

bool conv(const Context& ctx, const Term& a, const Term& b, const Term& type) {
  if (alpha_equal(a, b)) return true;
  if (ctx.restriction().kind() != tope::TopeKind::kTop) {
    const auto& clauses = ctx.clauses();
    if (clauses.empty()) return true;
    if (clauses.size() > 1) {
      for (const auto& c : clauses)
        if (!conv(ctx.with_restriction(c), a, b, type)) return false;
      return true;
    }
  }
  Term tw = whnf(ctx, type);
  switch (tw.kind()) {
    case TermKind::kPi: {
      std::string z = ctx.fresh(tw.name(), names_of(a, b));
      Term cod = subst_var(tw.arg(1), tw.name(), var(z));
      return conv(ctx.with_var(z, tw.arg(0)), app(a, var(z)), app(b, var(z)), cod);
    }
    case TermKind::kSigma:
      return conv(ctx, fst(a), fst(b), tw.arg(0)) &&
             conv(ctx, snd(a), snd(b), subst_var(tw.arg(1), tw.name(), fst(a)));
    case TermKind::kExt: {
      auto vs = fresh_cube_vars(ctx, tw.cube_vars(), names_of(a, b));
      OpenedExt e = open_ext(tw, vs);
      auto pts = as_points(vs);
      return conv(ctx.with_cube(vs, e.psi), ext_app(a, pts), ext_app(b, pts), e.family);
    }
    default:
      return conv_whnf(ctx, whnf(ctx, a), whnf(ctx, b), tw);
  }
}

}  // namespace

bool def_equal(const Context& ctx, const Term& a, const Term& b, const Term& type) {
  return conv(ctx, a, b, type);
}

// ---------------------------------------------------------------------------
// Bidirectional checking

namespace {

Term infer_impl(const Context& ctx, const Term& t);
void check_impl(const Context& ctx, const Term& t, const Term& type);

template <typename F>
auto with_position(const Term& t, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (KernelError& e) {
    if (!e.has_pos() && t && t.line() > 0) e.set_pos(t.line(), t.col());
    throw;
  }
}

std::optional<tope::Assignment> countermodel(const Context& ctx, const Tope& hyp,
                                             const Tope& goal) {
  try {
    return tope::find_countermodel(ctx.cube(), hyp, goal);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

std::string countermodel_note(const std::optional<tope::Assignment>& cm) {
  return cm ? fmt::format(" (countermodel: {})", tope::format_countermodel(*cm)) : "";
}

// Opens a Pi/Sigma binder for checking, keeping the user's name when possible.
std::pair<std::string, Term> open_binder(const Context& ctx, const std::string& x, const Term& body,
                                         const std::set<std::string>& avoid = {}) {
  std::string z = ctx.fresh(x, avoid);
  return {z, z == x ? body : subst_var(body, x, var(z))};
}

Term infer_ext(const Context& ctx, const Term& t) {
  auto vs = fresh_cube_vars(ctx, t.cube_vars(), {});
  OpenedExt e = open_ext(t, vs);
  Context c1 = ctx.with_cube(vs, Tope::top());
  Tope hyp = ctx.restriction() && e.phi;
  if (!c1.entails(hyp, e.psi)) {
    auto cm = countermodel(c1, hyp, e.psi);
    fail(ErrorClass::kNonInclusion,
         fmt::format("subshape {} is not contained in shape {}{}", tope::to_string(e.phi),
                     tope::to_string(e.psi), countermodel_note(cm)),
         cm);
  }
  Context cpsi = c1.restricted(e.psi);
  check_type(cpsi, e.family);
  Context cphi = cpsi.restricted(e.phi);
  if (cphi.consistent()) check(cphi, e.boundary, e.family);
  return universe();
}

Term infer_impl(const Context& ctx, const Term& t) {
  switch (t.kind()) {
    case TermKind::kVar: {
      if (ctx.is_cube_var(t.name()))
        fail(ErrorClass::kScope,
             fmt::format("cube variable '{}' cannot be used as a term", t.name()));
      if (!ctx.binds(t.name())) fail(ErrorClass::kScope, fmt::format("undeclared name '{}'", t.name()));
      Term ty = ctx.type_of(t.name());
      if (!ty)
        fail(ErrorClass::kNotSynthesizable, fmt::format("type of '{}' is unknown", t.name()));
      return ty;
    }
    case TermKind::kConst: {
      const Global* g = ctx.env().find(t.name());
      if (!g) fail(ErrorClass::kScope, fmt::format("undeclared name '{}'", t.name()));
      return g->type;
    }
    case TermKind::kUniverse: return universe();
    case TermKind::kPi:
    case TermKind::kSigma: {
      check_type(ctx, t.arg(0));
      auto [z, body] = open_binder(ctx, t.name(), t.arg(1));
      check_type(ctx.with_var(z, t.arg(0)), body);
      return universe();
    }
    case TermKind::kId:
      check_type(ctx, t.arg(0));
      check(ctx, t.arg(1), t.arg(0));
      check(ctx, t.arg(2), t.arg(0));
      return universe();
    case TermKind::kExt: return infer_ext(ctx, t);
    case TermKind::kApp: {
      Term ft = whnf(ctx, infer(ctx, t.arg(0)));
      if (!ft.is(TermKind::kPi))
        fail(ErrorClass::kTypeMismatch, fmt::format("{} is applied to an argument but has type {}",
                                                    show(t.arg(0)), show(ft)));
      check(ctx, t.arg(1), ft.arg(0));
      return subst_var(ft.arg(1), ft.name(), t.arg(1));
    }
    case TermKind::kFst:
    case TermKind::kSnd: {
      Term pt = whnf(ctx, infer(ctx, t.arg(0)));
      if (!pt.is(TermKind::kSigma))
        fail(ErrorClass::kTypeMismatch,
             fmt::format("{} is projected but has type {}", show(t.arg(0)), show(pt)));
      if (t.is(TermKind::kFst)) return pt.arg(0);
      return subst_var(pt.arg(1), pt.name(), fst(t.arg(0)));
    }
    case TermKind::kJ: {
      const Term& type = t.arg(0);
      check_type(ctx, type);
      check(ctx, t.arg(1), motive_type(ctx, type, t.free_names()));
      check(ctx, t.arg(3), type);
      check(ctx, t.arg(4), type);
      check(ctx, t.arg(5), id_type(type, t.arg(3), t.arg(4)));
      check(ctx, t.arg(2), base_type(ctx, type, t.arg(1)));
      return apps(t.arg(1), {t.arg(3), t.arg(4), t.arg(5)});
    }
    case TermKind::kExtApp: {
      Term ft = whnf(ctx, infer(ctx, t.arg(0)));
      if (!ft.is(TermKind::kExt))
        fail(ErrorClass::kTypeMismatch, fmt::format("{} is applied to a point but has type {}",
                                                    show(t.arg(0)), show(ft)));
      const auto& pts = t.points();
      if (ft.cube_vars().size() != pts.size())
        fail(ErrorClass::kTypeMismatch,
             fmt::format("{} expects {} interval argument(s), got {}", show(t.arg(0)),
                         ft.cube_vars().size(), pts.size()));
      for (const auto& p : pts)
        if (p.is_var() && !ctx.is_cube_var(p.name()))
          fail(ErrorClass::kScope, fmt::format("cube variable '{}' is not in scope", p.name()));
      Tope psi = subst_points(ext_shape(ft), ft.cube_vars(), pts);
      if (!ctx.holds(psi)) {
        auto cm = countermodel(ctx, ctx.restriction(), psi);
        std::string point, vars;
        for (std::size_t i = 0; i < pts.size(); ++i) {
          point += (i ? ", " : "") + pts[i].str();
          vars += (i ? " " : "") + ft.cube_vars()[i];
        }
        if (cm && cm->empty()) cm.reset();
        fail(ErrorClass::kShapeMembership,
             fmt::format("point ({}) does not lie in the shape {{{} | {}}}{}", point, vars,
                         tope::to_string(ext_shape(ft)), countermodel_note(cm)),
             cm);
      }
      return subst_points(ext_family(ft), ft.cube_vars(), pts);
    }
    case TermKind::kRec01:
      fail(ErrorClass::kNotSynthesizable, "rec01 needs an enclosing cube variable");
    default:
      fail(ErrorClass::kNotSynthesizable,
           fmt::format("cannot infer a type for {}; it can only be checked against one", show(t)));
  }
}

void check_case(const Context& ctx, const Term& t, const Term& type) {
  const auto& guards = t.topes();
  Tope cover = tope::disj(guards);
  if (!ctx.holds(cover)) {
    auto cm = countermodel(ctx, ctx.restriction(), cover);
    fail(ErrorClass::kCaseCoverage,
         fmt::format("cases {} do not cover {}{}", tope::to_string(cover),
                     tope::to_string(ctx.restriction()), countermodel_note(cm)),
         cm);
  }
  for (std::size_t i = 0; i < guards.size(); ++i) {
    Context ci = ctx.restricted(guards[i]);
    if (ci.consistent()) check(ci, t.arg(i), type);
  }
  for (std::size_t i = 0; i < guards.size(); ++i)
    for (std::size_t j = i + 1; j < guards.size(); ++j) {
      Context cij = ctx.restricted(guards[i] && guards[j]);
      if (cij.consistent() && !conv(cij, t.arg(i), t.arg(j), type))
        fail(ErrorClass::kIncompatibleBoundary,
             fmt::format("cases {} and {} disagree where both hold: {} vs {}",
                         tope::to_string(guards[i]), tope::to_string(guards[j]),
                         show(normalize(cij, t.arg(i), type)),
                         show(normalize(cij, t.arg(j), type))));
    }
}

void check_ext_lam(const Context& ctx, const Term& t, const Term& tw) {
  if (tw.cube_vars().size() != t.cube_vars().size())
    fail(ErrorClass::kTypeMismatch,
         fmt::format("extension lambda binds {} variable(s) but {} has {}", t.cube_vars().size(),
                     show(tw), tw.cube_vars().size()));
  auto vs = fresh_cube_vars(ctx, t.cube_vars(), names_of(t, tw));
  OpenedExt e = open_ext(tw, vs);
  Term body = subst_points(t.arg(0), t.cube_vars(), as_points(vs));
  Context c1 = ctx.with_cube(vs, e.psi);
  check(c1, body, e.family);
  if (e.phi.kind() == tope::TopeKind::kBot) return;
  for (const auto& clause : tope::dnf_clauses(c1.cube(), e.phi)) {
    Context cc = c1.restricted(clause);
    if (!cc.consistent()) continue;
    if (!conv(cc, body, e.boundary, e.family))
      fail(ErrorClass::kBoundaryMismatch,
           fmt::format("boundary mismatch at {}: expected {}, found {}", tope::to_string(clause),
                       show(normalize(cc, e.boundary, e.family)),
                       show(normalize(cc, body, e.family))));
  }
}

void check_impl(const Context& ctx, const Term& t, const Term& type) {
  if (!ctx.consistent()) return;
  switch (t.kind()) {
    case TermKind::kLam: {
      Term tw = whnf(ctx, type);
      if (!tw.is(TermKind::kPi))
        fail(ErrorClass::kTypeMismatch, fmt::format("a function cannot have type {}", show(tw)));
      auto [z, body] = open_binder(ctx, t.name(), t.arg(0), tw.free_names());
      Term cod = subst_var(tw.arg(1), tw.name(), var(z));
      check(ctx.with_var(z, tw.arg(0)), body, cod);
      return;
    }
    case TermKind::kPair: {
      Term tw = whnf(ctx, type);
      if (!tw.is(TermKind::kSigma))
        fail(ErrorClass::kTypeMismatch, fmt::format("a pair cannot have type {}", show(tw)));
      check(ctx, t.arg(0), tw.arg(0));
      check(ctx, t.arg(1), subst_var(tw.arg(1), tw.name(), t.arg(0)));
      return;
    }
    case TermKind::kRefl: {
      Term tw = whnf(ctx, type);
      if (!tw.is(TermKind::kId))
        fail(ErrorClass::kTypeMismatch, fmt::format("refl cannot have type {}", show(tw)));
      if (!conv(ctx, tw.arg(1), tw.arg(2), tw.arg(0)))
        fail(ErrorClass::kTypeMismatch,
             fmt::format("refl needs equal endpoints, but {} and {} differ",
                         show(normalize(ctx, tw.arg(1), tw.arg(0))),
                         show(normalize(ctx, tw.arg(2), tw.arg(0)))));
      return;
    }
    case TermKind::kExtLam: {
      Term tw = whnf(ctx, type);
      if (!tw.is(TermKind::kExt))
        fail(ErrorClass::kTypeMismatch,
             fmt::format("an extension lambda cannot have type {}", show(tw)));
      check_ext_lam(ctx, t, tw);
      return;
    }
    case TermKind::kCase:
      check_case(ctx, t, type);
      return;
    default: {
      Term inferred = infer(ctx, t);
      if (!conv(ctx, inferred, type, universe()))
        fail(ErrorClass::kTypeMismatch, fmt::format("{} has type {} but {} was expected", show(t),
                                                    show(inferred), show(type)));
      return;
    }
  }
}

}  // namespace

Term infer(const Context& ctx, const Term& t) {
  return with_position(t, [&] { return infer_impl(ctx, t); });
}

void check(const Context& ctx, const Term& t, const Term& type) {
  with_position(t, [&] { check_impl(ctx, t, type); });
}

void check_type(const Context& ctx, const Term& type) { check(ctx, type, universe()); }

// ---------------------------------------------------------------------------
// Normalization

Term normalize(const Context& ctx, const Term& t, const Term& type) {
  Term w = whnf(ctx, t);
  Term tw = type ? whnf(ctx, type) : Term();
  auto norm_u = [&](const Context& c, const Term& x) { return normalize(c, x, universe()); };

  if (tw) {
    if (tw.is(TermKind::kPi) && w.is(TermKind::kLam)) {
      auto [z, body] = open_binder(ctx, w.name(), w.arg(0), tw.free_names());
      Term cod = subst_var(tw.arg(1), tw.name(), var(z));
      return lam(z, normalize(ctx.with_var(z, tw.arg(0)), body, cod));
    }
    if (tw.is(TermKind::kSigma) && w.is(TermKind::kPair)) {
      Term a = normalize(ctx, w.arg(0), tw.arg(0));
      return pair(a, normalize(ctx, w.arg(1), subst_var(tw.arg(1), tw.name(), w.arg(0))));
    }
    if (tw.is(TermKind::kExt) && w.is(TermKind::kExtLam) &&
        tw.cube_vars().size() == w.cube_vars().size()) {
      auto vs = fresh_cube_vars(ctx, w.cube_vars(), names_of(w, tw));
      OpenedExt e = open_ext(tw, vs);
      Term body = subst_points(w.arg(0), w.cube_vars(), as_points(vs));
      return ext_lam(vs, normalize(ctx.with_cube(vs, e.psi), body, e.family));
    }
  }

  switch (w.kind()) {
    case TermKind::kPi:
    case TermKind::kSigma: {
      Term dom = norm_u(ctx, w.arg(0));
      auto [z, body] = open_binder(ctx, w.name(), w.arg(1));
      Term cod = norm_u(ctx.with_var(z, w.arg(0)), body);
      return w.is(TermKind::kPi) ? pi(z, dom, cod) : sigma(z, dom, cod);
    }
    case TermKind::kLam: {
      auto [z, body] = open_binder(ctx, w.name(), w.arg(0));
      return lam(z, normalize(ctx.with_var(z, Term()), body));
    }
    case TermKind::kPair: {
      Term ta = tw && tw.is(TermKind::kSigma) ? tw.arg(0) : Term();
      return pair(normalize(ctx, w.arg(0), ta), normalize(ctx, w.arg(1)));
    }
    case TermKind::kId:
      return id_type(norm_u(ctx, w.arg(0)), normalize(ctx, w.arg(1), w.arg(0)),
                     normalize(ctx, w.arg(2), w.arg(0)));
    case TermKind::kExt: {
      auto vs = fresh_cube_vars(ctx, w.cube_vars(), names_of(w));
      OpenedExt e = open_ext(w, vs);
      Context cpsi = ctx.with_cube(vs, e.psi);
      Term family = norm_u(cpsi, e.family);
      Context cphi = cpsi.restricted(e.phi);
      Term boundary = cphi.consistent() ? normalize(cphi, e.boundary, e.family) : e.boundary;
      return ext(vs, e.psi, e.phi, family, boundary);
    }
    case TermKind::kExtLam: {
      auto vs = fresh_cube_vars(ctx, w.cube_vars(), names_of(w));
      Term body = subst_points(w.arg(0), w.cube_vars(), as_points(vs));
      return ext_lam(vs, normalize(ctx.with_cube(vs, Tope::top()), body));
    }
    case TermKind::kApp: {
      Term ft = synth(ctx, w.arg(0));
      Term fw = ft ? whnf(ctx, ft) : Term();
      Term dom = fw && fw.is(TermKind::kPi) ? fw.arg(0) : Term();
      return app(normalize(ctx, w.arg(0)), normalize(ctx, w.arg(1), dom));
    }
    case TermKind::kFst: return fst(normalize(ctx, w.arg(0)));
    case TermKind::kSnd: return snd(normalize(ctx, w.arg(0)));
    case TermKind::kJ: {
      std::vector<Term> args;
      for (const auto& a : w.args()) args.push_back(normalize(ctx, a));
      return with_args(w, std::move(args));
    }
    case TermKind::kExtApp: return ext_app(normalize(ctx, w.arg(0)), w.points());
    case TermKind::kCase: {
      std::vector<Term> branches;
      for (std::size_t i = 0; i < w.args().size(); ++i) {
        Context ci = ctx.restricted(w.topes()[i]);
        branches.push_back(ci.consistent() ? normalize(ci, w.arg(i), type) : w.arg(i));
      }
      return cases(w.topes(), std::move(branches));
    }
    default: return w;
  }
}

}  // namespace sstt::kernel
