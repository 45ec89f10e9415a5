#include "sstt/kernel/module.h"

#include <fmt/format.h>

#include "sstt/kernel/print.h"

namespace sstt::kernel {

std::string_view decl_kind_name(DeclKind k) {
  switch (k) {
    case DeclKind::kDef: return "def";
    case DeclKind::kAxiom: return "axiom";
    case DeclKind::kCheck: return "check";
    case DeclKind::kEntails: return "entails";
  }
  return "decl";
}

namespace {

void check_entailment(const Context& root, const tope::EntailmentQuery& q) {
  Context ctx = root.with_cube(q.cube.vars(), tope::Tope::top());
  try {
    tope::check_scope(q.cube, q.hyp);
    tope::check_scope(q.cube, q.goal);
  } catch (const tope::ScopeError& e) {
    throw KernelError(ErrorClass::kScope, e.what());
  }
  if (!ctx.entails(q.hyp, q.goal)) {
    auto cm = tope::find_countermodel(q.cube, q.hyp, q.goal);
    throw KernelError(ErrorClass::kEntailmentFailed,
                      fmt::format("{} does not entail {}{}", tope::to_string(q.hyp),
                                  tope::to_string(q.goal),
                                  cm ? " (countermodel: " + tope::format_countermodel(*cm) + ")"
                                     : ""),
                      cm);
  }
}

}  // namespace

std::vector<CheckResult> check_module(Env& env, const Module& m, const CheckOptions& options) {
  std::vector<CheckResult> out;
  std::set<std::string> failed = env.failed();
  for (const auto& d : m.decls) {
    CheckResult r;
    r.name = d.name;
    r.kind = d.kind;
    r.pos = d.pos;
    Context ctx(env, options);
    try {
      bool named = d.kind == DeclKind::kDef || d.kind == DeclKind::kAxiom;
      if (named && (env.contains(d.name) || failed.count(d.name)))
        throw KernelError(ErrorClass::kDuplicateName,
                          fmt::format("'{}' is already declared", d.name));
      if (d.kind == DeclKind::kEntails) {
        check_entailment(ctx, d.query);
      } else {
        Term type = resolve(ctx, d.type, failed);
        check_type(ctx, type);
        r.type = type;
        if (d.value) {
          Term value = resolve(ctx, d.value, failed);
          check(ctx, value, type);
          r.value = value;
        }
        if (named)
          env.add(Global{d.name, d.kind == DeclKind::kDef ? GlobalKind::kDefinition : GlobalKind::kAxiom,
                         type, d.kind == DeclKind::kDef ? r.value : Term()});
      }
      r.ok = true;
    } catch (const KernelError& e) {
      r.ok = false;
      r.error_class = e.error_class();
      r.message = e.what();
      r.countermodel = e.countermodel();
      if (e.has_pos()) {
        r.pos.line = e.line();
        r.pos.col = e.col();
      }
      if (d.kind == DeclKind::kDef || d.kind == DeclKind::kAxiom) {
        failed.insert(d.name);
        env.mark_failed(d.name);
      }
    }
    out.push_back(std::move(r));
  }
  return out;
}

SweepReport boundary_sweep(const Env& env, const std::vector<std::string>& names) {
  SweepReport report;
  for (const auto& name : names) {
    const Global* g = env.find(name);
    if (!g) continue;
    Context ctx(env);
    Term head = constant(name);
    Term type = whnf(ctx, g->type);
    // Peel Pi binders, applying the constant to fresh variables.
    while (type.is(TermKind::kPi)) {
      std::string z = ctx.fresh(type.name());
      ctx = ctx.with_var(z, type.arg(0));
      head = app(head, var(z));
      type = whnf(ctx, subst_var(type.arg(1), type.name(), var(z)));
    }
    if (!type.is(TermKind::kExt)) continue;
    ++report.declarations;
    const auto& vars = type.cube_vars();
    std::size_t n = vars.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
      std::vector<tope::IntervalTerm> pts;
      for (std::size_t i = 0; i < n; ++i)
        pts.push_back((mask >> i) & 1 ? tope::IntervalTerm::one() : tope::IntervalTerm::zero());
      tope::Tope psi = subst_points(ext_shape(type), vars, pts);
      tope::Tope phi = subst_points(ext_subshape(type), vars, pts);
      if (!ctx.holds(psi) || !ctx.holds(phi)) continue;
      ++report.points;
      std::string label = "(";
      for (std::size_t i = 0; i < n; ++i) label += (i ? ", " : "") + pts[i].str();
      label += ")";
      try {
        Term lhs = ext_app(head, pts);
        Term rhs = subst_points(ext_boundary(type), vars, pts);
        Term at = subst_points(ext_family(type), vars, pts);
        if (!def_equal(ctx, lhs, rhs, at))
          report.failures.push_back({name, label,
                                     fmt::format("{} is not {}", to_string(normalize(ctx, lhs, at)),
                                                 to_string(normalize(ctx, rhs, at)))});
      } catch (const KernelError& e) {
        report.failures.push_back({name, label, e.what()});
      }
    }
  }
  return report;
}

}  // namespace sstt::kernel
