#include "sstt/kernel/context.h"

#include <fmt/format.h>

#include "sstt/kernel/errors.h"
#include "sstt/tope/oracle.h"

namespace sstt::kernel {

void Env::add(Global g) {
  std::string name = g.name;
  if (globals_.emplace(name, std::move(g)).second) order_.push_back(name);
}

const Global* Env::find(const std::string& name) const {
  auto it = globals_.find(name);
  return it == globals_.end() ? nullptr : &it->second;
}

Context::Context(const Env& env, CheckOptions options)
    : env_(&env),
      options_(options),
      restriction_(tope::Tope::top()),
      steps_(std::make_shared<std::atomic<std::size_t>>(0)) {}

Context Context::with_var(const std::string& name, Term type) const {
  Context out = *this;
  out.locals_.push_back({name, std::move(type)});
  out.names_.insert(name);
  return out;
}

Context Context::with_cube(const std::vector<std::string>& vars, const tope::Tope& extra) const {
  Context out = *this;
  for (const auto& v : vars) {
    out.cube_.push(v);
    out.names_.insert(v);
  }
  out.restriction_ = restriction_ && extra;
  if (extra.kind() != tope::TopeKind::kTop) out.reset_caches();
  return out;
}

Context Context::restricted(const tope::Tope& extra) const {
  return with_restriction(restriction_ && extra);
}

Context Context::with_restriction(const tope::Tope& r) const {
  Context out = *this;
  out.restriction_ = r;
  out.reset_caches();
  return out;
}

void Context::reset_caches() {
  consistent_.reset();
  clauses_.reset();
}

bool Context::binds(const std::string& name) const { return names_.count(name) > 0; }

Term Context::type_of(const std::string& name) const {
  for (auto it = locals_.rbegin(); it != locals_.rend(); ++it)
    if (it->name == name) return it->type;
  return Term();
}

std::string Context::fresh(const std::string& base, const std::set<std::string>& also_avoid) const {
  std::set<std::string> taken = names_;
  taken.insert(also_avoid.begin(), also_avoid.end());
  while (true) {
    std::string candidate = fresh_name(base, taken);
    if (!env_->contains(candidate)) return candidate;
    taken.insert(candidate);
  }
}

bool Context::entails(const tope::Tope& hyp, const tope::Tope& goal) const {
  bool verdict;
  try {
    verdict = tope::entails(cube_, hyp, goal);
  } catch (const tope::ScopeError& e) {
    throw KernelError(ErrorClass::kScope, e.what());
  } catch (const tope::ResourceError& e) {
    throw KernelError(ErrorClass::kResource, e.what());
  }
  if (options_.oracle_crosscheck && verdict != tope::oracle_entails(cube_, hyp, goal)) {
    throw KernelError(ErrorClass::kOracleDivergence,
                      fmt::format("solver and oracle disagree on {} => {}", tope::to_string(hyp),
                                  tope::to_string(goal)));
  }
  return verdict;
}

bool Context::consistent() const {
  if (restriction_.kind() == tope::TopeKind::kTop) return true;
  if (!consistent_) consistent_ = !entails(restriction_, tope::Tope::bot());
  return *consistent_;
}

const std::vector<tope::Tope>& Context::clauses() const {
  if (!clauses_) {
    try {
      clauses_ = tope::dnf_clauses(cube_, restriction_);
    } catch (const tope::ResourceError& e) {
      throw KernelError(ErrorClass::kResource, e.what());
    }
  }
  return *clauses_;
}

void Context::tick() const {
  if (++*steps_ > options_.max_steps)
    throw KernelError(ErrorClass::kResource,
                      fmt::format("reduction exceeded {} steps", options_.max_steps));
}

}  // namespace sstt::kernel
