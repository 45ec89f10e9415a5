#pragma once

#include <atomic>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sstt/kernel/term.h"
#include "sstt/tope/tope.h"

namespace sstt::kernel {

enum class GlobalKind { kDefinition, kAxiom };

struct Global {
  std::string name;
  GlobalKind kind = GlobalKind::kDefinition;
  Term type;
  Term value;  // null for axioms
};

// Checked global declarations. Grows monotonically while a module is checked.
class Env {
 public:
  void add(Global g);
  const Global* find(const std::string& name) const;
  bool contains(const std::string& name) const { return find(name) != nullptr; }
  const std::vector<std::string>& order() const { return order_; }

  // Names of declarations that failed to check; references to them report a
  // dependency error rather than an undeclared name.
  void mark_failed(const std::string& name) { failed_.insert(name); }
  const std::set<std::string>& failed() const { return failed_; }

 private:
  std::map<std::string, Global> globals_;
  std::vector<std::string> order_;
  std::set<std::string> failed_;
};

struct CheckOptions {
  // Re-decide every tope entailment with the brute-force oracle and fail on
  // disagreement.
  bool oracle_crosscheck = false;
  // Upper bound on reduction steps per declaration.
  std::size_t max_steps = 20'000'000;
};

// Typing context: local telescope (term and cube variables in one namespace),
// the active tope restriction, and the global environment.
class Context {
 public:
  Context(const Env& env, CheckOptions options = {});

  const Env& env() const { return *env_; }
  const CheckOptions& options() const { return options_; }
  const tope::CubeContext& cube() const { return cube_; }
  const tope::Tope& restriction() const { return restriction_; }

  // Adds a term variable; `type` may be null when unknown (normalization
  // under unannotated binders).
  Context with_var(const std::string& name, Term type) const;
  Context with_cube(const std::vector<std::string>& vars, const tope::Tope& extra) const;
  Context restricted(const tope::Tope& extra) const;
  Context with_restriction(const tope::Tope& r) const;

  bool binds(const std::string& name) const;
  bool is_cube_var(const std::string& name) const { return cube_.contains(name); }
  // Type of a local term variable; null if unknown or not a term variable.
  Term type_of(const std::string& name) const;

  // A name not used locally nor globally, based on `base`.
  std::string fresh(const std::string& base, const std::set<std::string>& also_avoid = {}) const;

  // Tope queries under this context's cube; honour the oracle cross-check.
  bool entails(const tope::Tope& hyp, const tope::Tope& goal) const;
  bool holds(const tope::Tope& goal) const { return entails(restriction_, goal); }
  bool consistent() const;
  // Clauses of the restriction's disjunctive normal form.
  const std::vector<tope::Tope>& clauses() const;

  // Reduction fuel, shared by all contexts derived from one root.
  void tick() const;

 private:
  struct Local {
    std::string name;
    Term type;
  };

  void reset_caches();

  const Env* env_;
  CheckOptions options_;
  std::vector<Local> locals_;
  std::set<std::string> names_;
  tope::CubeContext cube_;
  tope::Tope restriction_;
  std::shared_ptr<std::atomic<std::size_t>> steps_;
  mutable std::optional<bool> consistent_;
  mutable std::optional<std::vector<tope::Tope>> clauses_;
};

}  // namespace sstt::kernel
