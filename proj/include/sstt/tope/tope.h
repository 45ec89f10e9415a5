#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

// Tope logic of the directed interval 2: quantifier-free formulas over interval
// terms (variables, 0, 1) built from <=, ==, /\, \/, TOP and BOT.
//
// The theory decided here is that of a total order with distinct endpoints:
//   0 <= x,  x <= 1,  reflexivity, transitivity, antisymmetry,
//   linearity (x <= y \/ y <= x),  not (0 == 1).
namespace sstt::tope {

class ScopeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when case splitting exceeds kMaxBranches.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kMaxBranches = std::size_t{1} << 16;

class IntervalTerm {
 public:
  enum class Kind { kVar, kZero, kOne };

  static IntervalTerm zero() { return IntervalTerm(Kind::kZero, {}); }
  static IntervalTerm one() { return IntervalTerm(Kind::kOne, {}); }
  static IntervalTerm var(std::string name) { return IntervalTerm(Kind::kVar, std::move(name)); }

  Kind kind() const { return kind_; }
  bool is_var() const { return kind_ == Kind::kVar; }
  bool is_const() const { return kind_ != Kind::kVar; }
  // Empty for constants.
  const std::string& name() const { return name_; }

  std::string str() const;

  // Variables (by name) sort before 0, which sorts before 1.
  friend std::strong_ordering operator<=>(const IntervalTerm&, const IntervalTerm&) = default;
  friend bool operator==(const IntervalTerm&, const IntervalTerm&) = default;

 private:
  IntervalTerm(Kind kind, std::string name) : kind_(kind), name_(std::move(name)) {}

  Kind kind_;
  std::string name_;
};

enum class TopeKind { kTop, kBot, kAnd, kOr, kLe, kEq };

// Immutable tope syntax tree with shared structure. Equality is structural;
// semantic equality goes through equiv().
class Tope {
 public:
  // TOP.
  Tope();

  static Tope top();
  static Tope bot();
  static Tope le(IntervalTerm lhs, IntervalTerm rhs);
  static Tope eq(IntervalTerm lhs, IntervalTerm rhs);
  // Raw connectives; no simplification.
  static Tope make_and(Tope lhs, Tope rhs);
  static Tope make_or(Tope lhs, Tope rhs);

  TopeKind kind() const;
  bool is_atom() const { return kind() == TopeKind::kLe || kind() == TopeKind::kEq; }

  // Operands of kAnd / kOr.
  const Tope& lhs() const;
  const Tope& rhs() const;
  // Operands of kLe / kEq.
  const IntervalTerm& left() const;
  const IntervalTerm& right() const;

  // Number of atoms (leaves other than TOP/BOT).
  std::size_t atom_count() const;

  friend bool operator==(const Tope& a, const Tope& b);

 private:
  struct Node;
  explicit Tope(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

// Simplifying connectives: TOP and BOT are units/absorbing elements.
Tope operator&&(const Tope& a, const Tope& b);
Tope operator||(const Tope& a, const Tope& b);
Tope conj(const std::vector<Tope>& parts);
Tope disj(const std::vector<Tope>& parts);

// An ordered list of distinct interval variables.
class CubeContext {
 public:
  CubeContext() = default;
  CubeContext(std::initializer_list<std::string> vars);
  explicit CubeContext(std::vector<std::string> vars);

  // Throws ScopeError on a duplicate name.
  void push(const std::string& name);
  bool contains(const std::string& name) const;
  std::size_t size() const { return vars_.size(); }
  bool empty() const { return vars_.empty(); }
  const std::vector<std::string>& vars() const { return vars_; }
  CubeContext extended(const std::vector<std::string>& more) const;

  friend bool operator==(const CubeContext&, const CubeContext&) = default;

 private:
  std::vector<std::string> vars_;
};

std::set<std::string> free_vars(const Tope& t);
// Throws ScopeError naming the first variable not declared in `ctx`.
void check_scope(const CubeContext& ctx, const Tope& t);
void check_scope(const CubeContext& ctx, const IntervalTerm& p);

IntervalTerm substitute(const IntervalTerm& p, const std::map<std::string, IntervalTerm>& sub);
Tope substitute(const Tope& t, const std::map<std::string, IntervalTerm>& sub);

// Canonical disjunctive normal form. Each clause is a conjunction of atoms in
// the canonical atom order (== before <=, then by printed operands); clauses
// are sorted, deduplicated, and subsumed clauses are dropped. Trivially true
// atoms (x<=x, 0<=x, x<=1, x==x) vanish and trivially false ones (0==1, 1<=0)
// kill their clause. BOT is the empty disjunction, TOP a single empty clause.
Tope dnf(const CubeContext& ctx, const Tope& t);
// The clauses of dnf(ctx, t), each as a conjunction.
std::vector<Tope> dnf_clauses(const CubeContext& ctx, const Tope& t);

bool entails(const CubeContext& ctx, const Tope& hyp, const Tope& goal);
bool equiv(const CubeContext& ctx, const Tope& a, const Tope& b);
bool satisfiable(const CubeContext& ctx, const Tope& t);

// ASCII rendering, e.g. `s<=t /\ (s==0 \/ t==1)`. Parses back to the same tree.
std::string to_string(const Tope& t);
// Like to_string, but a top-level disjunction has each operand parenthesized:
// `(t==0 \/ t==1) \/ (s==0)`.
std::string to_string_grouped(const Tope& t);

}  // namespace sstt::tope
