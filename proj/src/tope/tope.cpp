#include "sstt/tope/tope.h"

#include <fmt/format.h>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>

namespace sstt::tope {

std::string IntervalTerm::str() const {
  switch (kind_) {
    case Kind::kZero: return "0";
    case Kind::kOne: return "1";
    case Kind::kVar: return name_;
  }
  return name_;
}

struct Tope::Node {
  TopeKind kind = TopeKind::kTop;
  Tope lhs_tope;
  Tope rhs_tope;
  IntervalTerm left = IntervalTerm::zero();
  IntervalTerm right = IntervalTerm::zero();

  Node() : lhs_tope(nullptr), rhs_tope(nullptr) {}
};

Tope::Tope() : Tope(top()) {}

Tope Tope::top() {
  static const Tope kTopTope = [] {
    auto n = std::make_shared<Node>();
    n->kind = TopeKind::kTop;
    return Tope(std::shared_ptr<const Node>(std::move(n)));
  }();
  return kTopTope;
}

Tope Tope::bot() {
  static const Tope kBotTope = [] {
    auto n = std::make_shared<Node>();
    n->kind = TopeKind::kBot;
    return Tope(std::shared_ptr<const Node>(std::move(n)));
  }();
  return kBotTope;
}

Tope Tope::le(IntervalTerm lhs, IntervalTerm rhs) {
  auto n = std::make_shared<Node>();
  n->kind = TopeKind::kLe;
  n->left = std::move(lhs);
  n->right = std::move(rhs);
  return Tope(std::shared_ptr<const Node>(std::move(n)));
}

Tope Tope::eq(IntervalTerm lhs, IntervalTerm rhs) {
  auto n = std::make_shared<Node>();
  n->kind = TopeKind::kEq;
  n->left = std::move(lhs);
  n->right = std::move(rhs);
  return Tope(std::shared_ptr<const Node>(std::move(n)));
}

Tope Tope::make_and(Tope lhs, Tope rhs) {
  auto n = std::make_shared<Node>();
  n->kind = TopeKind::kAnd;
  n->lhs_tope = std::move(lhs);
  n->rhs_tope = std::move(rhs);
  return Tope(std::shared_ptr<const Node>(std::move(n)));
}

Tope Tope::make_or(Tope lhs, Tope rhs) {
  auto n = std::make_shared<Node>();
  n->kind = TopeKind::kOr;
  n->lhs_tope = std::move(lhs);
  n->rhs_tope = std::move(rhs);
  return Tope(std::shared_ptr<const Node>(std::move(n)));
}

TopeKind Tope::kind() const { return node_->kind; }
const Tope& Tope::lhs() const { return node_->lhs_tope; }
const Tope& Tope::rhs() const { return node_->rhs_tope; }
const IntervalTerm& Tope::left() const { return node_->left; }
const IntervalTerm& Tope::right() const { return node_->right; }

std::size_t Tope::atom_count() const {
  switch (kind()) {
    case TopeKind::kTop:
    case TopeKind::kBot: return 0;
    case TopeKind::kLe:
    case TopeKind::kEq: return 1;
    case TopeKind::kAnd:
    case TopeKind::kOr: return lhs().atom_count() + rhs().atom_count();
  }
  return 0;
}

bool operator==(const Tope& a, const Tope& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case TopeKind::kTop:
    case TopeKind::kBot: return true;
    case TopeKind::kLe:
    case TopeKind::kEq: return a.left() == b.left() && a.right() == b.right();
    case TopeKind::kAnd:
    case TopeKind::kOr: return a.lhs() == b.lhs() && a.rhs() == b.rhs();
  }
  return false;
}

Tope operator&&(const Tope& a, const Tope& b) {
  if (a.kind() == TopeKind::kTop) return b;
  if (b.kind() == TopeKind::kTop) return a;
  if (a.kind() == TopeKind::kBot || b.kind() == TopeKind::kBot) return Tope::bot();
  return Tope::make_and(a, b);
}

Tope operator||(const Tope& a, const Tope& b) {
  if (a.kind() == TopeKind::kBot) return b;
  if (b.kind() == TopeKind::kBot) return a;
  if (a.kind() == TopeKind::kTop || b.kind() == TopeKind::kTop) return Tope::top();
  return Tope::make_or(a, b);
}

Tope conj(const std::vector<Tope>& parts) {
  Tope out = Tope::top();
  for (const auto& p : parts) out = out && p;
  return out;
}

Tope disj(const std::vector<Tope>& parts) {
  Tope out = Tope::bot();
  for (const auto& p : parts) out = out || p;
  return out;
}

// ---------------------------------------------------------------------------
// Cube contexts, scope, substitution

CubeContext::CubeContext(std::initializer_list<std::string> vars) {
  for (const auto& v : vars) push(v);
}

CubeContext::CubeContext(std::vector<std::string> vars) {
  for (const auto& v : vars) push(v);
}

void CubeContext::push(const std::string& name) {
  if (contains(name)) throw ScopeError(fmt::format("duplicate cube variable '{}'", name));
  vars_.push_back(name);
}

bool CubeContext::contains(const std::string& name) const {
  return std::find(vars_.begin(), vars_.end(), name) != vars_.end();
}

CubeContext CubeContext::extended(const std::vector<std::string>& more) const {
  CubeContext out = *this;
  for (const auto& v : more) out.push(v);
  return out;
}

namespace {

void collect_vars(const Tope& t, std::set<std::string>& out) {
  switch (t.kind()) {
    case TopeKind::kTop:
    case TopeKind::kBot: return;
    case TopeKind::kLe:
    case TopeKind::kEq:
      if (t.left().is_var()) out.insert(t.left().name());
      if (t.right().is_var()) out.insert(t.right().name());
      return;
    case TopeKind::kAnd:
    case TopeKind::kOr:
      collect_vars(t.lhs(), out);
      collect_vars(t.rhs(), out);
      return;
  }
}

}  // namespace

std::set<std::string> free_vars(const Tope& t) {
  std::set<std::string> out;
  collect_vars(t, out);
  return out;
}

void check_scope(const CubeContext& ctx, const IntervalTerm& p) {
  if (p.is_var() && !ctx.contains(p.name()))
    throw ScopeError(fmt::format("cube variable '{}' is not in scope", p.name()));
}

void check_scope(const CubeContext& ctx, const Tope& t) {
  switch (t.kind()) {
    case TopeKind::kTop:
    case TopeKind::kBot: return;
    case TopeKind::kLe:
    case TopeKind::kEq:
      check_scope(ctx, t.left());
      check_scope(ctx, t.right());
      return;
    case TopeKind::kAnd:
    case TopeKind::kOr:
      check_scope(ctx, t.lhs());
      check_scope(ctx, t.rhs());
      return;
  }
}

IntervalTerm substitute(const IntervalTerm& p, const std::map<std::string, IntervalTerm>& sub) {
  if (!p.is_var()) return p;
  auto it = sub.find(p.name());
  return it == sub.end() ? p : it->second;
}

Tope substitute(const Tope& t, const std::map<std::string, IntervalTerm>& sub) {
  switch (t.kind()) {
    case TopeKind::kTop:
    case TopeKind::kBot: return t;
    case TopeKind::kLe: return Tope::le(substitute(t.left(), sub), substitute(t.right(), sub));
    case TopeKind::kEq: return Tope::eq(substitute(t.left(), sub), substitute(t.right(), sub));
    case TopeKind::kAnd:
      return Tope::make_and(substitute(t.lhs(), sub), substitute(t.rhs(), sub));
    case TopeKind::kOr:
      return Tope::make_or(substitute(t.lhs(), sub), substitute(t.rhs(), sub));
  }
  return t;
}

// ---------------------------------------------------------------------------
// Disjunctive normal form

namespace {

struct Atom {
  TopeKind rel;  // kEq or kLe
  IntervalTerm lhs;
  IntervalTerm rhs;

  friend bool operator==(const Atom&, const Atom&) = default;
};

// Canonical order: == before <=, then lexicographic on printed operands.
bool atom_less(const Atom& a, const Atom& b) {
  if (a.rel != b.rel) return a.rel == TopeKind::kEq;
  std::string al = a.lhs.str(), bl = b.lhs.str();
  if (al != bl) return al < bl;
  return a.rhs.str() < b.rhs.str();
}

using Clause = std::vector<Atom>;

bool clause_less(const Clause& a, const Clause& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), atom_less);
}

enum class AtomTruth { kTrivial, kFalse, kOpen };

// Normalizes orientation and classifies syntactically decided atoms.
AtomTruth canonicalize(Atom& a) {
  using K = IntervalTerm::Kind;
  if (a.lhs == a.rhs) return AtomTruth::kTrivial;
  if (a.rel == TopeKind::kLe) {
    if (a.lhs.kind() == K::kZero || a.rhs.kind() == K::kOne) return AtomTruth::kTrivial;
    if (a.lhs.kind() == K::kOne && a.rhs.kind() == K::kZero) return AtomTruth::kFalse;
    // x <= 0 is x == 0; 1 <= x is x == 1.
    if (a.rhs.kind() == K::kZero || a.lhs.kind() == K::kOne) a.rel = TopeKind::kEq;
  }
  if (a.rel == TopeKind::kEq) {
    if (a.lhs.is_const() && a.rhs.is_const()) return AtomTruth::kFalse;
    if (a.rhs < a.lhs) std::swap(a.lhs, a.rhs);
  }
  return AtomTruth::kOpen;
}

using ClauseSet = std::vector<Clause>;

void check_clause_budget(std::size_t n) {
  if (n > kMaxBranches)
    throw ResourceError(fmt::format("disjunctive normal form exceeds {} clauses", kMaxBranches));
}

ClauseSet raw_dnf(const Tope& t) {
  switch (t.kind()) {
    case TopeKind::kTop: return {Clause{}};
    case TopeKind::kBot: return {};
    case TopeKind::kLe:
    case TopeKind::kEq: {
      Atom a{t.kind(), t.left(), t.right()};
      switch (canonicalize(a)) {
        case AtomTruth::kTrivial: return {Clause{}};
        case AtomTruth::kFalse: return {};
        case AtomTruth::kOpen: return {Clause{a}};
      }
      return {};
    }
    case TopeKind::kOr: {
      ClauseSet out = raw_dnf(t.lhs());
      ClauseSet rhs = raw_dnf(t.rhs());
      out.insert(out.end(), rhs.begin(), rhs.end());
      check_clause_budget(out.size());
      return out;
    }
    case TopeKind::kAnd: {
      ClauseSet lhs = raw_dnf(t.lhs());
      if (lhs.empty()) return {};
      ClauseSet rhs = raw_dnf(t.rhs());
      check_clause_budget(lhs.size() * rhs.size());
      ClauseSet out;
      out.reserve(lhs.size() * rhs.size());
      for (const auto& a : lhs)
        for (const auto& b : rhs) {
          Clause c = a;
          c.insert(c.end(), b.begin(), b.end());
          out.push_back(std::move(c));
        }
      return out;
    }
  }
  return {};
}

bool is_subset(const Clause& small, const Clause& big) {
  // Both sorted by atom_less.
  return std::includes(big.begin(), big.end(), small.begin(), small.end(), atom_less);
}

ClauseSet canonical_dnf(const Tope& t) {
  ClauseSet clauses = raw_dnf(t);
  for (auto& c : clauses) {
    std::sort(c.begin(), c.end(), atom_less);
    c.erase(std::unique(c.begin(), c.end()), c.end());
  }
  std::sort(clauses.begin(), clauses.end(), clause_less);
  clauses.erase(std::unique(clauses.begin(), clauses.end()), clauses.end());
  // Absorption: drop any clause that strictly contains another.
  std::stable_sort(clauses.begin(), clauses.end(),
                   [](const Clause& a, const Clause& b) { return a.size() < b.size(); });
  ClauseSet kept;
  for (const auto& c : clauses) {
    bool subsumed = std::any_of(kept.begin(), kept.end(),
                                [&](const Clause& k) { return is_subset(k, c); });
    if (!subsumed) kept.push_back(c);
  }
  std::sort(kept.begin(), kept.end(), clause_less);
  return kept;
}

Tope atom_tope(const Atom& a) {
  return a.rel == TopeKind::kEq ? Tope::eq(a.lhs, a.rhs) : Tope::le(a.lhs, a.rhs);
}

Tope clause_tope(const Clause& c) {
  if (c.empty()) return Tope::top();
  Tope out = atom_tope(c.front());
  for (std::size_t i = 1; i < c.size(); ++i) out = Tope::make_and(out, atom_tope(c[i]));
  return out;
}

}  // namespace

Tope dnf(const CubeContext& ctx, const Tope& t) {
  check_scope(ctx, t);
  ClauseSet clauses = canonical_dnf(t);
  if (clauses.empty()) return Tope::bot();
  Tope out = clause_tope(clauses.front());
  for (std::size_t i = 1; i < clauses.size(); ++i)
    out = Tope::make_or(out, clause_tope(clauses[i]));
  return out;
}

std::vector<Tope> dnf_clauses(const CubeContext& ctx, const Tope& t) {
  check_scope(ctx, t);
  std::vector<Tope> out;
  for (const auto& c : canonical_dnf(t)) out.push_back(clause_tope(c));
  return out;
}

// ---------------------------------------------------------------------------
// Entailment: saturation of the order relation plus case splits on linearity.

namespace {

// Reflexive-transitive closure of <= over a small set of interval terms, kept
// as bit rows: bit j of row i means term i <= term j. Index 0 is the constant
// 0, index 1 the constant 1. Equality is <= in both directions, so classes of
// mutually <=-related terms play the role of a union-find partition.
class OrderClosure {
 public:
  explicit OrderClosure(std::size_t n) : rows_(n, 0) {
    for (std::size_t i = 0; i < n; ++i) {
      set(i, i);
      set(0, i);
      set(i, 1);
    }
  }

  bool le(std::size_t i, std::size_t j) const { return (rows_[i] >> j) & 1U; }
  bool eq(std::size_t i, std::size_t j) const { return le(i, j) && le(j, i); }
  void set(std::size_t i, std::size_t j) { rows_[i] |= std::uint64_t{1} << j; }

  void saturate() {
    const std::size_t n = rows_.size();
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        if (le(i, k)) rows_[i] |= rows_[k];
  }

  bool inconsistent() const { return le(1, 0); }

  std::optional<std::pair<std::size_t, std::size_t>> incomparable_pair() const {
    const std::size_t n = rows_.size();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (!le(i, j) && !le(j, i)) return std::make_pair(i, j);
    return std::nullopt;
  }

 private:
  std::vector<std::uint64_t> rows_;
};

struct IndexedAtom {
  TopeKind rel;
  std::size_t lhs;
  std::size_t rhs;
};

class Indexer {
 public:
  std::size_t index(const IntervalTerm& p) {
    switch (p.kind()) {
      case IntervalTerm::Kind::kZero: return 0;
      case IntervalTerm::Kind::kOne: return 1;
      case IntervalTerm::Kind::kVar: {
        auto [it, inserted] = ids_.emplace(p.name(), ids_.size() + 2);
        if (it->second >= 64)
          throw ResourceError("entailment supports at most 62 interval variables");
        return it->second;
      }
    }
    return 0;
  }
  std::size_t size() const { return ids_.size() + 2; }

 private:
  std::map<std::string, std::size_t> ids_;
};

std::vector<IndexedAtom> index_clause(const Clause& c, Indexer& ix) {
  std::vector<IndexedAtom> out;
  for (const auto& a : c) out.push_back({a.rel, ix.index(a.lhs), ix.index(a.rhs)});
  return out;
}

bool holds(const OrderClosure& cl, const IndexedAtom& a) {
  return a.rel == TopeKind::kEq ? cl.eq(a.lhs, a.rhs) : cl.le(a.lhs, a.rhs);
}

bool goal_holds(const OrderClosure& cl, const std::vector<std::vector<IndexedAtom>>& goal) {
  return std::any_of(goal.begin(), goal.end(), [&](const auto& clause) {
    return std::all_of(clause.begin(), clause.end(),
                       [&](const IndexedAtom& a) { return holds(cl, a); });
  });
}

class BranchSearch {
 public:
  explicit BranchSearch(const std::vector<std::vector<IndexedAtom>>& goal) : goal_(goal) {}

  bool all_branches_entail(OrderClosure cl) {
    if (++visited_ > kMaxBranches)
      throw ResourceError(fmt::format("tope entailment exceeds {} branches", kMaxBranches));
    cl.saturate();
    if (cl.inconsistent()) return true;
    if (goal_holds(cl, goal_)) return true;
    auto pair = cl.incomparable_pair();
    if (!pair) return false;
    auto [i, j] = *pair;
    OrderClosure left = cl;
    left.set(i, j);
    if (!all_branches_entail(left)) return false;
    OrderClosure right = cl;
    right.set(j, i);
    return all_branches_entail(right);
  }

 private:
  const std::vector<std::vector<IndexedAtom>>& goal_;
  std::size_t visited_ = 0;
};

}  // namespace

bool entails(const CubeContext& ctx, const Tope& hyp, const Tope& goal) {
  check_scope(ctx, hyp);
  check_scope(ctx, goal);
  ClauseSet hyp_clauses = canonical_dnf(hyp);
  ClauseSet goal_clauses = canonical_dnf(goal);
  for (const auto& clause : hyp_clauses) {
    Indexer ix;
    auto hyp_atoms = index_clause(clause, ix);
    std::vector<std::vector<IndexedAtom>> goal_atoms;
    for (const auto& g : goal_clauses) goal_atoms.push_back(index_clause(g, ix));
    OrderClosure cl(ix.size());
    for (const auto& a : hyp_atoms) {
      cl.set(a.lhs, a.rhs);
      if (a.rel == TopeKind::kEq) cl.set(a.rhs, a.lhs);
    }
    BranchSearch search(goal_atoms);
    if (!search.all_branches_entail(cl)) return false;
  }
  return true;
}

bool equiv(const CubeContext& ctx, const Tope& a, const Tope& b) {
  return entails(ctx, a, b) && entails(ctx, b, a);
}

bool satisfiable(const CubeContext& ctx, const Tope& t) {
  return !entails(ctx, t, Tope::bot());
}

// ---------------------------------------------------------------------------
// Printing

namespace {

std::string atom_string(const Tope& t) {
  return fmt::format("{}{}{}", t.left().str(), t.kind() == TopeKind::kLe ? "<=" : "==",
                     t.right().str());
}

std::string render(const Tope& t);

// Operands that are connectives get parentheses unless they are the left
// operand of the same (left-associative) connective.
std::string render_operand(const Tope& parent, const Tope& child, bool is_left) {
  bool compound = child.kind() == TopeKind::kAnd || child.kind() == TopeKind::kOr;
  bool bare = !compound || (is_left && child.kind() == parent.kind());
  std::string s = render(child);
  return bare ? s : "(" + s + ")";
}

std::string render(const Tope& t) {
  switch (t.kind()) {
    case TopeKind::kTop: return "TOP";
    case TopeKind::kBot: return "BOT";
    case TopeKind::kLe:
    case TopeKind::kEq: return atom_string(t);
    case TopeKind::kAnd:
    case TopeKind::kOr:
      return fmt::format("{} {} {}", render_operand(t, t.lhs(), true),
                         t.kind() == TopeKind::kAnd ? "/\\" : "\\/",
                         render_operand(t, t.rhs(), false));
  }
  return {};
}

}  // namespace

std::string to_string(const Tope& t) { return render(t); }

std::string to_string_grouped(const Tope& t) {
  if (t.kind() != TopeKind::kOr) return render(t);
  return fmt::format("({}) \\/ ({})", render(t.lhs()), render(t.rhs()));
}

}  // namespace sstt::tope
