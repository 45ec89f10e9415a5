#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "sstt/tope/tope.h"

namespace sstt::kernel {

enum class TermKind {
  kVar,
  kConst,     // resolved global (definition or axiom)
  kUniverse,
  kPi,
  kLam,
  kApp,
  kSigma,
  kPair,
  kFst,
  kSnd,
  kId,
  kRefl,
  kJ,
  kExt,       // <{vars | psi} -> A [ phi |-> a ]>
  kExtLam,
  kExtApp,
  kCase,      // tope case split; no branches is the eliminator of BOT
  kRec01,     // surface `rec01 a b`; the elaborator turns it into a kCase
};

// Immutable, shared core term. Term variables and cube variables share one
// namespace, so a binder of either sort can capture the other.
class Term {
 public:
  Term() = default;
  explicit operator bool() const { return node_ != nullptr; }

  TermKind kind() const { return node_->kind; }
  bool is(TermKind k) const { return node_ && node_->kind == k; }

  // Var/Const name, or the binder of Pi/Lam/Sigma.
  const std::string& name() const { return node_->name; }
  const std::vector<Term>& args() const { return node_->args; }
  const Term& arg(std::size_t i) const { return node_->args[i]; }
  // Bound cube variables of Ext/ExtLam.
  const std::vector<std::string>& cube_vars() const { return node_->cube_vars; }
  // Ext: {psi, phi}. Case: the guards.
  const std::vector<tope::Tope>& topes() const { return node_->topes; }
  // ExtApp arguments.
  const std::vector<tope::IntervalTerm>& points() const { return node_->points; }

  // Free term and cube variables, plus the names of referenced constants.
  const std::set<std::string>& free_names() const { return node_->free; }
  bool mentions(const std::string& n) const { return node_->free.count(n) > 0; }

  // Source position of the surface term this came from; 0 when synthesized.
  int line() const { return node_->line; }
  int col() const { return node_->col; }

  struct Node {
    TermKind kind = TermKind::kUniverse;
    std::string name;
    std::vector<Term> args;
    std::vector<std::string> cube_vars;
    std::vector<tope::Tope> topes;
    std::vector<tope::IntervalTerm> points;
    std::set<std::string> free;
    int line = 0;
    int col = 0;
  };

  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  const Node& node() const { return *node_; }
  bool same_node(const Term& o) const { return node_ == o.node_; }

 private:
  std::shared_ptr<const Node> node_;
};

Term var(std::string name);
Term constant(std::string name);
Term universe();
Term pi(std::string x, Term dom, Term cod);
Term arrow(Term dom, Term cod);
Term lam(std::string x, Term body);
Term app(Term f, Term a);
Term apps(Term f, const std::vector<Term>& as);
Term sigma(std::string x, Term fst_type, Term snd_type);
Term pair(Term a, Term b);
Term fst(Term p);
Term snd(Term p);
Term id_type(Term type, Term lhs, Term rhs);
Term refl();
Term j_elim(Term type, Term motive, Term base, Term lhs, Term rhs, Term path);
Term ext(std::vector<std::string> vars, tope::Tope psi, tope::Tope phi, Term family,
         Term boundary);
Term ext_lam(std::vector<std::string> vars, Term body);
Term ext_app(Term f, std::vector<tope::IntervalTerm> points);
Term cases(std::vector<tope::Tope> guards, std::vector<Term> branches);
// The eliminator of BOT: an empty case split.
Term rec_bot();
Term rec01(Term at_zero, Term at_one);

// Same node with its children replaced (binders, topes and points kept).
Term with_args(const Term& t, std::vector<Term> args);

// Copy with a source position attached.
Term at_pos(const Term& t, int line, int col);

// Ext accessors.
inline const tope::Tope& ext_shape(const Term& e) { return e.topes()[0]; }
inline const tope::Tope& ext_subshape(const Term& e) { return e.topes()[1]; }
inline const Term& ext_family(const Term& e) { return e.arg(0); }
inline const Term& ext_boundary(const Term& e) { return e.arg(1); }

// Simultaneous, capture-avoiding substitution of terms for term variables and
// interval terms for cube variables.
struct Subst {
  std::map<std::string, Term> terms;
  std::map<std::string, tope::IntervalTerm> points;

  bool empty() const { return terms.empty() && points.empty(); }
};

Term substitute(const Term& t, const Subst& s);
Term subst_var(const Term& t, const std::string& x, const Term& u);
Term subst_points(const Term& t, const std::vector<std::string>& vars,
                  const std::vector<tope::IntervalTerm>& points);
tope::Tope subst_points(const tope::Tope& t, const std::vector<std::string>& vars,
                        const std::vector<tope::IntervalTerm>& points);

// `base`, or base with a numeric suffix, avoiding `taken`.
std::string fresh_name(const std::string& base, const std::set<std::string>& taken);

bool alpha_equal(const Term& a, const Term& b);

// Number of nodes, for diagnostics and generators.
std::size_t term_size(const Term& t);

}  // namespace sstt::kernel
