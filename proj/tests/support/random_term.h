#pragma once

#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace sstt::testing {

// Random well-typed surface declarations over a fixed set of parameters.
// Types are built from A, B, arrows, products, identity types at A and
// extension types over the unit interval (the parameter f has a boundary, so
// its type is never generated as a goal); terms are generated against them
// in introduction/elimination normal form.
class RandomTerms {
 public:
  explicit RandomTerms(std::uint64_t seed) : rng_(seed) {}

  // `def NAME PARAMS : TYPE := TERM ;`
  std::string declaration(const std::string& name, int depth = 3) {
    fresh_ = 0;
    TyPtr ty = type(depth);
    std::vector<Local> ctx = params();
    return "def " + name + " " + kParams + " : " + show(ty) + " := " + term(ty, ctx, {}, depth + 2) +
           " ;";
  }

 private:
  enum class Kind { kA, kB, kArrow, kProd, kIdA, kExt, kArrowA };
  struct Ty;
  using TyPtr = std::shared_ptr<const Ty>;
  struct Ty {
    Kind kind;
    TyPtr l, r;
  };
  struct Local {
    std::string name;
    TyPtr type;
  };

  static inline const std::string kParams =
      "(A B : U) (a : A) (b : B) (g : A -> B) (p : A * B) "
      "(f : <{t | TOP} -> A [ t==0 |-> a , t==1 |-> a ]>)";

  static TyPtr mk(Kind k, TyPtr l = nullptr, TyPtr r = nullptr) {
    return std::make_shared<const Ty>(Ty{k, std::move(l), std::move(r)});
  }

  static bool same(const TyPtr& x, const TyPtr& y) {
    if (x->kind != y->kind) return false;
    if (x->l && !same(x->l, y->l)) return false;
    if (x->r && !same(x->r, y->r)) return false;
    return true;
  }

  static std::vector<Local> params() {
    TyPtr a = mk(Kind::kA), b = mk(Kind::kB);
    return {{"a", a}, {"b", b}, {"g", mk(Kind::kArrow, a, b)}, {"p", mk(Kind::kProd, a, b)},
            {"f", mk(Kind::kArrowA, a)}};
  }

  static bool compound(const TyPtr& t) { return t->kind == Kind::kArrow || t->kind == Kind::kProd; }

  static std::string show(const TyPtr& t) {
    switch (t->kind) {
      case Kind::kA: return "A";
      case Kind::kB: return "B";
      case Kind::kIdA: return "Id A a a";
      case Kind::kArrow: {
        std::string dom = show(t->l);
        if (compound(t->l)) dom = "(" + dom + ")";
        return dom + " -> " + show(t->r);
      }
      case Kind::kProd: {
        std::string l = show(t->l), r = show(t->r);
        if (compound(t->l) || t->l->kind == Kind::kIdA) l = "(" + l + ")";
        if (compound(t->r) || t->r->kind == Kind::kIdA) r = "(" + r + ")";
        return l + " * " + r;
      }
      case Kind::kExt: return "<{u | TOP} -> " + show(t->l) + ">";
      case Kind::kArrowA: return "<{t | TOP} -> A [ t==0 |-> a , t==1 |-> a ]>";
    }
    return "?";
  }

  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

  TyPtr type(int depth) {
    int k = depth == 0 ? pick(3) : pick(7);
    switch (k) {
      case 0: return mk(Kind::kA);
      case 1: return mk(Kind::kB);
      case 2: return mk(Kind::kIdA);
      case 3:
      case 4: return mk(Kind::kArrow, type(depth - 1), type(depth - 1));
      case 5: return mk(Kind::kProd, type(depth - 1), type(depth - 1));
      default: return mk(Kind::kExt, type(depth - 1));
    }
  }

  static std::string atomic(const std::string& s) {
    bool simple = s.find_first_of(" (),.") == std::string::npos;
    return simple ? s : "(" + s + ")";
  }

  // Eliminates `head : have` towards `want`, or nothing if no spine reaches it.
  std::optional<std::string> eliminate(const std::string& head, const TyPtr& have, const TyPtr& want,
                                       const std::vector<Local>& ctx,
                                       const std::vector<std::string>& cube, int depth) {
    if (same(have, want)) return head;
    if (depth <= 0) return std::nullopt;
    switch (have->kind) {
      case Kind::kArrow:
        return eliminate(head + " " + atomic(term(have->l, ctx, cube, depth - 1)), have->r, want, ctx,
                         cube, depth - 1);
      case Kind::kProd: {
        bool first = pick(2) == 0;
        return eliminate(atomic(head) + (first ? ".1" : ".2"), first ? have->l : have->r, want, ctx,
                         cube, depth - 1);
      }
      case Kind::kExt:
      case Kind::kArrowA: {
        std::string pt = cube.empty() || pick(3) == 0 ? (pick(2) ? "1" : "0") : cube[pick(cube.size())];
        return eliminate(atomic(head) + " @ (" + pt + ")", have->l, want, ctx, cube, depth - 1);
      }
      default: return std::nullopt;
    }
  }

  std::string term(const TyPtr& ty, const std::vector<Local>& ctx,
                   const std::vector<std::string>& cube, int depth) {
    // Try a neutral first, most recent binders preferred.
    if (pick(3) != 0) {
      for (std::size_t tries = 0; tries < 3; ++tries) {
        const Local& l = ctx[ctx.size() - 1 - pick(std::min<int>(ctx.size(), 4 + tries))];
        if (auto e = eliminate(l.name, l.type, ty, ctx, cube, depth)) return *e;
      }
    }
    switch (ty->kind) {
      case Kind::kA: return pick(2) ? "a" : "f @ (" + (cube.empty() ? std::string("0") : cube.back()) + ")";
      case Kind::kB: return pick(2) ? "b" : "g " + atomic(term(mk(Kind::kA), ctx, cube, depth - 1));
      case Kind::kIdA: return "refl";
      case Kind::kArrow: {
        std::string x = "x" + std::to_string(fresh_++);
        std::vector<Local> inner = ctx;
        inner.push_back({x, ty->l});
        return "\\" + x + ". " + term(ty->r, inner, cube, depth - 1);
      }
      case Kind::kProd:
        return "(" + term(ty->l, ctx, cube, depth - 1) + ", " + term(ty->r, ctx, cube, depth - 1) + ")";
      case Kind::kArrowA: return "f";
      case Kind::kExt: {
        std::string t = "i" + std::to_string(fresh_++);
        std::vector<std::string> inner = cube;
        inner.push_back(t);
        return "\\{" + t + "}. " + term(ty->l, ctx, inner, depth - 1);
      }
    }
    return "?";
  }

  std::mt19937_64 rng_;
  int fresh_ = 0;
};

}  // namespace sstt::testing
