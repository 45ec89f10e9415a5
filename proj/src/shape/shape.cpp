#include "sstt/shape/shape.h"

#include <fmt/format.h>
#include <fmt/ranges.h>

#include <algorithm>
#include <cctype>
#include <array>
#include <set>

#include "sstt/syntax/lexer.h"
#include "sstt/tope/parse.h"

namespace sstt::shape {

using tope::CubeContext;
using tope::IntervalTerm;
using tope::Tope;

namespace {

IntervalTerm v(const char* name) { return IntervalTerm::var(name); }
const IntervalTerm kZero = IntervalTerm::zero();
const IntervalTerm kOne = IntervalTerm::one();

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

struct NamedShape {
  std::array<std::string_view, 2> names;
  Shape (*make)();
};

Shape delta0() { return {CubeContext{}, Tope::top()}; }
Shape delta1() { return {CubeContext{"t"}, Tope::top()}; }
Shape delta2() { return {CubeContext{"t", "s"}, Tope::le(v("s"), v("t"))}; }
Shape delta3() {
  return {CubeContext{"t", "s", "r"}, Tope::le(v("r"), v("s")) && Tope::le(v("s"), v("t"))};
}
Shape boundary1() {
  return {CubeContext{"t"}, Tope::eq(v("t"), kZero) || Tope::eq(v("t"), kOne)};
}
Shape boundary2() {
  return {CubeContext{"t", "s"},
          Tope::le(v("s"), v("t")) &&
              (Tope::eq(v("s"), kZero) || Tope::eq(v("t"), kOne) || Tope::eq(v("s"), v("t")))};
}
Shape horn21() {
  return {CubeContext{"t", "s"},
          Tope::le(v("s"), v("t")) && (Tope::eq(v("s"), kZero) || Tope::eq(v("t"), kOne))};
}
Shape square() { return {CubeContext{"t", "s"}, Tope::top()}; }

const std::array kShapes = {
    NamedShape{{"Δ0", "Delta0"}, delta0},
    NamedShape{{"Δ1", "Delta1"}, delta1},
    NamedShape{{"Δ2", "Delta2"}, delta2},
    NamedShape{{"Δ3", "Delta3"}, delta3},
    NamedShape{{"∂Δ1", "dDelta1"}, boundary1},
    NamedShape{{"∂Δ2", "dDelta2"}, boundary2},
    NamedShape{{"Λ²₁", "Lambda21"}, horn21},
    NamedShape{{"square", "square"}, square},
};

std::optional<Shape> lookup_shape(std::string_view name) {
  for (const auto& s : kShapes)
    if (s.names[0] == name || s.names[1] == name) return s.make();
  return std::nullopt;
}

ShapeInclusion verified(const CubeContext& cube, const Tope& sub, const Tope& sup) {
  return is_inclusion(cube, sub, sup);
}

std::optional<ShapeInclusion> lookup_inclusion(std::string_view name) {
  CubeContext t{"t"};
  if (name == "i0") return verified(t, Tope::eq(v("t"), kZero), Tope::top());
  if (name == "i1") return verified(t, Tope::eq(v("t"), kOne), Tope::top());
  if (name == "b1") return verified(t, boundary1().tope, Tope::top());
  if (name == "∂Δ2⊂Δ2" || name == "dDelta2<Delta2")
    return verified(boundary2().cube, boundary2().tope, delta2().tope);
  if (name == "Λ²₁⊂Δ2" || name == "Lambda21<Delta2")
    return verified(horn21().cube, horn21().tope, delta2().tope);
  if (name.starts_with("id:")) {
    if (auto s = lookup_shape(name.substr(3))) return verified(s->cube, s->tope, s->tope);
  }
  return std::nullopt;
}

const std::array<std::string_view, 10> kPreferredNames = {"t", "s", "r", "u", "v",
                                                          "w", "x", "y", "z", "q"};

}  // namespace

InclusionResult check_inclusion(const CubeContext& cube, const Tope& sub, const Tope& sup) {
  if (tope::entails(cube, sub, sup))
    return {ShapeInclusion(cube, sub, sup, true), std::nullopt};
  return {std::nullopt, tope::find_countermodel(cube, sub, sup)};
}

ShapeInclusion is_inclusion(const CubeContext& cube, const Tope& sub, const Tope& sup) {
  InclusionResult r = check_inclusion(cube, sub, sup);
  if (r.ok()) return *r.inclusion;
  std::string msg = fmt::format("{} does not entail {}", tope::to_string(sub), tope::to_string(sup));
  if (r.countermodel) msg += fmt::format(" (countermodel: {})", tope::format_countermodel(*r.countermodel));
  throw InclusionError(msg, r.countermodel);
}

Shape standard_shape(std::string_view name) {
  if (auto s = lookup_shape(trim(name))) return *s;
  throw UnknownShapeError(fmt::format("unknown shape '{}'", name));
}

ShapeInclusion standard_inclusion(std::string_view name) {
  if (auto j = lookup_inclusion(trim(name))) return *j;
  throw UnknownShapeError(fmt::format("unknown shape inclusion '{}'", name));
}

std::vector<std::string> standard_shape_names() {
  std::vector<std::string> out;
  for (const auto& s : kShapes) out.emplace_back(s.names[0]);
  return out;
}

std::vector<std::string> standard_inclusion_names() {
  return {"i0", "i1", "b1", "∂Δ2⊂Δ2", "Λ²₁⊂Δ2"};
}

std::map<std::string, IntervalTerm> freshening(const CubeContext& a, const CubeContext& b) {
  std::set<std::string> taken(a.vars().begin(), a.vars().end());
  std::set<std::string> b_names(b.vars().begin(), b.vars().end());
  std::map<std::string, IntervalTerm> sub;
  for (const auto& name : b.vars()) {
    if (!taken.count(name)) {
      taken.insert(name);
      continue;
    }
    auto free = [&](const std::string& c) { return !taken.count(c) && !b_names.count(c); };
    std::string fresh;
    for (auto c : kPreferredNames)
      if (free(std::string(c))) {
        fresh = c;
        break;
      }
    for (int k = 1; fresh.empty(); ++k)
      if (free(name + std::to_string(k))) fresh = name + std::to_string(k);
    taken.insert(fresh);
    sub.emplace(name, IntervalTerm::var(fresh));
  }
  return sub;
}

Shape product(const Shape& a, const Shape& b) {
  auto sub = freshening(a.cube, b.cube);
  CubeContext cube = a.cube;
  for (const auto& name : b.cube.vars()) {
    auto it = sub.find(name);
    cube.push(it == sub.end() ? name : it->second.name());
  }
  return {cube, a.tope && tope::substitute(b.tope, sub)};
}

ShapeInclusion leibniz_tensor(const ShapeInclusion& j, const ShapeInclusion& k) {
  if (!j.verified() || !k.verified())
    throw InclusionError("pushout product of an unverified inclusion", std::nullopt);
  auto ren = freshening(j.cube(), k.cube());
  CubeContext cube = product(j.codomain(), k.codomain()).cube;
  Tope k_sub = tope::substitute(k.sub(), ren);
  Tope k_sup = tope::substitute(k.sup(), ren);
  Tope sub = (j.sub() && k_sup) || (j.sup() && k_sub);
  Tope sup = j.sup() && k_sup;
  return is_inclusion(cube, sub, sup);
}

namespace {

// b's tope with its variables renamed to a's, position by position.
Tope aligned(const Shape& a, const Shape& b) {
  if (a.cube.size() != b.cube.size())
    throw InclusionError(fmt::format("shapes live in cubes of different dimension ({} vs {})",
                                     a.cube.size(), b.cube.size()),
                         std::nullopt);
  std::map<std::string, IntervalTerm> sub;
  for (std::size_t i = 0; i < a.cube.size(); ++i)
    sub.emplace(b.cube.vars()[i], IntervalTerm::var(a.cube.vars()[i]));
  tope::check_scope(b.cube, b.tope);
  return tope::substitute(b.tope, sub);
}

}  // namespace

InclusionResult subseteq(const Shape& a, const Shape& b) {
  return check_inclusion(a.cube, a.tope, aligned(a, b));
}

bool shape_equal(const Shape& a, const Shape& b) {
  return tope::equiv(a.cube, a.tope, aligned(a, b));
}

std::string to_string(const Shape& s) {
  std::vector<std::string> vars;
  for (const auto& name : s.cube.vars()) vars.push_back(name + " : 2");
  return fmt::format("{{{} | {}}}", fmt::join(vars, ", "), tope::to_string(s.tope));
}

std::string to_string(const ShapeInclusion& j) {
  return fmt::format("{} ⊆ {}", to_string(j.domain()), to_string(j.codomain()));
}

Shape parse_shape(std::string_view text) {
  text = trim(text);
  if (auto s = lookup_shape(text)) return *s;
  using syntax::Tok;
  syntax::TokenStream ts(syntax::tokenize(text, "<shape>"));
  if (!ts.at(Tok::kLBrace)) throw UnknownShapeError(fmt::format("unknown shape '{}'", text));
  ts.next();
  Shape out;
  while (!ts.at(Tok::kBar)) {
    const auto& name = ts.expect(Tok::kIdent, "cube variable");
    if (out.cube.contains(name.text))
      throw syntax::SyntaxError(fmt::format("duplicate cube variable '{}'", name.text), name.span);
    out.cube.push(name.text);
    if (ts.accept(Tok::kColon)) {
      const auto& dim = ts.expect(Tok::kNumber, "'2'");
      if (dim.text != "2")
        throw syntax::SyntaxError("cube variables range over 2", dim.span, {"2"});
    }
    ts.accept(Tok::kComma);
  }
  ts.expect(Tok::kBar);
  out.tope = tope::parse_tope(ts);
  ts.expect(Tok::kRBrace);
  ts.expect(Tok::kEnd, "end of shape");
  tope::check_scope(out.cube, out.tope);
  return out;
}

ShapeInclusion parse_inclusion(std::string_view text) {
  text = trim(text);
  if (auto j = lookup_inclusion(text)) return *j;
  // Split at the first inclusion sign outside braces.
  int depth = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == '{') ++depth;
    else if (c == '}') --depth;
    if (depth != 0) continue;
    std::size_t len = 0;
    if (text.substr(i).starts_with("⊆")) len = std::string_view("⊆").size();
    else if (text.substr(i).starts_with("<=")) len = 2;
    if (len == 0) continue;
    Shape a = parse_shape(text.substr(0, i));
    Shape b = parse_shape(text.substr(i + len));
    return is_inclusion(a.cube, a.tope, aligned(a, b));
  }
  throw UnknownShapeError(fmt::format("unknown shape inclusion '{}'", text));
}

}  // namespace sstt::shape
