#include <gtest/gtest.h>

#include "sstt/shape/shape.h"
#include "sstt/tope/oracle.h"
#include "sstt/tope/parse.h"

namespace sstt::shape {
namespace {

using tope::CubeContext;
using tope::Tope;

Tope P(const char* s) { return tope::parse_tope(s); }

TEST(Standard, Presentations) {
  EXPECT_EQ(to_string(standard_shape("Δ2")), "{t : 2, s : 2 | s<=t}");
  EXPECT_EQ(to_string(standard_shape("Delta3")), "{t : 2, s : 2, r : 2 | r<=s /\\ s<=t}");
  EXPECT_EQ(to_string(standard_shape("∂Δ1")), "{t : 2 | t==0 \\/ t==1}");
  EXPECT_EQ(to_string(standard_shape("Λ²₁")), "{t : 2, s : 2 | s<=t /\\ (s==0 \\/ t==1)}");
  EXPECT_EQ(to_string(standard_shape("Delta0")), "{ | TOP}");
  EXPECT_THROW(standard_shape("Δ7"), UnknownShapeError);
}

TEST(Standard, Inclusions) {
  auto i0 = standard_inclusion("i0");
  EXPECT_TRUE(i0.verified());
  EXPECT_EQ(to_string(i0), "{t : 2 | t==0} ⊆ {t : 2 | TOP}");
  EXPECT_EQ(to_string(standard_inclusion("b1").domain()), "{t : 2 | t==0 \\/ t==1}");
  EXPECT_TRUE(standard_inclusion("Lambda21<Delta2").verified());
  EXPECT_TRUE(standard_inclusion("∂Δ2⊂Δ2").verified());
  auto id = standard_inclusion("id:Δ2");
  EXPECT_EQ(id.sub(), id.sup());
  EXPECT_THROW(standard_inclusion("j"), UnknownShapeError);
}

TEST(Product, Examples) {
  auto d1 = standard_shape("Δ1");
  auto b = standard_shape("∂Δ1");
  EXPECT_EQ(to_string(product(d1, d1)), "{t : 2, s : 2 | TOP}");
  EXPECT_EQ(to_string(product(d1, b)), "{t : 2, s : 2 | s==0 \\/ s==1}");
  Shape corners = product(b, b);
  EXPECT_EQ(to_string(corners), "{t : 2, s : 2 | (t==0 \\/ t==1) /\\ (s==0 \\/ s==1)}");
  // Exactly the four corners: every satisfying chain point is an endpoint.
  EXPECT_TRUE(tope::oracle_entails(corners.cube, corners.tope,
                                   P("(t==0 \\/ t==1) /\\ (s==0 \\/ s==1)")));
  for (const char* c : {"t==0 /\\ s==0", "t==0 /\\ s==1", "t==1 /\\ s==0", "t==1 /\\ s==1"})
    EXPECT_TRUE(tope::satisfiable(corners.cube, corners.tope && P(c))) << c;
}

TEST(Product, FresheningAvoidsCapture) {
  Shape p = product(standard_shape("Δ1"), standard_shape("Δ2"));
  EXPECT_EQ(to_string(p), "{t : 2, r : 2, s : 2 | s<=r}");
  Shape q = product(standard_shape("Δ2"), standard_shape("Δ2"));
  EXPECT_EQ(to_string(q), "{t : 2, s : 2, r : 2, u : 2 | s<=t /\\ u<=r}");
}

TEST(Tensor, Goldens) {
  auto b1 = standard_inclusion("b1");
  auto i0 = standard_inclusion("i0");
  CubeContext ts{"t", "s"};
  struct Case {
    ShapeInclusion j, k;
    const char* expected;
  };
  for (const auto& c : {Case{b1, b1, "(t==0 \\/ t==1) \\/ (s==0 \\/ s==1)"},
                        Case{b1, i0, "(t==0 \\/ t==1) \\/ (s==0)"},
                        Case{i0, i0, "(t==0) \\/ (s==0)"}}) {
    auto r = leibniz_tensor(c.j, c.k);
    EXPECT_TRUE(r.verified());
    EXPECT_EQ(r.cube(), ts);
    EXPECT_EQ(tope::to_string_grouped(r.sub()), c.expected);
    EXPECT_TRUE(tope::equiv(ts, r.sub(), P(c.expected)));
    EXPECT_TRUE(subseteq(r.domain(), standard_shape("square")).ok());
  }
}

TEST(Tensor, IdentityTensorIdentity) {
  auto id = standard_inclusion("id:Δ1");
  auto r = leibniz_tensor(id, id);
  EXPECT_TRUE(tope::equiv(r.cube(), r.sub(), r.sup()));
  auto id2 = standard_inclusion("id:Δ2");
  auto r2 = leibniz_tensor(id2, standard_inclusion("id:∂Δ1"));
  EXPECT_TRUE(tope::equiv(r2.cube(), r2.sub(), r2.sup()));
}

TEST(Tensor, Symmetric) {
  auto a = leibniz_tensor(standard_inclusion("b1"), standard_inclusion("i0"));
  auto b = leibniz_tensor(standard_inclusion("i0"), standard_inclusion("b1"));
  Tope swapped = tope::substitute(
      b.sub(), {{"t", tope::IntervalTerm::var("s")}, {"s", tope::IntervalTerm::var("t")}});
  EXPECT_TRUE(tope::equiv(a.cube(), a.sub(), swapped));
}

TEST(Tensor, EmptySubshape) {
  auto empty = is_inclusion(CubeContext{"t"}, Tope::bot(), Tope::top());
  auto i0 = standard_inclusion("i0");
  auto r = leibniz_tensor(empty, i0);
  // Only the second summand survives: Δ1 × {0}.
  EXPECT_TRUE(tope::equiv(r.cube(), r.sub(), P("s==0")));
}

TEST(Tensor, RejectsUnverified) {
  auto bogus = ShapeInclusion::unverified(CubeContext{"t"}, Tope::top(), P("t==0"));
  EXPECT_THROW(leibniz_tensor(bogus, standard_inclusion("i0")), InclusionError);
}

TEST(Inclusion, ShapeAlgebra) {
  auto horn = standard_shape("Λ²₁");
  auto tri = standard_shape("Δ2");
  auto sq = standard_shape("square");
  EXPECT_TRUE(subseteq(horn, tri).ok());
  EXPECT_TRUE(subseteq(tri, sq).ok());
  auto bad = subseteq(sq, tri);
  ASSERT_FALSE(bad.ok());
  ASSERT_TRUE(bad.countermodel.has_value());
  EXPECT_EQ(tope::format_countermodel(*bad.countermodel), "t=⊥, s=⊤");
  EXPECT_THROW(is_inclusion(sq.cube, sq.tope, tri.tope), InclusionError);
}

TEST(Inclusion, SquareIsTwoTriangles) {
  CubeContext ts{"t", "s"};
  EXPECT_TRUE(tope::equiv(ts, Tope::top(), P("s<=t \\/ t<=s")));
  auto boundary = standard_shape("∂Δ2");
  auto horn = standard_shape("Λ²₁");
  EXPECT_TRUE(tope::equiv(ts, boundary.tope, horn.tope || P("s<=t /\\ s==t")));
}

TEST(Parse, ShapeText) {
  auto s = parse_shape("{t : 2, s : 2 | s <= t}");
  EXPECT_TRUE(shape_equal(s, standard_shape("Δ2")));
  auto u = parse_shape("{a b | b ≤ a}");
  EXPECT_TRUE(shape_equal(u, standard_shape("Δ2")));
  EXPECT_THROW(parse_shape("{t | s <= t}"), tope::ScopeError);
  EXPECT_THROW(parse_shape("{t : 3 | TOP}"), syntax::SyntaxError);
}

TEST(Parse, InclusionText) {
  auto j = parse_inclusion("{t : 2 | t==1} ⊆ Δ1");
  EXPECT_TRUE(j.verified());
  auto k = parse_inclusion("Λ²₁ <= {x y | y <= x}");
  EXPECT_TRUE(k.verified());
  EXPECT_THROW(parse_inclusion("square ⊆ Δ2"), InclusionError);
  EXPECT_THROW(parse_inclusion("Δ1 ⊆ Δ2"), InclusionError);
}

}  // namespace
}  // namespace sstt::shape
