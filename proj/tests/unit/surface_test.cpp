#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "sstt/kernel/module.h"
#include "sstt/surface/syntax.h"
#include "support/random_term.h"

namespace sstt::surface {
namespace {

std::string read_corpus(const std::string& name) {
  std::ifstream in(std::string(SSTT_TEST_CORPUS_DIR) + "/" + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SurfaceModule parse_ok(const std::string& text) {
  ParseResult r = parse_module(text);
  EXPECT_TRUE(r.errors.empty()) << r.errors.front().message() << " at line "
                                << r.errors.front().span().line;
  return r.module;
}

TEST(Parse, EmptyFileIsEmptyModule) {
  EXPECT_TRUE(parse_ok("").decls.empty());
  EXPECT_TRUE(parse_ok("-- only a comment\n").decls.empty());
}

TEST(Parse, IdentityArrowDeclaration) {
  SurfaceModule m = parse_ok(
      "def idarr (A : U) (x : A) : <{t | TOP} -> A [ t==0 \\/ t==1 |-> rec01 x x ]> := \\{t}. x ;");
  ASSERT_EQ(m.decls.size(), 1u);
  const SurfaceDecl& d = m.decls[0];
  EXPECT_EQ(d.name, "idarr");
  ASSERT_EQ(d.params.size(), 2u);
  EXPECT_EQ(d.params[1].names, std::vector<std::string>{"x"});
  EXPECT_TRUE(d.type.is(kernel::TermKind::kExt));
  EXPECT_TRUE(d.value.is(kernel::TermKind::kExtLam));
}

TEST(Parse, UnicodeAliases) {
  SurfaceModule ascii = parse_ok("def e (A : U) : U := <{t s | s<=t /\\ TOP} -> A> ;");
  SurfaceModule uni = parse_ok("def e (A : U) : U := ⟨{t s | s ≤ t ∧ ⊤} → A⟩ ;");
  EXPECT_TRUE(alpha_equal_module(ascii, uni)) << print_module(uni);
}

TEST(Parse, RecoversAfterSyntaxError) {
  ParseResult r = parse_module(
      "def a : U := U ;\n"
      "def b : U := ( ;\n"
      "def c : U := U ;\n");
  EXPECT_EQ(r.errors.size(), 1u);
  ASSERT_EQ(r.module.decls.size(), 2u);
  EXPECT_EQ(r.module.decls[1].name, "c");
}

TEST(Parse, CubeParametersFollowTermParameters) {
  EXPECT_FALSE(parse_module("def a (t : 2) (A : U) : U := A ;").errors.empty());
}

TEST(Elaborate, CubeParametersBecomeExtension) {
  kernel::Module m = elaborate(parse_ok("def k (A : U) (x : A) (t s : 2) [s<=t] : A := x ;"));
  ASSERT_EQ(m.decls.size(), 1u);
  const kernel::Term& ty = m.decls[0].type;
  ASSERT_TRUE(ty.is(kernel::TermKind::kPi));
  kernel::Term inner = ty.arg(1).arg(1);
  ASSERT_TRUE(inner.is(kernel::TermKind::kExt));
  EXPECT_EQ(inner.cube_vars(), (std::vector<std::string>{"t", "s"}));
}

TEST(Elaborate, Rec01UsesInnermostCubeVariable) {
  kernel::Term t = desugar(parse_term("rec01 x y"), {"t", "s"});
  ASSERT_TRUE(t.is(kernel::TermKind::kCase));
  EXPECT_EQ(tope::to_string(t.topes()[0]), "s==0");
}

TEST(RoundTrip, CorpusFiles) {
  for (const char* file : {"basics.sst", "simplicial.sst", "axioms.sst", "comma.sst", "reladj.sst",
                           "cocart.sst"}) {
    SurfaceModule first = parse_ok(read_corpus(file));
    std::string printed = print_module(first);
    SurfaceModule second = parse_ok(printed);
    EXPECT_TRUE(alpha_equal_module(first, second)) << file;
    EXPECT_EQ(print_module(second), printed) << file;
  }
}

TEST(RoundTrip, RandomWellTypedTerms) {
  testing::RandomTerms gen(20261016);
  kernel::Env env;
  for (int i = 0; i < 500; ++i) {
    std::string text = gen.declaration("r" + std::to_string(i));
    SurfaceModule first = parse_ok(text);
    auto results = kernel::check_module(env, elaborate(first));
    ASSERT_EQ(results.size(), 1u);
    ASSERT_TRUE(results[0].ok) << text << "\n" << results[0].message;
    std::string printed = print_module(first);
    SurfaceModule second = parse_ok(printed);
    EXPECT_TRUE(alpha_equal_module(first, second)) << text << "\n" << printed;
    EXPECT_EQ(print_module(second), printed);
  }
}

}  // namespace
}  // namespace sstt::surface
