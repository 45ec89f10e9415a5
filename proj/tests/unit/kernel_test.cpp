#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "sstt/kernel/check.h"
#include "sstt/kernel/module.h"
#include "sstt/kernel/print.h"
#include "sstt/surface/syntax.h"

namespace sstt::kernel {
namespace {

std::vector<CheckResult> check_text(Env& env, const std::string& text) {
  surface::ParseResult parsed = surface::parse_module(text);
  EXPECT_TRUE(parsed.errors.empty()) << parsed.errors.front().message();
  return check_module(env, surface::elaborate(parsed.module));
}

std::string read_corpus(const std::string& name) {
  std::ifstream in(std::string(SSTT_TEST_CORPUS_DIR) + "/" + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const std::string kPrelude =
    "def hom (A : U) (x y : A) : U := <{t | TOP} -> A [ t==0 |-> x , t==1 |-> y ]> ;\n"
    "def Delta2 (A : U) : U := <{t s | s<=t} -> A> ;\n"
    "def idf (A : U) : A -> A := \\x. x ;\n"
    "def pr (A B : U) (a : A) (b : B) : A * B := (a, b) ;\n";

class KernelTest : public ::testing::Test {
 protected:
  void SetUp() override {
    for (const auto& r : check_text(env_, kPrelude)) ASSERT_TRUE(r.ok) << r.message;
  }

  CheckResult one(const std::string& text) {
    auto rs = check_text(env_, text);
    EXPECT_EQ(rs.size(), 1u);
    return rs.empty() ? CheckResult{} : rs.front();
  }

  void expect_ok(const std::string& text) {
    CheckResult r = one(text);
    EXPECT_TRUE(r.ok) << r.message;
  }

  void expect_error(const std::string& text, ErrorClass cls) {
    CheckResult r = one(text);
    ASSERT_FALSE(r.ok);
    ASSERT_TRUE(r.error_class.has_value());
    EXPECT_EQ(error_class_name(*r.error_class), error_class_name(cls)) << r.message;
  }

  Env env_;
};

TEST_F(KernelTest, IdentityArrowWithCaseBoundary) {
  expect_ok(
      "def idarr (A : U) (x : A) : <{t | TOP} -> A [ t==0 \\/ t==1 |-> rec01 x x ]> := \\{t}. x ;");
}

TEST_F(KernelTest, ConstantArrowFailsAtSource) {
  CheckResult r = one("def c (A : U) (x y : A) : hom A x y := \\{t}. y ;");
  ASSERT_FALSE(r.ok);
  EXPECT_EQ(*r.error_class, ErrorClass::kBoundaryMismatch);
  EXPECT_NE(r.message.find("t==0"), std::string::npos) << r.message;
}

TEST_F(KernelTest, BetaReduces) {
  expect_ok("def b (A : U) (a : A) : Id A (idf A a) a := refl ;");
}

TEST_F(KernelTest, ProjectionOfPairReduces) {
  expect_ok("def p (A B : U) (a : A) (b : B) : Id A ((pr A B a b).1) a := refl ;");
  expect_ok("def q (A B : U) (a : A) (b : B) : Id B ((pr A B a b).2) b := refl ;");
}

TEST_F(KernelTest, JOnReflComputes) {
  expect_ok(
      "def jr (A : U) (a : A) (C : (x y : A) -> Id A x y -> U) (c : (x : A) -> C x x refl)"
      " : Id (C a a refl) (J A C c a a refl) (c a) := refl ;");
}

TEST_F(KernelTest, ArrowEndpointsComputeFromType) {
  expect_ok("def e0 (A : U) (x y : A) (f : hom A x y) : Id A (f @ (0)) x := refl ;");
  expect_ok("def e1 (A : U) (x y : A) (f : hom A x y) : Id A (f @ (1)) y := refl ;");
}

TEST_F(KernelTest, PointsEqualUnderDiagonalAreConvertible) {
  expect_ok(
      "def d (A : U) (x y : A) (f : hom A x y)"
      " : <{t s | TOP} -> A [ t==s |-> f @ (t) ]> := \\{t s}. f @ (s) ;");
  expect_error(
      "def d2 (A : U) (x y : A) (f : hom A x y)"
      " : <{t s | TOP} -> A [ s<=t |-> f @ (t) ]> := \\{t s}. f @ (s) ;",
      ErrorClass::kBoundaryMismatch);
}

TEST_F(KernelTest, PointOutsideShape) {
  expect_error("def o (A : U) (k : Delta2 A) : A := k @ (0, 1) ;", ErrorClass::kShapeMembership);
}

TEST_F(KernelTest, SubshapeMustBeIncluded) {
  expect_error("def n (A : U) (a : A) : U := <{t | t==0} -> A [ t==1 |-> a ]> ;",
               ErrorClass::kNonInclusion);
}

TEST_F(KernelTest, CaseSplitMustCover) {
  expect_error(
      "def cc (A : U) (x y : A) : <{t s | TOP} -> A> := \\{t s}. cases [ s<=t |-> x , t==0 |-> y ] ;",
      ErrorClass::kCaseCoverage);
}

TEST_F(KernelTest, CaseBranchesMustAgreeOnOverlap) {
  expect_error(
      "def ib (A : U) (x y : A) : <{t s | TOP} -> A> := \\{t s}. cases [ s<=t |-> x , t<=s |-> y ] ;",
      ErrorClass::kIncompatibleBoundary);
}

TEST_F(KernelTest, TypeInTypeAndPi) {
  expect_ok("#check U : U ;");
  expect_ok("#check (\\A x. x) : (A : U) -> A -> A ;");
  expect_error("#check (\\A x. A) : (A : U) -> A -> A ;", ErrorClass::kTypeMismatch);
}

TEST_F(KernelTest, UnannotatedLambdaIsNotSynthesizable) {
  CheckResult r = one("def l : U := (\\x. x) U ;");
  ASSERT_FALSE(r.ok);
  EXPECT_EQ(*r.error_class, ErrorClass::kNotSynthesizable);
}

TEST_F(KernelTest, FailedDeclarationsReportDependents) {
  auto rs = check_text(env_,
                       "def bad : U := nope ;\n"
                       "def user : U := bad ;\n");
  ASSERT_EQ(rs.size(), 2u);
  EXPECT_EQ(*rs[0].error_class, ErrorClass::kScope);
  EXPECT_EQ(*rs[1].error_class, ErrorClass::kDependency);
}

TEST(KernelCorpus, NormalizationIsIdempotent) {
  Env env;
  std::size_t checked = 0;
  for (const char* file : {"basics.sst", "simplicial.sst", "axioms.sst", "comma.sst"}) {
    for (const auto& r : check_text(env, read_corpus(file))) {
      ASSERT_TRUE(r.ok) << file << ": " << r.name << ": " << r.message;
      if (!r.value || r.kind != DeclKind::kDef) continue;
      Context ctx(env);
      Term once = normalize(ctx, r.value, r.type);
      Term twice = normalize(ctx, once, r.type);
      EXPECT_TRUE(alpha_equal(once, twice)) << r.name << "\n" << to_string(once) << "\n"
                                            << to_string(twice);
      ++checked;
    }
  }
  EXPECT_GT(checked, 30u);
}

TEST(KernelCorpus, PrinterOutputReparses) {
  Env env;
  check_text(env, read_corpus("basics.sst"));
  for (const auto& r : check_text(env, read_corpus("simplicial.sst"))) {
    ASSERT_TRUE(r.ok) << r.message;
    if (!r.type) continue;
    std::string text = to_string(r.type);
    EXPECT_NO_THROW(surface::parse_term(text)) << text;
  }
}

}  // namespace
}  // namespace sstt::kernel
