#include <gtest/gtest.h>

#include <random>

#include "polysize/checker.h"
#include "polysize/entailment.h"
#include "polysize/types.h"
#include "polysize/underlying.h"
#include "testing.h"

namespace polysize {
namespace {

SizedType T(std::string_view s) { return SizedType::parse(s); }
FirstOrderType F(std::string_view s) { return FirstOrderType::parse(s); }
Polynomial P(std::string_view s) { return Polynomial::parse(s); }

TEST(SizedType, PrintingConventions) {
  EXPECT_EQ(T("L(a,n)").to_string(), "L(a,n)");
  EXPECT_EQ(T("L(L(a,2),n*m)").to_string(), "L(L(a,2), m*n)");
  EXPECT_EQ(T("L(Int, n+1)").to_string(), "L(Int, n + 1)");
  EXPECT_EQ(F("L(a,n) * L(a,m) -> L(a,n+m)").to_string(),
            "L(a,n) * L(a,m) -> L(a, m + n)");
  EXPECT_EQ(F("-> Int").to_string(), "-> Int");
}

TEST(SizedType, ShapeQueries) {
  SizedType t = T("L(L(a,2),n*m)");
  EXPECT_EQ(t.depth(), 2);
  EXPECT_EQ(t.spine_sizes().size(), 2u);
  EXPECT_TRUE(t.leaf().is_var());
  EXPECT_TRUE(t.same_shape(T("L(L(a,1),0)")));
  EXPECT_FALSE(t.same_shape(T("L(a,n)")));
  EXPECT_EQ(t.type_vars(), std::set<std::string>{"a"});
}

TEST(SizedType, ZeroOuterSizeHidesInnerSizes) {
  SizedType t = T("L(L(a,k),0)");
  EXPECT_TRUE(t.free_size_vars().empty());
}

TEST(FirstOrderType, Validation) {
  EXPECT_EQ(validate_first_order_type(F("L(a,n) * L(a,m) -> L(a,n+m)")), "");
  EXPECT_NE(validate_first_order_type(F("L(a,n+1) -> L(a,n)")), "");
  EXPECT_NE(validate_first_order_type(F("L(a,n) -> L(a,m)")), "");
}

TEST(FirstOrderType, TotalityWarningWhenZeroHidesAVariable) {
  EXPECT_TRUE(totality_warnings(F("L(a,n) -> L(a,n)")).empty());
  EXPECT_TRUE(totality_warnings(F("L(a,n) -> L(a,n-1)")).empty());
  // Transpose: at n = 0 the input no longer mentions m.
  EXPECT_FALSE(totality_warnings(F("L(L(a,m),n) -> L(L(a,n),m)")).empty());
}

TEST(Underlying, InfersCorpusShapes) {
  auto types = infer_underlying(testing::corpus_program("cprod"));
  EXPECT_EQ(types.at("append").to_string(), "L(a) * L(a) -> L(a)");
  EXPECT_EQ(types.at("pairs").to_string(), "a * L(a) -> L(L(a))");
  EXPECT_EQ(types.at("cprod").to_string(), "L(a) * L(a) -> L(L(a))");
}

TEST(Underlying, ReportsUnificationFailures) {
  EXPECT_THROW(infer_underlying(parse_program("letfun f(x) = cons(x, x) in")),
               TypeError);
  EXPECT_THROW(infer_underlying(parse_program("letfun f(x) = g(x) in")),
               TypeError);
  EXPECT_THROW(
      infer_underlying(parse_program("letfun f(x) = x + nil in")), TypeError);
}

TEST(Underlying, TemplateNaming) {
  auto types = infer_underlying(testing::corpus_program("cprod"));
  TypeTemplate t = annotate_with_variables(types.at("cprod"));
  EXPECT_EQ(t.type.to_string(), "L(a,n1) * L(a,n2) -> L(L(a,p2),p1)");
  EXPECT_EQ(t.size_vars, (std::vector<std::string>{"n1", "n2"}));
  EXPECT_EQ(t.placeholders, (std::vector<std::string>{"p1", "p2"}));
  TypeTemplate single = annotate_with_variables(types.at("pairs"));
  EXPECT_EQ(single.type.to_string(), "a * L(a,n) -> L(L(a,p2),p1)");
}

TEST(Entailment, Fragment) {
  EXPECT_TRUE(in_fragment(P("n")));
  EXPECT_TRUE(in_fragment(P("n - 3")));
  EXPECT_TRUE(in_fragment(P("2 - n")));
  EXPECT_TRUE(in_fragment(P("0")));
  EXPECT_FALSE(in_fragment(P("n*m")));
  EXPECT_FALSE(in_fragment(P("n - m")));
  EXPECT_FALSE(in_fragment(P("2*n")));
}

TEST(Entailment, Decisions) {
  ConstraintSet none;
  ConstraintSet n0{{P("n")}};
  EXPECT_TRUE(entails_equal(none, P("(n+1)^2"), P("n^2 + 2*n + 1")));
  EXPECT_FALSE(entails_equal(none, P("n*m"), P("n + m")));
  EXPECT_TRUE(entails_zero(n0, P("n*m")));
  EXPECT_FALSE(entails_zero(n0, P("m")));
  // Unsatisfiable D entails everything.
  ConstraintSet bad{{P("n"), P("n - 1")}};
  EXPECT_FALSE(solve_fragment(bad).satisfiable);
  EXPECT_TRUE(entails_zero(bad, P("m + 1")));
  EXPECT_FALSE(solve_fragment(ConstraintSet{{P("n + 1")}}).satisfiable);
  EXPECT_FALSE(solve_fragment(ConstraintSet{{P("1")}}).satisfiable);
  EXPECT_THROW(entails_zero(ConstraintSet{{P("n*m")}}, P("n")), OutsideFragment);
}

TEST(TypeEquiv, SizesUnderConstraints) {
  ConstraintSet none;
  ConstraintSet n0{{P("n")}};
  EXPECT_TRUE(type_equiv(none, T("L(a,n+m)"), T("L(a,m+n)")));
  EXPECT_FALSE(type_equiv(none, T("L(a,n)"), T("L(a,m)")));
  EXPECT_FALSE(type_equiv(none, T("L(a,n)"), T("L(b,n)")));
  EXPECT_FALSE(type_equiv(none, T("L(a,n)"), T("L(L(a,1),n)")));
  // Inner sizes of an empty list are irrelevant.
  EXPECT_TRUE(type_equiv(n0, T("L(L(a,2),n)"), T("L(L(a,7),0)")));
  EXPECT_FALSE(type_equiv(none, T("L(L(a,2),n)"), T("L(L(a,7),n)")));
}

TEST(Theta, InstantiatesSizesAndTypes) {
  std::vector<SizedType> formals{T("a"), T("L(a,n)")};
  std::vector<SizedType> actuals{T("Int"), T("L(Int,m+1)")};
  ThetaResult r = theta(formals, actuals);
  EXPECT_EQ(r.sizes.at("n"), P("m + 1"));
  EXPECT_EQ(r.types.at("a").to_string(), "Int");
  EXPECT_TRUE(r.c.empty());
}

TEST(Theta, RepeatedSizeVariablesYieldEquations) {
  std::vector<SizedType> formals{T("L(a,n)"), T("L(a,n)")};
  std::vector<SizedType> actuals{T("L(b,m)"), T("L(b,k)")};
  ThetaResult r = theta(formals, actuals);
  ASSERT_EQ(r.c.size(), 1u);
}

TEST(Theta, ShapeMismatch) {
  EXPECT_THROW(theta({T("L(a,n)")}, {T("Int")}), TypeError);
}

// D-free decisions against pointwise evaluation on a grid: an identity
// that holds must hold at every point, and a failing one is witnessed.
TEST(EntailmentProperty, UnconstrainedAgreesWithGrid) {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> c(-2, 2);
  for (int i = 0; i < 200; ++i) {
    Polynomial a, b;
    for (const char* m : {"1", "n", "m", "n*m", "n^2"}) {
      a += Polynomial::constant(c(rng)) * P(m);
      b += Polynomial::constant(c(rng)) * P(m);
    }
    if (i % 3 == 0) b = a + P("n*m") - P("m*n");
    bool grid = true;
    for (int n = 0; n <= 4 && grid; ++n)
      for (int m = 0; m <= 4 && grid; ++m)
        grid = a.evaluate({{"n", n}, {"m", m}}) == b.evaluate({{"n", n}, {"m", m}});
    EXPECT_EQ(entails_equal({}, a, b), grid);
  }
}

}  // namespace
}  // namespace polysize
