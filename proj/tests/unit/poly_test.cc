#include <gtest/gtest.h>

#include <random>

#include "polysize/errors.h"
#include "polysize/poly.h"

namespace polysize {
namespace {

Polynomial P(std::string_view s) { return Polynomial::parse(s); }

TEST(Rational, StaysReduced) {
  Rational q(6, 4);
  q.canonicalize();
  EXPECT_EQ(q.get_num(), 3);
  EXPECT_EQ(q.get_den(), 2);
  Rational r = Rational(1, 3) + Rational(1, 6);
  EXPECT_EQ(to_string(r), "1/2");
  EXPECT_TRUE(is_integer(Rational(4, 2)));
  EXPECT_FALSE(is_integer(Rational(1, 2)));
}

TEST(Polynomial, CanonicalPrinting) {
  EXPECT_EQ(P("n*(n+1)/2").to_string(), "1/2*n^2 + 1/2*n");
  EXPECT_EQ(P("n + m").to_string(), "m + n");
  EXPECT_EQ(P("n^2 + m^2 - 2*n*m").to_string(), "m^2 - 2*m*n + n^2");
  EXPECT_EQ(P("0").to_string(), "0");
  EXPECT_EQ(P("n - n").to_string(), "0");
  EXPECT_EQ(P("-3").to_string(), "-3");
  EXPECT_EQ(P("n2 + n10").to_string(), "n2 + n10");
}

TEST(Polynomial, NoZeroCoefficientsStored) {
  Polynomial p = P("n + m") - P("n");
  EXPECT_EQ(p.terms().size(), 1u);
  EXPECT_TRUE((P("n*m") - P("m*n")).is_zero());
}

TEST(Polynomial, ConstantsAndDegree) {
  EXPECT_TRUE(P("5").is_constant());
  EXPECT_EQ(*P("5").as_constant(), 5);
  EXPECT_FALSE(P("n").as_constant());
  EXPECT_EQ(P("n^2*m + m").degree(), 3u);
  EXPECT_EQ(P("n^2*m").coefficient(Monomial::var("n", 2) * Monomial::var("m")),
            1);
}

TEST(Polynomial, EvaluateRequiresEveryVariable) {
  EXPECT_EQ(P("1/2*n^2 + 1/2*n").evaluate({{"n", 3}}), 6);
  EXPECT_THROW(P("n + m").evaluate({{"n", 1}}), UnboundSizeVariable);
}

TEST(Polynomial, SubstituteIsSimultaneous) {
  Polynomial p = P("n + 2*m");
  Polynomial q = p.substitute({{"n", P("m")}, {"m", P("n")}});
  EXPECT_EQ(q, P("m + 2*n"));
}

TEST(Polynomial, ParseRejectsDivisionByVariables) {
  EXPECT_THROW(P("n / m"), SyntaxError);
  EXPECT_THROW(P("n / 0"), SyntaxError);
}

TEST(Monomials, CountIsBinomial) {
  // C(d+k, k) by Pascal's rule as an independent oracle.
  auto binom = [](int n, int k) {
    std::vector<std::vector<long>> c(n + 1, std::vector<long>(n + 1, 0));
    for (int i = 0; i <= n; ++i) {
      c[i][0] = 1;
      for (int j = 1; j <= i; ++j) c[i][j] = c[i - 1][j - 1] + c[i - 1][j];
    }
    return c[n][k];
  };
  std::vector<std::string> vars{"x", "y", "z"};
  for (int k = 1; k <= 3; ++k)
    for (int d = 0; d <= 5; ++d) {
      std::vector<std::string> v(vars.begin(), vars.begin() + k);
      EXPECT_EQ(static_cast<long>(monomials_up_to(v, d).size()),
                binom(d + k, k));
    }
}

// Ring laws checked pointwise: evaluation is a ring homomorphism, so any
// disagreement at a random point exposes an arithmetic error.
TEST(PolynomialProperty, ArithmeticAgreesWithEvaluation) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> coef(-5, 5), exp(0, 3), den(1, 4),
      pt(-6, 6);
  std::vector<std::string> vars{"n", "m", "k"};
  auto random_poly = [&] {
    Polynomial p;
    for (int t = 0; t < 4; ++t) {
      Monomial m;
      for (const auto& v : vars) {
        int e = exp(rng);
        if (e > 0) m = m * Monomial::var(v, e);
      }
      p += Polynomial::term(Rational(coef(rng), den(rng)), m);
    }
    return p;
  };
  for (int i = 0; i < 300; ++i) {
    Polynomial a = random_poly(), b = random_poly();
    Valuation x;
    for (const auto& v : vars) x[v] = pt(rng);
    Rational ea = a.evaluate(x), eb = b.evaluate(x);
    EXPECT_EQ((a + b).evaluate(x), ea + eb);
    EXPECT_EQ((a - b).evaluate(x), ea - eb);
    EXPECT_EQ((a * b).evaluate(x), ea * eb);
    EXPECT_EQ(a.pow(2).evaluate(x), ea * ea);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ(Polynomial::parse(a.to_string()), a);
  }
}

}  // namespace
}  // namespace polysize
