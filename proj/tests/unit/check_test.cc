#include <gtest/gtest.h>

#include "polysize/checker.h"
#include "polysize/desugar.h"
#include "testing.h"

namespace polysize {
namespace {

using testing::corpus_names;
using testing::corpus_program;

Program with_annotation(Program p, const std::string& f,
                        const std::string& type) {
  for (auto& def : p.functions)
    if (def->name == f) {
      auto g = std::make_shared<FunDef>(*def);
      g->declared_type = FirstOrderType::parse(type);
      def = g;
    }
  return p;
}

TEST(Checker, AcceptsCorpus) {
  for (const auto& name : corpus_names()) {
    ProgramReport r = check_program(corpus_program(name));
    EXPECT_TRUE(r.accepted()) << name;
    for (const auto& f : r.functions) {
      EXPECT_EQ(f.fragment_violations, 0) << f.name;
      EXPECT_FALSE(f.decisions.empty()) << f.name;
    }
  }
}

TEST(Checker, HeadlineTypes) {
  struct Case {
    const char* file;
    const char* function;
    const char* type;
  };
  const Case cases[] = {
      {"cprod", "append", "L(a,n) * L(a,m) -> L(a, n+m)"},
      {"cprod", "pairs", "a * L(a,n) -> L(L(a,2), n)"},
      {"cprod", "cprod", "L(a,n) * L(a,m) -> L(L(a,2), n*m)"},
      {"sqdiff", "sqdiff", "L(a,n) * L(a,m) -> L(L(a,2), n^2 + m^2 - 2*n*m)"},
  };
  for (const auto& c : cases) {
    Program p = desugar(corpus_program(c.file));
    FirstOrderType t = FirstOrderType::parse(c.type);
    Signature sigma = program_signature(p);
    sigma[c.function] = t;
    FunctionReport r = check_function(*p.find_function(c.function), t, sigma);
    EXPECT_TRUE(r.accepted()) << c.function;
    // Perturbing the constant term breaks the annotation.
    FirstOrderType wrong = t;
    wrong.result = SizedType::list(t.result.elem(),
                                   t.result.size() + Polynomial::constant(1));
    sigma[c.function] = wrong;
    FunctionReport bad =
        check_function(*p.find_function(c.function), wrong, sigma);
    EXPECT_FALSE(bad.accepted()) << c.function;
  }
}

TEST(Checker, WrongProductSizeIsRejectedWithWitness) {
  Program p = with_annotation(corpus_program("cprod"), "cprod",
                              "L(a,n) * L(a,m) -> L(L(a,2), n+m)");
  ProgramReport r = check_program(p);
  EXPECT_FALSE(r.accepted());
  const FunctionReport* cprod = nullptr;
  for (const auto& f : r.functions)
    if (f.name == "cprod") cprod = &f;
  ASSERT_NE(cprod, nullptr);
  const Decision* d = cprod->first_failure();
  ASSERT_NE(d, nullptr);
  EXPECT_EQ(d->verdict, Verdict::kFails);
  // Brute force: the annotated and actual sizes differ at some small point.
  bool witness = false;
  for (int n = 0; n <= 4; ++n)
    for (int m = 0; m <= 4; ++m) witness = witness || n * m != n + m;
  EXPECT_TRUE(witness);
}

TEST(Checker, ObligationsPrintTheirConstraints) {
  Program p = desugar(corpus_program("append"));
  Signature sigma = program_signature(p);
  FunctionReport r = check_function(*p.find_function("append"),
                                    sigma.at("append"), sigma);
  ASSERT_TRUE(r.accepted());
  bool nil_branch = false;
  for (const auto& d : r.decisions)
    nil_branch = nil_branch || d.obligation.to_string().rfind("{n = 0}", 0) == 0;
  EXPECT_TRUE(nil_branch);
}

TEST(Checker, MissingAnnotation) {
  Program p = parse_program("letfun f(l) = l in");
  ProgramReport r = check_program(p);
  ASSERT_EQ(r.functions.size(), 1u);
  EXPECT_EQ(r.functions[0].error_kind, "MissingAnnotation");
  EXPECT_FALSE(r.accepted());
}

TEST(Checker, UnderlyingMismatchIsRejected) {
  Program p = parse_program("f : L(a,n) -> L(b,n)\nletfun f(l) = l in");
  ProgramReport r = check_program(p);
  EXPECT_FALSE(r.accepted());
  EXPECT_TRUE(r.functions[0].error.has_value());
}

TEST(Checker, RestrictionViolationThrows) {
  Program p = parse_program(
      testing::read_file(testing::fixture_path("e_h.shp")));
  EXPECT_THROW(check_program(p), RestrictionViolation);
}

TEST(Checker, UnreachableBranchIsVacuous) {
  // The innermost nil branch needs n - 1 = 0 and n = 0 at once.
  Program p = parse_program(
      "f : L(a,n) -> L(a,n)\n"
      "letfun f(l) = match l with | nil -> nil | cons(h, t) ->"
      " match t with"
      " | nil -> (match l with | nil -> [h, h, h] | cons(a, b) -> l)"
      " | cons(h2, t2) -> l in");
  ProgramReport r = check_program(p);
  ASSERT_EQ(r.functions.size(), 1u);
  EXPECT_TRUE(r.accepted());
  bool vacuous = false;
  for (const auto& d : r.functions[0].decisions)
    vacuous = vacuous || d.verdict == Verdict::kVacuous;
  EXPECT_TRUE(vacuous);
}

TEST(Checker, ExternTypesAreTrusted) {
  ProgramReport r = check_program(corpus_program("extern"));
  EXPECT_TRUE(r.accepted());
  EXPECT_THROW(check_program(parse_program("letextern g(x) in")), TypeError);
}

}  // namespace
}  // namespace polysize
