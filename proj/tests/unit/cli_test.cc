#include <gtest/gtest.h>

#include <sstream>

#include "cli.h"
#include "testing.h"

namespace polysize {
namespace {

using testing::corpus_names;
using testing::corpus_path;

struct CliRun {
  int status;
  std::string out;
  std::string err;
};

CliRun cli(std::vector<std::string> args, const std::string& stdin_text = "") {
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  int status = cli::run(args, in, out, err);
  return {status, out.str(), err.str()};
}

TEST(Cli, CheckCorpus) {
  for (const auto& name : corpus_names()) {
    CliRun r = cli({"check", corpus_path(name + ".shp")});
    EXPECT_EQ(r.status, cli::kOk) << name << r.out << r.err;
  }
}

TEST(Cli, CheckRejection) {
  std::string src = testing::read_file(corpus_path("cprod.shp"));
  std::string bad = src;
  bad.replace(bad.find("n*m)"), 4, "n+m)");
  CliRun r = cli({"check", "-"}, bad);
  EXPECT_EQ(r.status, cli::kRejected);
  EXPECT_NE(r.out.find("rejected: {n = 0}"), std::string::npos) << r.out;
}

TEST(Cli, CheckInputErrors) {
  CliRun r = cli({"check", testing::fixture_path("e_h.shp")});
  EXPECT_EQ(r.status, cli::kInputError);
  EXPECT_NE(r.err.find("RestrictionViolation"), std::string::npos);
  EXPECT_EQ(cli({"check", "-"}, "letfun f(x) = in").status, cli::kInputError);
  EXPECT_EQ(cli({"check", "-"}, "letfun f(x) = x in").status, cli::kInputError);
  EXPECT_EQ(cli({"check", "/nonexistent.shp"}).status, cli::kInputError);
  EXPECT_EQ(cli({"frobnicate"}).status, cli::kInputError);
}

TEST(Cli, Infer) {
  CliRun r = cli({"infer", corpus_path("cprod.shp")});
  EXPECT_EQ(r.status, cli::kOk);
  EXPECT_NE(r.out.find("cprod : L(a,n1) * L(a,n2) -> L(L(a,2), n1*n2)\n"),
            std::string::npos)
      << r.out;
  r = cli({"infer", corpus_path("progression.shp")});
  EXPECT_NE(r.out.find("progression : L(a,n) -> L(a, 1/2*n^2 + 1/2*n)\n"),
            std::string::npos);
}

TEST(Cli, InferDivergenceExitsWithDegreeCap) {
  CliRun r = cli({"infer", "--budget", "1000", "-"},
              "letfun loop(l) = cons(1, loop(l)) in");
  EXPECT_EQ(r.status, cli::kDegreeCap);
  EXPECT_NE(r.err.find("BudgetExhausted"), std::string::npos) << r.err;
}

TEST(Cli, CheckAfterInferAccepts) {
  for (const auto& name : corpus_names()) {
    CliRun inferred = cli({"infer", "--annotate", corpus_path(name + ".shp")});
    ASSERT_EQ(inferred.status, cli::kOk) << name;
    CliRun checked = cli({"check", "-"}, inferred.out);
    EXPECT_EQ(checked.status, cli::kOk) << name << "\n" << inferred.out;
  }
}

TEST(Cli, Eval) {
  CliRun r = cli({"eval", corpus_path("cprod.shp"), "cprod", "[1,2,3]", "[4,5]"});
  EXPECT_EQ(r.status, cli::kOk);
  EXPECT_EQ(r.out, "[[1,4],[1,5],[2,4],[2,5],[3,4],[3,5]]\n");
  EXPECT_EQ(cli({"eval", corpus_path("append.shp"), "append", "[]", "[]"}).out,
            "[]\n");
  EXPECT_EQ(cli({"eval", corpus_path("progression.shp")}).out,
            "[3,2,3,1,2,3]\n");
  r = cli({"eval", "-", "f", "[1]"}, "letfun f(l) = 1 div 0 in");
  EXPECT_EQ(r.status, cli::kRuntimeError);
  EXPECT_NE(r.err.find("DivByZero"), std::string::npos);
  EXPECT_EQ(cli({"eval", corpus_path("append.shp"), "append", "[1]"}).status,
            cli::kInputError);
}

TEST(Cli, StructuredOutputIsDeterministic) {
  std::vector<std::string> args{"infer", "--format", "structured", "--seed",
                                "0", corpus_path("cprod.shp")};
  CliRun a = cli(args), b = cli(args);
  EXPECT_EQ(a.status, cli::kOk);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("\"record\":\"measurement\""), std::string::npos);
  EXPECT_NE(a.out.find("\"inputs\":[\"[0,1]\",\"[2]\"]"), std::string::npos);
  CliRun c = cli({"check", "--format", "structured", corpus_path("append.shp")});
  EXPECT_NE(c.out.find("\"record\":\"obligation\""), std::string::npos);
  EXPECT_NE(c.out.find("\"record\":\"summary\""), std::string::npos);
}

TEST(Cli, Ast) {
  CliRun r = cli({"ast", "-"}, "letfun f(x) = g(h(x)) in letfun g(x) = x in "
                            "letfun h(x) = x in");
  EXPECT_EQ(r.status, cli::kOk);
  EXPECT_NE(r.out.find("let $1 = h(x) in"), std::string::npos) << r.out;
  r = cli({"ast", "--format", "structured", corpus_path("append.shp")});
  EXPECT_NE(r.out.find("\"node\":\"match\""), std::string::npos);
}

}  // namespace
}  // namespace polysize
