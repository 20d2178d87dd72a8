#include <benchmark/benchmark.h>

#include <fstream>
#include <random>
#include <sstream>

#include "polysize/checker.h"
#include "polysize/inference.h"
#include "polysize/interpolate.h"
#include "polysize/nca.h"
#include "polysize/parser.h"

namespace {

using namespace polysize;

Program corpus(const std::string& name) {
  std::ifstream in(std::string(POLYSIZE_CORPUS_DIR) + "/" + name + ".shp");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_program(ss.str());
}

void BM_PolynomialPower(benchmark::State& state) {
  Polynomial p = Polynomial::parse("1/2*n + 3*m - k + 7");
  for (auto _ : state) benchmark::DoNotOptimize(p.pow(state.range(0)));
}
BENCHMARK(BM_PolynomialPower)->Arg(2)->Arg(4)->Arg(8);

void BM_DerivePolynomial(benchmark::State& state) {
  int k = static_cast<int>(state.range(0));
  int d = static_cast<int>(state.range(1));
  std::vector<std::string> vars(
      {"x", "y", "z"});
  vars.resize(k);
  NodeConfiguration cfg = nca_nodes_growing(k, d, {}, vars, 0);
  std::mt19937_64 rng(1);
  std::vector<Rational> values;
  for (std::size_t i = 0; i < cfg.nodes.size(); ++i)
    values.emplace_back(static_cast<long>(rng() % 100));
  for (auto _ : state)
    benchmark::DoNotOptimize(derive_polynomial(d, vars, cfg.nodes, values));
}
BENCHMARK(BM_DerivePolynomial)->Args({1, 4})->Args({2, 4})->Args({3, 4});

void BM_CheckCorpus(benchmark::State& state) {
  Program p = corpus("nonlinear");
  for (auto _ : state) benchmark::DoNotOptimize(check_program(p));
}
BENCHMARK(BM_CheckCorpus);

void BM_InferNonlinear(benchmark::State& state) {
  Program p = corpus("nonlinear");
  for (auto _ : state) benchmark::DoNotOptimize(infer_program(p));
}
BENCHMARK(BM_InferNonlinear)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
