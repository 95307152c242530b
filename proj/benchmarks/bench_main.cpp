#include <benchmark/benchmark.h>

#include "qhm/random.hpp"
#include "qhm/rep_oracle.hpp"
#include "qhm/star.hpp"
#include "qhm/symmetry.hpp"
#include "qhm/ym_opt.hpp"

using namespace qhm;

namespace {

Truncation trunc_nx(int nx) {
  Truncation t;
  t.Nx = nx;
  return t;
}

Connection random_conn(int q, const Truncation& t) {
  Rng rng(1);
  const AlgebraParams p;
  auto A1 = random_skew_matrix(p, t, rng, q);
  auto A2 = random_skew_matrix(p, t, rng, q);
  auto A3 = random_skew_matrix(p, t, rng, q);
  return make_connection(ModuleSpec{q}, A1, A2, A3);
}

}  // namespace

static void BM_Star(benchmark::State& state) {
  const auto t = trunc_nx(static_cast<int>(state.range(0)));
  const auto a = random_element(AlgebraParams{}, t, std::uint64_t{1});
  const auto b = random_element(AlgebraParams{}, t, std::uint64_t{2});
  for (auto _ : state) benchmark::DoNotOptimize(star(a, b));
}
BENCHMARK(BM_Star)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

static void BM_Derive(benchmark::State& state) {
  const auto a = random_element(AlgebraParams{}, Truncation{}, std::uint64_t{1});
  const DerivationId d(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(derive(d, a));
}
BENCHMARK(BM_Derive)->DenseRange(1, 3)->Unit(benchmark::kMicrosecond);

static void BM_YmValueGrad(benchmark::State& state) {
  const int q = static_cast<int>(state.range(0));
  const Truncation t;
  const ParamChart chart(ModuleSpec{q}, AlgebraParams{}, t);
  const auto v = chart.pack(random_conn(q, t));
  for (auto _ : state) benchmark::DoNotOptimize(ym_value_grad(v, chart));
}
BENCHMARK(BM_YmValueGrad)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

static void BM_BuildRep(benchmark::State& state) {
  const auto a = random_element(AlgebraParams{}, Truncation{}, std::uint64_t{1});
  const RepGrid g;
  for (auto _ : state) benchmark::DoNotOptimize(build_rep(a, g));
}
BENCHMARK(BM_BuildRep)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
