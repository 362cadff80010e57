#include <benchmark/benchmark.h>

#include <random>

#include "bipara/dynamics.hpp"
#include "bipara/linear_solve.hpp"
#include "bipara/text.hpp"

namespace {

using namespace bipara;

const CoordinateChart kTwo(2);
constexpr const char* kLagrangian = "z1*zb1 + z2*zb2 + 0.1*z1*z2 + 0.05*exp(0.2*zb1)*z2^2";

void BM_Parse(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(parse(kLagrangian, kTwo));
}
BENCHMARK(BM_Parse);

void BM_Simplify(benchmark::State& state) {
  const Expr e = differentiate(differentiate(parse(kLagrangian, kTwo), Coord::z(2)), Coord::zbar(1));
  for (auto _ : state) benchmark::DoNotOptimize(simplify(e));
}
BENCHMARK(BM_Simplify);

void BM_SynthesizeEl(benchmark::State& state) {
  const LagrangianProblem p(kTwo, parse(kLagrangian, kTwo), parse("0.2*z1 - 0.1*zb2", kTwo));
  for (auto _ : state) benchmark::DoNotOptimize(synthesize_el(p));
}
BENCHMARK(BM_SynthesizeEl);

void BM_SolveParaLinear(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> d(-1, 1);
  ParaMatrix m(n);
  for (auto& e : m.entries) e = ParaComplex(d(rng), d(rng));
  for (std::size_t i = 0; i < n; ++i) m(i, i) += ParaComplex(3.0);
  std::vector<ParaComplex> b(n, ParaComplex(1, 0.5));
  for (auto _ : state) benchmark::DoNotOptimize(solve_para_linear(m, b));
}
BENCHMARK(BM_SolveParaLinear)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

void BM_Rk4Oscillator(benchmark::State& state) {
  const CoordinateChart one(1);
  const RhsFunction rhs = make_rhs(synthesize_el(LagrangianProblem(one, parse("z1*zb1", one), Expr())));
  IntegratorConfig cfg;
  cfg.dt = 1e-3;
  cfg.t1 = 1.0;
  const PhaseState s0{0.0, {ParaComplex(1)}, {ParaComplex()}};
  for (auto _ : state) benchmark::DoNotOptimize(integrate(rhs, s0, cfg));
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_Rk4Oscillator);

}  // namespace

BENCHMARK_MAIN();
