#include <benchmark/benchmark.h>

#include <numbers>

#include "specurve/classify.hpp"

using namespace specurve;

namespace {

const TorusLattice kSquare(cplx(2.0 * std::numbers::pi, 0.0), cplx(0.0, 2.0 * std::numbers::pi));

SpectralModel perturbed(double R) {
  const DualLattice d = dual_lattice(kSquare);
  return SpectralModel(kSquare, Potential(d, {{0.0, 0.2}, {0.5, 0.05}}), R);
}

Exec exec_of(const benchmark::State& state) { return state.range(0) == 0 ? Exec::serial : Exec::parallel; }

void BM_IndicatorSweep(benchmark::State& state) {
  const SpectralModel model = perturbed(3.0);
  SliceGrid grid;
  grid.origin = {cplx(0.05, 0.0), cplx(0.0, 0.0)};
  grid.s0 = -1.0, grid.s1 = 1.0, grid.t0 = -1.0, grid.t1 = 1.0;
  grid.n1 = grid.n2 = 24;
  for (auto _ : state) benchmark::DoNotOptimize(indicator_sweep(model, grid, 1e-7, exec_of(state)));
}
BENCHMARK(BM_IndicatorSweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_ResolventContour(benchmark::State& state) {
  const SpectralModel model = perturbed(4.0);
  const CMatrix d = model.restricted_matrix(
      {static_cast<std::size_t>(model.component_of(*model.index_of(Species::v, DualPoint{})))},
                                            {cplx(0.0), cplx(0.0)});
  QuadratureOptions q;
  q.exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(resolvent_contour(d, 0.0, 0.35, q));
}
BENCHMARK(BM_ResolventContour)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_ClassifyPairs(benchmark::State& state) {
  const DualLattice d = dual_lattice(kSquare);
  const SpectralModel model(kSquare, Potential::constant(d, 0.3), 3.0);
  const std::vector<std::pair<cplx, cplx>> pairs{{0.5, 0.5}, {0.5, cplx(0.0, 0.5)}, {-0.5, 0.5}, {0.0, 0.0}};
  for (auto _ : state) benchmark::DoNotOptimize(classify_pairs(model, pairs, 0.1, {}, exec_of(state)));
}
BENCHMARK(BM_ClassifyPairs)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
