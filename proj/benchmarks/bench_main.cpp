#include <benchmark/benchmark.h>

#include <supersasaki/cartan.hpp>
#include <supersasaki/random_fields.hpp>

#include "support/geometries.hpp"

using namespace supersasaki;

namespace {

void BM_Christoffel(benchmark::State& state, Geometry (*make)()) {
  const Geometry geom = make();
  for (auto _ : state) {
    benchmark::DoNotOptimize(christoffel(geom.chart, geom.g));
  }
}

void BM_SuperSasaki(benchmark::State& state, Geometry (*make)()) {
  const Geometry geom = make();
  const SuperDomain d(geom.chart);
  for (auto _ : state) {
    benchmark::DoNotOptimize(super_sasaki(d, geom));
  }
}

void BM_SuperSasakiFlat(benchmark::State& state) {
  const Geometry geom = testgeom::euclidean(static_cast<std::size_t>(state.range(0)));
  const SuperDomain d(geom.chart);
  for (auto _ : state) {
    benchmark::DoNotOptimize(super_sasaki(d, geom));
  }
}

void BM_PairingViaLift(benchmark::State& state, Geometry (*make)()) {
  const Geometry geom = make();
  const SuperDomain d(geom.chart);
  const MetricFunction g = super_sasaki(d, geom);
  FieldSampler s(1);
  const VectorFieldPTM x = s.ptm_field(d, Parity::Odd);
  const VectorFieldPTM y = s.ptm_field(d, Parity::Even);
  for (auto _ : state) {
    benchmark::DoNotOptimize(pairing_via_lift(d, x, y, g));
  }
}

void BM_PairingClosedForm(benchmark::State& state, Geometry (*make)()) {
  const Geometry geom = make();
  const SuperDomain d(geom.chart);
  FieldSampler s(1);
  const VectorFieldPTM x = s.ptm_field(d, Parity::Odd);
  const VectorFieldPTM y = s.ptm_field(d, Parity::Even);
  for (auto _ : state) {
    benchmark::DoNotOptimize(pairing_closed_form(d, x, y, geom));
  }
}

void BM_Proposition(benchmark::State& state, Geometry (*make)()) {
  const Geometry geom = make();
  const SuperDomain d(geom.chart);
  const MetricFunction g = super_sasaki(d, geom);
  FieldSampler s(2);
  const VectorFieldM x = s.base_field(geom.chart);
  const VectorFieldM y = s.base_field(geom.chart);
  for (auto _ : state) {
    benchmark::DoNotOptimize(verify_proposition(d, geom, g, x, y, geom.chart.options()));
  }
}

Geometry flat2() { return testgeom::euclidean(2); }

}  // namespace

BENCHMARK_CAPTURE(BM_Christoffel, misner, testgeom::misner);
BENCHMARK_CAPTURE(BM_Christoffel, warped, testgeom::warped);
BENCHMARK_CAPTURE(BM_SuperSasaki, misner, testgeom::misner)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_SuperSasaki, warped, testgeom::warped)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SuperSasakiFlat)->Arg(2)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_PairingViaLift, flat, flat2)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_PairingViaLift, warped, testgeom::warped)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_PairingClosedForm, warped, testgeom::warped)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Proposition, misner, testgeom::misner)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
