// Serial vs OpenMP kernels. Thread count follows CAUSTICA_THREADS.

#include <benchmark/benchmark.h>

#include "caustica/caustic.hpp"
#include "caustica/render.hpp"

using namespace caustica;

namespace {

const Rational kR(1, 3), kN(1, 2);

const MPoly& family() {
  static const MPoly f = build_family(kR, kN);
  return f;
}

const PolyMatrix& sylvester() {
  static const PolyMatrix m = sylvester_matrix(family(), derivative(family(), "t"), "t");
  return m;
}

const MPoly& caustic_poly() {
  static const MPoly c = strip_spurious(envelope_resultant(family()), std::pair{kR, kN}).caustic_poly;
  return c;
}

Scened fig2() {
  return to_double(Sceneq::make(FiniteRadiant<Rational>{{0, 0}}, Circle2q{{1, 0}, kR * kR}, kN));
}

void BM_BareissSerial(benchmark::State& st) {
  sylvester();
  for (auto _ : st) benchmark::DoNotOptimize(bareiss_determinant_serial(sylvester()));
}
void BM_BareissParallel(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(bareiss_determinant(sylvester()));
}

void BM_EnvelopeSerial(benchmark::State& st) {
  RayFamily fam(fig2());
  EnvelopeOptions opt{static_cast<int>(st.range(0)), 1e8};
  for (auto _ : st) benchmark::DoNotOptimize(numeric_envelope_serial(fam, opt));
}
void BM_EnvelopeParallel(benchmark::State& st) {
  RayFamily fam(fig2());
  EnvelopeOptions opt{static_cast<int>(st.range(0)), 1e8};
  for (auto _ : st) benchmark::DoNotOptimize(numeric_envelope(fam, opt));
}

void BM_MarchingSquaresSerial(benchmark::State& st) {
  Viewport vp{-0.5, -1.0, 2.0, 1.0};
  caustic_poly();
  for (auto _ : st) benchmark::DoNotOptimize(marching_squares_serial(caustic_poly(), vp, static_cast<int>(st.range(0))));
}
void BM_MarchingSquaresParallel(benchmark::State& st) {
  Viewport vp{-0.5, -1.0, 2.0, 1.0};
  caustic_poly();
  for (auto _ : st) benchmark::DoNotOptimize(marching_squares(caustic_poly(), vp, static_cast<int>(st.range(0))));
}

void BM_EvoluteImplicitization(benchmark::State& st) {
  MPoly quartic = parse_poly("(-72*(x^2+y^2)+144*x+192)^2 - 9216*(x^2+y^2)", MPoly::VarList{"x", "y"});
  for (auto _ : st) benchmark::DoNotOptimize(evolute_eliminate(quartic));
}

}  // namespace

BENCHMARK(BM_BareissSerial)->Unit(benchmark::kMillisecond)->Iterations(3);
BENCHMARK(BM_BareissParallel)->Unit(benchmark::kMillisecond)->Iterations(3)->UseRealTime();
BENCHMARK(BM_EnvelopeSerial)->Arg(1024)->Arg(16384)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_EnvelopeParallel)->Arg(1024)->Arg(16384)->Unit(benchmark::kMicrosecond)->UseRealTime();
BENCHMARK(BM_MarchingSquaresSerial)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MarchingSquaresParallel)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_EvoluteImplicitization)->Unit(benchmark::kMillisecond)->Iterations(3);

BENCHMARK_MAIN();
