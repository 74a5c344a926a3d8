#include <benchmark/benchmark.h>

#include "metawhit/verify.hpp"

using namespace metawhit;

namespace {

DatumPtr datum(benchmark::State& state) {
  const auto p = static_cast<unsigned>(state.range(0));
  const auto n = static_cast<unsigned>(state.range(1));
  return TameLocalDatum::create(FqDescriptor(p, 1), n);
}

void BM_ScatteringParallel(benchmark::State& state) {
  const auto d = datum(state);
  const auto theta = TameMultChar::theta_ramified(d, 1);
  const AdditiveCharData psi(d, 0);
  for (auto _ : state) benchmark::DoNotOptimize(scattering_matrix(theta, psi, d->standard_pair()));
}

void BM_ScatteringSerial(benchmark::State& state) {
  const auto d = datum(state);
  const auto theta = TameMultChar::theta_ramified(d, 1);
  const AdditiveCharData psi(d, 0);
  for (auto _ : state) benchmark::DoNotOptimize(scattering_matrix_serial(theta, psi, d->standard_pair()));
}

Matrix sample(const DatumPtr& d) {
  return scattering_matrix(TameMultChar::theta_unramified(d), AdditiveCharData(d, 1), d->standard_pair());
}

void BM_MatMulParallel(benchmark::State& state) {
  const auto d = datum(state);
  const Matrix m = sample(d);
  for (auto _ : state) benchmark::DoNotOptimize(mat_mul(m, m));
}

void BM_MatMulSerial(benchmark::State& state) {
  const auto d = datum(state);
  const Matrix m = sample(d);
  for (auto _ : state) benchmark::DoNotOptimize(mat_mul_serial(m, m));
}

void BM_Rank(benchmark::State& state) {
  const auto d = datum(state);
  const Matrix m = sample(d);
  const Matrix plus = mat_add(identity(d->ambient(), d->n()), m);
  for (auto _ : state) benchmark::DoNotOptimize(rank(plus));
}

void suite(benchmark::State& state, bool parallel) {
  const auto d = datum(state);
  SuiteConfig cfg = default_suite(d);
  cfg.pairs = {d->standard_pair()};
  cfg.parallel = parallel;
  for (auto _ : state) benchmark::DoNotOptimize(run_verification(cfg).all_pass());
}

void BM_SuiteParallel(benchmark::State& state) { suite(state, true); }
void BM_SuiteSerial(benchmark::State& state) { suite(state, false); }

}  // namespace

#define DATA ->Args({7, 3})->Args({13, 3})->Args({11, 5})->Unit(benchmark::kMillisecond)

BENCHMARK(BM_ScatteringParallel) DATA;
BENCHMARK(BM_ScatteringSerial) DATA;
BENCHMARK(BM_MatMulParallel) DATA;
BENCHMARK(BM_MatMulSerial) DATA;
BENCHMARK(BM_Rank) DATA;
BENCHMARK(BM_SuiteParallel)->Args({7, 3})->Args({13, 3})->Unit(benchmark::kMillisecond)->Iterations(2);
BENCHMARK(BM_SuiteSerial)->Args({7, 3})->Args({13, 3})->Unit(benchmark::kMillisecond)->Iterations(2);

BENCHMARK_MAIN();
