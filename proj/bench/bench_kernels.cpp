// Serial references against the OpenMP kernels. Run with OMP_NUM_THREADS set
// to compare scaling; on one core the pairs should be close.

#include <benchmark/benchmark.h>

#include <random>

#include "bellforge/catalog.hpp"
#include "bellforge/lhv_certifier.hpp"
#include "bellforge/optimizer.hpp"

using namespace bellforge;

namespace {

const BellInequality& n9() {
  static const auto ineq = catalog_entry("n9-a").inequality();
  return ineq;
}

void BM_certify(benchmark::State& state) {
  const auto ineq = catalog_entry(state.range(0) == 7 ? "n7" : "n9-b").inequality();
  for (auto _ : state) benchmark::DoNotOptimize(certify_bound(ineq, true));
}

void BM_certify_serial(benchmark::State& state) {
  const auto ineq = catalog_entry(state.range(0) == 7 ? "n7" : "n9-b").inequality();
  for (auto _ : state) benchmark::DoNotOptimize(certify_bound_serial(ineq, true));
}

struct ApplyFixture {
  BellOperator op;
  std::vector<int> signs;
  PureState v;
  Amplitudes out;

  explicit ApplyFixture(const SettingSet& settings)
      : op(n9(), settings), signs(n9().size(), 1), v([] {
          std::mt19937_64 rng(1);
          return PureState::random(9, rng);
        }()),
        out(v.dimension()) {}
};

SettingSet generic_settings() {
  std::vector<PartySetting> parties;
  for (int j = 0; j < 9; ++j) parties.push_back({{0.6, 0.0, 0.8}, {0.0, 0.6, 0.8}});
  return SettingSet(std::move(parties));
}

void BM_apply_pauli(benchmark::State& state) {
  ApplyFixture f(settings_from_angles(std::vector<double>(9, 0.7)));
  for (auto _ : state) f.op.apply(f.signs, f.v.amplitudes(), f.out);
}

void BM_apply_generic(benchmark::State& state) {
  ApplyFixture f(generic_settings());
  for (auto _ : state) f.op.apply(f.signs, f.v.amplitudes(), f.out);
}

void BM_apply_serial(benchmark::State& state) {
  ApplyFixture f(generic_settings());
  for (auto _ : state) f.op.apply_serial(f.signs, f.v.amplitudes(), f.out);
}

void BM_table(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const MixedState rho(PureState::random(static_cast<int>(state.range(0)), rng));
  for (auto _ : state) benchmark::DoNotOptimize(CorrelationTable(rho, {0, 1, 3}));
}

void BM_table_serial(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const MixedState rho(PureState::random(static_cast<int>(state.range(0)), rng));
  for (auto _ : state) benchmark::DoNotOptimize(CorrelationTable::build_serial(rho, {0, 1, 3}));
}

}  // namespace

BENCHMARK(BM_certify)->Arg(7)->Arg(9)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_certify_serial)->Arg(7)->Arg(9)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_apply_pauli)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_apply_generic)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_apply_serial)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_table)->Arg(5)->Arg(9)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_table_serial)->Arg(5)->Arg(9)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
