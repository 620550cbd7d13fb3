// Serial reference against the OpenMP sweeps on identical inputs.

#include <benchmark/benchmark.h>

#include <random>

#include "conway/batch.hpp"
#include "oracles.hpp"

using namespace conway;

namespace {

const std::vector<QuadraticIrrational>& irrationals() {
  static const std::vector<QuadraticIrrational> xs = [] {
    std::mt19937_64 rng(7);
    std::vector<QuadraticIrrational> out;
    for (int i = 0; i < 400; ++i) out.push_back(oracle::random_irrational(rng));
    return out;
  }();
  return xs;
}

const std::vector<batch::GrowthJob>& growth_jobs() {
  static const std::vector<batch::GrowthJob> jobs = [] {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> coef(1, 60);
    std::vector<batch::GrowthJob> out;
    for (int i = 0; i < 64; ++i) {
      out.push_back({QuadraticForm{coef(rng), coef(rng), coef(rng)}, PathSpec::parse("(1+sqrt(5))/2"), 1000});
    }
    return out;
  }();
  return jobs;
}

void BM_CfPropertiesSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(batch::cf_properties_serial(irrationals()));
}
void BM_CfPropertiesParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(batch::cf_properties_parallel(irrationals()));
}
void BM_TheoremRatiosSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(batch::theorem_ratios_serial(growth_jobs()));
}
void BM_TheoremRatiosParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(batch::theorem_ratios_parallel(growth_jobs()));
}

}  // namespace

BENCHMARK(BM_CfPropertiesSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_CfPropertiesParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_TheoremRatiosSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_TheoremRatiosParallel)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
