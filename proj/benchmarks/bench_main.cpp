#include <benchmark/benchmark.h>

#include <memory>
#include <random>

#include "marginrisk/decision_map.hpp"
#include "marginrisk/inference.hpp"
#include "marginrisk/pipeline.hpp"
#include "marginrisk/synthdata.hpp"

namespace {

using namespace marginrisk;

std::vector<std::pair<double, double>> random_queries(std::size_t n) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 0.5);
  std::vector<std::pair<double, double>> q(n);
  for (auto& p : q) p = {u(rng), u(rng)};
  return q;
}

void BM_Infer(benchmark::State& state) {
  const InferenceEngine engine(published_rule_set());
  const auto queries = random_queries(1024);
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& [m, s] = queries[i++ & 1023];
    benchmark::DoNotOptimize(engine.try_infer(m, s));
  }
}
BENCHMARK(BM_Infer);

void BM_MapLookup(benchmark::State& state) {
  const auto map = build_decision_map(published_rule_set());
  const auto queries = random_queries(1024);
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& [m, s] = queries[i++ & 1023];
    benchmark::DoNotOptimize(map.lookup(m, s));
  }
}
BENCHMARK(BM_MapLookup);

void BM_BuildMap(benchmark::State& state) {
  const InferenceEngine engine(published_rule_set());
  MapOptions opt;
  opt.rows = opt.cols = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_decision_map(engine, opt));
}
BENCHMARK(BM_BuildMap)->Arg(51)->Arg(101)->Unit(benchmark::kMillisecond);

// Cost per pushed frame of a 10 Hz quadrotor log, map fallback enabled.
void BM_EstimatorPush(benchmark::State& state) {
  const auto frames = simulate_flight({8.0, 20.0, 120.0, 3, {{40, 60, 15}}}, {});
  auto engine = std::make_shared<InferenceEngine>(published_rule_set());
  const RiskModel model{engine, std::make_shared<DecisionMap>(build_decision_map(*engine))};
  RiskEstimator est({}, model);
  std::size_t i = 0;
  double t0 = 0.0;
  for (auto _ : state) {
    MotorFrame f = frames[i % frames.size()];
    f.t += t0;
    if (++i % frames.size() == 0) t0 += frames.back().t + 0.1;
    benchmark::DoNotOptimize(est.push(f));
  }
}
BENCHMARK(BM_EstimatorPush);

}  // namespace

BENCHMARK_MAIN();
