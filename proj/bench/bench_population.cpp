// Serial reference vs OpenMP population evaluation on the built-in cart-pole.

#include <benchmark/benchmark.h>

#include "spn/cartpole.hpp"
#include "spn/genome.hpp"
#include "spn/population.hpp"

namespace {

struct Fixture {
  spn::SpnModel model = spn::SpnModel::create({4, 64, 2}, {}, 7);
  std::vector<spn::SpikingPolicy> policies;
  std::vector<spn::EpisodeJob> jobs;

  explicit Fixture(std::size_t population) {
    spn::GaConfig cfg;
    cfg.population = population;
    cfg.elite_candidates = std::min<std::size_t>(cfg.elite_candidates, population);
    // A larger sigma gives the policies enough structure to survive a while.
    cfg.sigma = 1.0;
    for (const auto& g : spn::init_population(cfg, model.shape, 11)) {
      policies.push_back(spn::make_policy(g, model, cfg.score_threshold));
    }
    for (std::size_t j = 0; j < policies.size(); ++j) jobs.push_back({j, j});
  }
};

spn::EnvFactory cartpole() {
  return [] { return std::make_unique<spn::CartPole>(); };
}

void BM_EvaluateSerial(benchmark::State& state) {
  Fixture f(std::size_t(state.range(0)));
  spn::CartPole env;
  std::size_t steps = 0;
  for (auto _ : state) {
    auto out = spn::run_episodes_serial(f.policies, f.jobs, env);
    for (const auto& o : out) steps += o.length;
    benchmark::DoNotOptimize(out);
  }
  state.counters["steps/s"] = benchmark::Counter(double(steps), benchmark::Counter::kIsRate);
}

void BM_EvaluateParallel(benchmark::State& state) {
  Fixture f(std::size_t(state.range(0)));
  spn::EnvPool pool(cartpole(), int(state.range(1)));
  std::size_t steps = 0;
  for (auto _ : state) {
    auto out = spn::run_episodes_parallel(f.policies, f.jobs, pool);
    for (const auto& o : out) steps += o.length;
    benchmark::DoNotOptimize(out);
  }
  state.counters["steps/s"] = benchmark::Counter(double(steps), benchmark::Counter::kIsRate);
}

void BM_Forward(benchmark::State& state) {
  const auto hidden = std::size_t(state.range(0));
  const auto model = spn::SpnModel::create({17, hidden, 6}, {}, 3);
  const spn::SpikingPolicy policy(model.weights, spn::ConnectionMask::all(model.shape, true),
                                  model.neuron);
  std::vector<double> obs(17, 0.7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(policy.infer(obs));
  }
}

}  // namespace

BENCHMARK(BM_EvaluateSerial)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EvaluateParallel)
    ->Args({200, 1})
    ->Args({200, 2})
    ->Args({200, 4})
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();
BENCHMARK(BM_Forward)->Arg(64)->Arg(256);

BENCHMARK_MAIN();
