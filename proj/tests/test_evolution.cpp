#include <cmath>
#include <numeric>
#include <set>

#include "doctest.h"
#include "spn/cartpole.hpp"
#include "spn/evolution.hpp"
#include "spn/genome.hpp"
#include "spn/population.hpp"
#include "test_envs.hpp"
#include "test_util.hpp"

using namespace spn;
using spn::testing::fixed_length;

namespace {

// 1-1-2 network that always picks `action` (the only middle neuron fires on
// every step for observation 1).
SpikingPolicy constant_policy(std::size_t action) {
  FixedWeights w{Matrix(1, 1, 1.0), Matrix(1, 2, 0.0)};
  w.layer2(0, action) = 1.0;
  return SpikingPolicy(w, ConnectionMask::all(w.shape(), true), NeuronConfig{});
}

GaConfig small_config() {
  GaConfig cfg;
  cfg.generations = 3;
  cfg.population = 20;
  cfg.elite_candidates = 4;
  cfg.elite_episodes = 3;
  cfg.sigma = 0.5;
  return cfg;
}

SpnModel cartpole_model(std::uint64_t seed = 11) {
  return SpnModel::create({4, 16, 2}, NeuronConfig{}, seed, 2.0);
}

void check_same(const EvolutionResult& a, const EvolutionResult& b) {
  REQUIRE(a.reports.size() == b.reports.size());
  for (std::size_t g = 0; g < a.reports.size(); ++g) {
    const auto& x = a.reports[g];
    const auto& y = b.reports[g];
    CHECK(x.best == y.best);
    CHECK(x.mean == y.mean);
    CHECK(x.std == y.std);
    CHECK(x.elite_id == y.elite_id);
    CHECK(x.elite_mean == y.elite_mean);
    CHECK(x.cumulative_steps == y.cumulative_steps);
    CHECK(x.mean_rate == y.mean_rate);
    CHECK(a.elites[g].genome == b.elites[g].genome);
  }
}

}  // namespace

TEST_CASE("initial population is mirrored with the requested spread") {
  GaConfig cfg;
  const NetworkShape shape{4, 64, 2};
  const auto pop = init_population(cfg, shape, 3);
  REQUIRE(pop.size() == 200);
  double sum_sq = 0.0;
  std::size_t count = 0;
  for (std::size_t k = 0; k < pop.size(); k += 2) {
    REQUIRE(pop[k].values.size() == shape.parameter_count());
    for (std::size_t i = 0; i < pop[k].values.size(); ++i) {
      REQUIRE(pop[k].values[i] + pop[k + 1].values[i] == 0.0);
      sum_sq += pop[k].values[i] * pop[k].values[i];
      ++count;
    }
  }
  CHECK(std::sqrt(sum_sq / double(count)) == doctest::Approx(0.01).epsilon(0.1));
  CHECK(pop[0].values != pop[2].values);
}

TEST_CASE("initial population depends only on the seed") {
  GaConfig cfg;
  cfg.population = 10;
  const NetworkShape shape{3, 8, 1};
  CHECK(init_population(cfg, shape, 9) == init_population(cfg, shape, 9));
  CHECK_FALSE(init_population(cfg, shape, 9) == init_population(cfg, shape, 10));
  const auto w = init_population(cfg, shape, 9, GenomeMode::kWeights);
  CHECK(w[0].mode == GenomeMode::kWeights);
  CHECK(w[0].values == init_population(cfg, shape, 9)[0].values);
}

TEST_CASE("mutation is mirrored around the parent") {
  Genome parent{GenomeMode::kConnections, {0.3, -1.0, 2.5, 0.0}};
  Rng rng(4);
  const auto [plus, minus] = mutate(parent, 0.2, rng);
  for (std::size_t i = 0; i < parent.values.size(); ++i) {
    CHECK((plus.values[i] + minus.values[i]) / 2.0 ==
          doctest::Approx(parent.values[i]).epsilon(1e-12));
    CHECK(plus.values[i] != parent.values[i]);
  }
  Rng rng0(4);
  const auto [same_a, same_b] = mutate(parent, 0.0, rng0);
  CHECK(same_a == parent);
  CHECK(same_b == parent);
}

TEST_CASE("vary builds mirrored children of the selected parents") {
  GaConfig cfg = small_config();
  const NetworkShape shape{2, 3, 1};
  const auto previous = init_population(cfg, shape, 1);
  const std::vector<std::size_t> parents{4, 7, 13};
  const auto next = vary(previous, parents, cfg, 1, 1);
  REQUIRE(next.size() == cfg.population);
  for (std::size_t k = 0; k < next.size(); k += 2) {
    bool found = false;
    for (std::size_t p : parents) {
      bool match = true;
      for (std::size_t i = 0; i < shape.parameter_count(); ++i) {
        const double mid = (next[k].values[i] + next[k + 1].values[i]) / 2.0;
        if (std::abs(mid - previous[p].values[i]) > 1e-12) match = false;
      }
      found = found || match;
    }
    CHECK(found);
  }
  CHECK(vary(previous, parents, cfg, 1, 1) == next);
  CHECK_THROWS_AS(vary(previous, std::vector<std::size_t>{}, cfg, 1, 1), Error);
}

TEST_CASE("ranking and truncation") {
  auto records = [](std::vector<double> f) {
    std::vector<FitnessRecord> out;
    for (std::size_t i = 0; i < f.size(); ++i) out.push_back({i, f[i]});
    return out;
  };
  CHECK(rank_and_select(records({3, 1, 2, 5}), 0.5) == std::vector<std::size_t>{3, 0});
  CHECK(rank_and_select(records({1, 1, 1, 1}), 0.5) == std::vector<std::size_t>{0, 1});
  CHECK(rank_and_select(records({1, 2, 3, 4, 5}), 0.25) == std::vector<std::size_t>{4, 3});
  CHECK(rank_and_select(records({7}), 1.0) == std::vector<std::size_t>{0});
  CHECK(rank(records({2, 9, 2, 9})) == std::vector<std::size_t>{1, 3, 0, 2});
  CHECK(rank_and_select(records(std::vector<double>(200, 0.0)), 0.25).size() == 50);
  CHECK_THROWS_CODE(rank_and_select(records({}), 0.5), ErrorCode::kInvalidArgument);
  CHECK_THROWS_CODE(rank_and_select(records({1, 2}), 0.0), ErrorCode::kInvalidArgument);
  CHECK_THROWS_CODE(rank_and_select(records({1, 2}), 1.5), ErrorCode::kInvalidArgument);
}

TEST_CASE("GA configuration checks") {
  GaConfig cfg;
  CHECK(cfg.parent_count() == 50);
  cfg.population = 7;
  CHECK_THROWS_CODE(cfg.validate(), ErrorCode::kConfig);
  cfg = GaConfig{};
  cfg.elite_candidates = 201;
  CHECK_THROWS_CODE(cfg.validate(), ErrorCode::kConfig);
  cfg = GaConfig{};
  cfg.sigma = -0.1;
  CHECK_THROWS_CODE(cfg.validate(), ErrorCode::kConfig);
  cfg = GaConfig{};
  cfg.score_threshold = 1.0;
  CHECK_THROWS_CODE(cfg.validate(), ErrorCode::kConfig);
}

TEST_CASE("elite selection picks the best confirmed mean, lower id on ties") {
  const std::vector<SpikingPolicy> policies{constant_policy(1), constant_policy(1),
                                            constant_policy(1), constant_policy(0),
                                            constant_policy(0), constant_policy(0)};
  EnvPool pool(fixed_length(10), 2);
  GaConfig cfg;
  cfg.population = 6;
  cfg.elite_candidates = 3;
  cfg.elite_episodes = 10;

  SUBCASE("one candidate dominates") {
    const std::vector<std::size_t> candidates{2, 4, 1};
    const auto sel = select_elite(policies, candidates, pool, cfg, 0, 0);
    CHECK(sel.genome_id == 4);
    CHECK(sel.mean_return == 10.0);
    CHECK(sel.candidate_means == std::vector<double>{1.0, 10.0, 1.0});
    CHECK(sel.episodes == 30);
    CHECK(sel.steps == 10 + 100 + 10);
  }
  SUBCASE("ties go to the lower genome id") {
    const std::vector<std::size_t> candidates{5, 3, 4};
    CHECK(select_elite(policies, candidates, pool, cfg, 0, 0).genome_id == 3);
    const std::vector<std::size_t> losers{2, 0, 1};
    CHECK(select_elite(policies, losers, pool, cfg, 0, 0, Backend::kSerial).genome_id == 0);
  }
  SUBCASE("too few candidates") {
    const std::vector<std::size_t> candidates{5, 3};
    CHECK_THROWS_CODE(select_elite(policies, candidates, pool, cfg, 0, 0),
                      ErrorCode::kInvalidArgument);
  }
}

TEST_CASE("evaluate averages episodes and counts steps") {
  const auto model = SpnModel::create({1, 1, 2}, NeuronConfig{}, 0);
  testing::FixedLengthEnv env(6, 0.5);
  Rng rng(1);
  Genome genome{GenomeMode::kWeights, {1.0, 1.0, 0.0}};  // always action 0
  const auto rec = evaluate(genome, model, env, 4, rng, 0.5, 7, 3);
  CHECK(rec.genome_id == 7);
  CHECK(rec.stream_id == 3);
  CHECK(rec.fitness == 3.0);
  CHECK(rec.steps == 24);
  CHECK(rec.episodes == 4);
  CHECK(rec.tally.inferences == 24);
}

TEST_CASE("one generation consumes N*T fitness steps plus 10x10 elite episodes") {
  const std::size_t T = 7;
  auto counters = std::make_shared<testing::Counters>();
  GaConfig cfg;
  cfg.generations = 1;
  cfg.population = 20;
  const auto model = SpnModel::create({1, 8, 2}, NeuronConfig{}, 2);
  // Episodes end early on action 1, so the counters give the exact total.
  const auto result = run_evolution(cfg, model, testing::counting(fixed_length(T), counters), 5,
                                    {.workers = 2});
  REQUIRE(result.reports.size() == 1);
  const auto& rep = result.reports[0];
  CHECK(rep.episodes == 20 + 10 * 10);
  CHECK(counters->resets == 20 + 10 * 10);
  CHECK(rep.generation_steps == counters->steps);
  CHECK(rep.generation_steps <= (20 + 10 * 10) * T);
  CHECK(rep.cumulative_steps == rep.generation_steps);
}

TEST_CASE("a silent network runs full fixed-length episodes") {
  const std::size_t T = 7;
  GaConfig cfg;
  cfg.generations = 2;
  cfg.population = 20;
  // Weights mode with near-zero genomes: no middle neuron reaches threshold,
  // so every action is 0 and every episode lasts T steps.
  const auto model = SpnModel::create({1, 8, 2}, NeuronConfig{}, 2);
  const auto result =
      run_evolution(cfg, model, fixed_length(T), 5, {.workers = 1, .mode = GenomeMode::kWeights});
  REQUIRE(result.reports.size() == 2);
  CHECK(result.reports[0].generation_steps == (20 + 100) * T);
  CHECK(result.reports[1].cumulative_steps == 2 * (20 + 100) * T);
  CHECK(result.reports[0].mean_rate == 0.0);
}

TEST_CASE("zero-reward environment gives zero fitness everywhere") {
  GaConfig cfg = small_config();
  const auto model = SpnModel::create({1, 8, 2}, NeuronConfig{}, 2);
  const auto result = run_evolution(cfg, model, fixed_length(5, 0.0), 1);
  for (const auto& rep : result.reports) {
    CHECK(rep.best == 0.0);
    CHECK(rep.mean == 0.0);
    CHECK(rep.std == 0.0);
    CHECK(rep.elite_mean == 0.0);
  }
}

TEST_CASE("evolution is identical for the serial reference and any worker count") {
  const GaConfig cfg = small_config();
  const auto model = cartpole_model();
  const EnvFactory factory = [] { return std::make_unique<CartPole>(); };
  const auto serial = run_evolution(cfg, model, factory, 42, {.backend = Backend::kSerial});
  for (int workers : {1, 4, 16}) {
    CAPTURE(workers);
    check_same(serial, run_evolution(cfg, model, factory, 42, {.workers = workers}));
  }
  const auto other = run_evolution(cfg, model, factory, 43, {.workers = 4});
  bool differs = false;
  for (std::size_t g = 0; g < other.reports.size(); ++g) {
    differs = differs || !(other.elites[g].genome == serial.elites[g].genome);
  }
  CHECK(differs);
}

TEST_CASE("parallel episodes match the serial reference job by job") {
  const auto model = cartpole_model();
  GaConfig cfg = small_config();
  std::vector<SpikingPolicy> policies;
  for (const auto& g : init_population(cfg, model.shape, 8)) {
    policies.push_back(make_policy(g, model, 0.5));
  }
  std::vector<EpisodeJob> jobs;
  for (std::size_t i = 0; i < 60; ++i) jobs.push_back({i % policies.size(), 1000 + i});
  CartPole env;
  const auto serial = run_episodes_serial(policies, jobs, env);
  for (int workers : {1, 3, 16}) {
    EnvPool pool([] { return std::make_unique<CartPole>(); }, workers);
    CHECK(pool.size() == workers);
    const auto par = run_episodes_parallel(policies, jobs, pool);
    REQUIRE(par.size() == serial.size());
    for (std::size_t i = 0; i < jobs.size(); ++i) {
      CHECK(par[i].total_return == serial[i].total_return);
      CHECK(par[i].length == serial[i].length);
      CHECK(par[i].tally == serial[i].tally);
    }
  }
}

TEST_CASE("parallel episodes rethrow the lowest failing job") {
  const std::vector<SpikingPolicy> policies{constant_policy(0)};
  EnvPool pool([] { return std::make_unique<testing::FixedLengthEnv>(3, 1.0, 10); }, 4);
  const std::vector<EpisodeJob> jobs{{0, 1}, {0, 20}, {0, 2}, {0, 30}, {0, 3}};
  try {
    run_episodes_parallel(policies, jobs, pool);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kEnvironment);
    CHECK(std::string(e.what()).find("bad seed 20") != std::string::npos);
  }
}

TEST_CASE("the generation callback can stop a run") {
  GaConfig cfg = small_config();
  cfg.generations = 10;
  const auto model = cartpole_model();
  int calls = 0;
  EvolutionOptions opts;
  opts.on_generation = [&](const GenerationReport& rep, const EliteRecord& elite) {
    CHECK(rep.generation == calls);
    CHECK(elite.generation == calls);
    CHECK(elite.mean_return == rep.elite_mean);
    return ++calls < 2;
  };
  const auto result =
      run_evolution(cfg, model, [] { return std::make_unique<CartPole>(); }, 1, opts);
  CHECK(calls == 2);
  CHECK(result.reports.size() == 2);
}

TEST_CASE("a model that does not fit the environment is rejected") {
  const auto model = SpnModel::create({3, 8, 2}, NeuronConfig{}, 0);
  CHECK_THROWS_CODE(run_evolution(small_config(), model,
                                  [] { return std::make_unique<CartPole>(); }, 0),
                    ErrorCode::kShapeMismatch);
}

TEST_CASE("worker count resolution") {
  CHECK(resolve_workers(3) == 3);
  CHECK(resolve_workers(0) >= 1);
  CHECK(resolve_workers(-2) >= 1);
}
