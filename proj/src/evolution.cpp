#include "spn/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "spn/error.hpp"

namespace spn {

namespace {

std::vector<EpisodeOutcome> run_jobs(std::span<const SpikingPolicy> policies,
                                     std::span<const EpisodeJob> jobs, EnvPool& pool,
                                     Backend backend) {
  if (backend == Backend::kSerial) return run_episodes_serial(policies, jobs, pool[0]);
  return run_episodes_parallel(policies, jobs, pool);
}

void check_compatible(const SpnModel& model, const EnvSpec& spec) {
  if (model.shape.inputs != spec.obs_dim || model.shape.outputs != spec.act_dim) {
    throw Error(ErrorCode::kShapeMismatch,
                "network (n=" + std::to_string(model.shape.inputs) +
                    ", m=" + std::to_string(model.shape.outputs) +
                    ") does not fit environment " + spec.describe());
  }
}

}  // namespace

FitnessRecord evaluate(const Genome& genome, const SpnModel& model, Environment& env,
                       std::size_t episodes, Rng& stream, double score_threshold,
                       std::size_t genome_id, std::uint64_t stream_id) {
  check_compatible(model, env.spec());
  const SpikingPolicy policy = make_policy(genome, model, score_threshold);
  FitnessRecord rec;
  rec.genome_id = genome_id;
  rec.stream_id = stream_id;
  double total = 0.0;
  for (std::size_t e = 0; e < episodes; ++e) {
    const EpisodeOutcome o = run_episode(policy, env, draw_env_seed(stream));
    total += o.total_return;
    rec.steps += o.length;
    rec.tally += o.tally;
  }
  rec.episodes = episodes;
  rec.fitness = episodes ? total / double(episodes) : 0.0;
  return rec;
}

std::vector<std::size_t> rank(std::span<const FitnessRecord> records) {
  std::vector<std::size_t> order(records.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (records[a].fitness != records[b].fitness) {
      return records[a].fitness > records[b].fitness;
    }
    return records[a].genome_id < records[b].genome_id;
  });
  std::vector<std::size_t> ids;
  ids.reserve(order.size());
  for (std::size_t i : order) ids.push_back(records[i].genome_id);
  return ids;
}

std::vector<std::size_t> rank_and_select(std::span<const FitnessRecord> records,
                                         double truncation) {
  if (records.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "cannot select from an empty population");
  }
  if (!(truncation > 0.0 && truncation <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "truncation ratio must lie in (0, 1]");
  }
  auto ids = rank(records);
  const auto keep = std::clamp<std::size_t>(
      std::size_t(std::ceil(truncation * double(records.size()))), 1, records.size());
  ids.resize(keep);
  return ids;
}

EliteSelection select_elite(std::span<const SpikingPolicy> policies,
                            std::span<const std::size_t> candidates, EnvPool& pool,
                            const GaConfig& cfg, std::uint64_t seed, int generation,
                            Backend backend) {
  if (candidates.size() < cfg.elite_candidates || candidates.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "need " + std::to_string(cfg.elite_candidates) +
                    " elite candidates, got " + std::to_string(candidates.size()));
  }
  const std::size_t per = cfg.elite_episodes;
  std::vector<EpisodeJob> jobs;
  jobs.reserve(cfg.elite_candidates * per);
  for (std::size_t c = 0; c < cfg.elite_candidates; ++c) {
    Rng rng = make_stream(seed, StreamTag::kElite, std::uint64_t(generation), candidates[c]);
    for (std::size_t e = 0; e < per; ++e) jobs.push_back({candidates[c], draw_env_seed(rng)});
  }
  const auto outcomes = run_jobs(policies, jobs, pool, backend);

  EliteSelection sel;
  sel.episodes = outcomes.size();
  for (std::size_t c = 0; c < cfg.elite_candidates; ++c) {
    double total = 0.0;
    for (std::size_t e = 0; e < per; ++e) {
      const EpisodeOutcome& o = outcomes[c * per + e];
      total += o.total_return;
      sel.steps += o.length;
      sel.tally += o.tally;
    }
    sel.candidate_means.push_back(total / double(per));
  }
  std::size_t best = 0;
  for (std::size_t c = 1; c < cfg.elite_candidates; ++c) {
    const double a = sel.candidate_means[c];
    const double b = sel.candidate_means[best];
    if (a > b || (a == b && candidates[c] < candidates[best])) best = c;
  }
  sel.genome_id = candidates[best];
  sel.mean_return = sel.candidate_means[best];
  return sel;
}

std::vector<Genome> vary(std::span<const Genome> previous,
                         std::span<const std::size_t> parents, const GaConfig& cfg,
                         std::uint64_t seed, int generation) {
  if (parents.empty()) throw Error(ErrorCode::kInvalidArgument, "no parents to vary");
  Rng picker = make_stream(seed, StreamTag::kParents, std::uint64_t(generation));
  std::uniform_int_distribution<std::size_t> pick(0, parents.size() - 1);
  std::vector<Genome> next;
  next.reserve(cfg.population);
  for (std::size_t k = 0; k < cfg.population / 2; ++k) {
    const Genome& parent = previous[parents[pick(picker)]];
    Rng noise = make_stream(seed, StreamTag::kNoise, std::uint64_t(generation), k);
    auto [plus, minus] = mutate(parent, cfg.sigma, noise);
    next.push_back(std::move(plus));
    next.push_back(std::move(minus));
  }
  return next;
}

EvolutionResult run_evolution(const GaConfig& cfg, const SpnModel& model,
                              const EnvFactory& env_factory, std::uint64_t seed,
                              const EvolutionOptions& options) {
  cfg.validate();
  EnvPool pool(env_factory, options.backend == Backend::kSerial ? 1 : options.workers);
  check_compatible(model, pool.spec());

  EvolutionResult result;
  std::vector<Genome> population = init_population(cfg, model.shape, seed, options.mode);
  std::uint64_t cumulative = 0;

  for (int g = 0; g < cfg.generations; ++g) {
    std::vector<SpikingPolicy> policies;
    policies.reserve(population.size());
    for (const Genome& genome : population) {
      policies.push_back(make_policy(genome, model, cfg.score_threshold));
    }

    std::vector<EpisodeJob> jobs;
    jobs.reserve(population.size() * cfg.fitness_episodes);
    for (std::size_t j = 0; j < population.size(); ++j) {
      Rng rng = make_stream(seed, StreamTag::kFitness, std::uint64_t(g), j);
      for (std::size_t e = 0; e < cfg.fitness_episodes; ++e) {
        jobs.push_back({j, draw_env_seed(rng)});
      }
    }
    const auto outcomes = run_jobs(policies, jobs, pool, options.backend);

    std::vector<FitnessRecord> records(population.size());
    SpikeTally tally;
    std::uint64_t steps = 0;
    for (std::size_t j = 0; j < population.size(); ++j) {
      FitnessRecord& r = records[j];
      r.genome_id = j;
      r.stream_id = j;
      double total = 0.0;
      for (std::size_t e = 0; e < cfg.fitness_episodes; ++e) {
        const EpisodeOutcome& o = outcomes[j * cfg.fitness_episodes + e];
        total += o.total_return;
        r.steps += o.length;
        r.tally += o.tally;
      }
      r.episodes = cfg.fitness_episodes;
      r.fitness = total / double(cfg.fitness_episodes);
      steps += r.steps;
      tally += r.tally;
    }

    const std::vector<std::size_t> ranking = rank(records);
    const std::vector<std::size_t> parents(ranking.begin(),
                                           ranking.begin() + std::ptrdiff_t(cfg.parent_count()));
    const std::vector<std::size_t> candidates(
        ranking.begin(), ranking.begin() + std::ptrdiff_t(cfg.elite_candidates));
    const EliteSelection elite =
        select_elite(policies, candidates, pool, cfg, seed, g, options.backend);
    steps += elite.steps;
    tally += elite.tally;
    cumulative += steps;

    GenerationReport rep;
    rep.generation = g;
    double sum = 0.0;
    for (const auto& r : records) sum += r.fitness;
    rep.mean = sum / double(records.size());
    double sq = 0.0;
    for (const auto& r : records) sq += (r.fitness - rep.mean) * (r.fitness - rep.mean);
    rep.std = std::sqrt(sq / double(records.size()));
    rep.best = records[ranking.front()].fitness;
    rep.elite_id = elite.genome_id;
    rep.elite_mean = elite.mean_return;
    rep.generation_steps = steps;
    rep.cumulative_steps = cumulative;
    rep.episodes = jobs.size() + elite.episodes;
    rep.mean_rate = tally.inferences
                        ? double(tally.middle_spikes) /
                              (double(model.shape.hidden) * double(tally.inferences))
                        : 0.0;

    result.reports.push_back(rep);
    result.elites.push_back({g, elite.genome_id, elite.mean_return,
                             population[elite.genome_id]});

    if (options.on_generation &&
        !options.on_generation(result.reports.back(), result.elites.back())) {
      break;
    }
    if (g + 1 < cfg.generations) population = vary(population, parents, cfg, seed, g + 1);
  }
  return result;
}

}  // namespace spn
