#ifndef SPN_EVOLUTION_HPP_
#define SPN_EVOLUTION_HPP_

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "spn/environment.hpp"
#include "spn/genome.hpp"
#include "spn/population.hpp"

namespace spn {

struct FitnessRecord {
  std::size_t genome_id = 0;
  double fitness = 0.0;  // mean return over the evaluated episodes
  std::size_t steps = 0;  // environment steps consumed
  std::size_t episodes = 0;
  std::uint64_t stream_id = 0;
  SpikeTally tally;
};

// Runs `episodes` episodes of the genome's policy, each reset with a seed
// drawn from `stream`.
FitnessRecord evaluate(const Genome& genome, const SpnModel& model, Environment& env,
                       std::size_t episodes, Rng& stream, double score_threshold,
                       std::size_t genome_id = 0, std::uint64_t stream_id = 0);

// All ids ordered by fitness, best first; equal fitness keeps the lower id first.
std::vector<std::size_t> rank(std::span<const FitnessRecord> records);

// The ceil(truncation * records.size()) best ids, best first.
std::vector<std::size_t> rank_and_select(std::span<const FitnessRecord> records,
                                         double truncation);

enum class Backend { kParallel, kSerial };

struct EliteSelection {
  std::size_t genome_id = 0;
  double mean_return = 0.0;
  std::vector<double> candidate_means;  // same order as the candidates
  std::size_t steps = 0;
  std::size_t episodes = 0;
  SpikeTally tally;
};

// Re-evaluates each candidate on cfg.elite_episodes fresh episodes and picks
// the highest mean (lower genome id on ties). `policies` is indexed by genome id.
EliteSelection select_elite(std::span<const SpikingPolicy> policies,
                            std::span<const std::size_t> candidates, EnvPool& pool,
                            const GaConfig& cfg, std::uint64_t seed, int generation,
                            Backend backend = Backend::kParallel);

struct GenerationReport {
  int generation = 0;
  double best = 0.0;
  double mean = 0.0;
  double std = 0.0;
  std::size_t elite_id = 0;
  double elite_mean = 0.0;
  std::uint64_t generation_steps = 0;
  std::uint64_t cumulative_steps = 0;
  std::uint64_t episodes = 0;
  double mean_rate = 0.0;  // middle-layer spikes per neuron per inference
};

struct EliteRecord {
  int generation = 0;
  std::size_t genome_id = 0;
  double mean_return = 0.0;
  Genome genome;
};

struct EvolutionOptions {
  int workers = 1;
  Backend backend = Backend::kParallel;
  GenomeMode mode = GenomeMode::kConnections;
  // Called after every generation; returning false stops the run.
  std::function<bool(const GenerationReport&, const EliteRecord&)> on_generation;
};

struct EvolutionResult {
  std::vector<GenerationReport> reports;
  std::vector<EliteRecord> elites;
};

// Mirrored-sampling GA: initialise, then per generation evaluate, rank,
// truncate, confirm the elite, and mutate parents drawn uniformly with
// replacement. The result depends only on (cfg, model, environment, seed).
EvolutionResult run_evolution(const GaConfig& cfg, const SpnModel& model,
                              const EnvFactory& env_factory, std::uint64_t seed,
                              const EvolutionOptions& options = {});

// Next generation from the ranked parents of generation `generation - 1`.
std::vector<Genome> vary(std::span<const Genome> previous,
                         std::span<const std::size_t> parents, const GaConfig& cfg,
                         std::uint64_t seed, int generation);

}  // namespace spn

#endif  // SPN_EVOLUTION_HPP_
