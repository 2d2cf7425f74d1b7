#ifndef SPN_EXPERIMENT_HPP_
#define SPN_EXPERIMENT_HPP_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "spn/checkpoint.hpp"
#include "spn/config.hpp"
#include "spn/energy.hpp"
#include "spn/run_log.hpp"

namespace spn {

// Seed of run `run` under a master seed.
std::uint64_t run_seed(std::uint64_t master, int run);

struct EvolveOptions {
  // Stop a run as soon as its elite mean reaches this return.
  std::optional<double> stop_at_return;
  // Skip writing files; rows are still returned.
  bool dry_run = false;
};

struct RunOutcome {
  int run = 0;
  std::uint64_t seed = 0;
  int generations = 0;
  double best_elite_mean = 0.0;
  int best_elite_generation = 0;
  // First generation (0-based) whose elite mean reached stop_at_return.
  std::optional<int> reached_at;
};

struct EvolveArtifacts {
  std::vector<GenerationRow> rows;
  std::vector<RunOutcome> runs;
};

// Runs cfg.runs independent evolutions. Unless dry_run, writes into
// cfg.output_dir: config.json, generations.csv (flushed per generation),
// run_XX/elite_gen_YYY.json and summary.json. `log` receives the cross-run
// mean +/- half std of the elite mean per generation.
EvolveArtifacts cmd_evolve(const ExperimentConfig& cfg, std::ostream& log,
                           const EvolveOptions& options = {});

struct EvalReport {
  std::size_t episodes = 0;
  double mean = 0.0;
  double std = 0.0;
  double spike_rate = 0.0;
  std::vector<double> returns;
};

// Evaluates a checkpoint on `env_locator` (the checkpoint's own environment
// when empty). Episode seeds derive from `seed`.
EvalReport cmd_eval(const Checkpoint& ckpt, const std::string& env_locator,
                    std::size_t episodes, std::uint64_t seed, int workers = 1);

// Energy row for a finished run directory. The SPN spike rate is the one
// measured over the run's rollouts. With `target`, the data budget is the
// mean cumulative step count at which runs first reached it; otherwise the
// full budget of the runs.
energy::EnergyRow energy_from_run_dir(const std::string& dir, std::optional<double> target,
                                      const energy::OptimizationCounts& ppo);

}  // namespace spn

#endif  // SPN_EXPERIMENT_HPP_
