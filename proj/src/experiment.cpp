#include "spn/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>

#include "spn/env_registry.hpp"
#include "spn/error.hpp"
#include "spn/evolution.hpp"
#include "spn/population.hpp"

namespace spn {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string run_dir_name(int run) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "run_%02d", run);
  return buf;
}

std::string elite_file_name(int generation) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "elite_gen_%03d.json", generation);
  return buf;
}

void check_env_matches(const EnvSpec& trained, const EnvSpec& target) {
  if (trained.obs_dim != target.obs_dim || trained.act_dim != target.act_dim ||
      trained.action_kind != target.action_kind) {
    throw Error(ErrorCode::kShapeMismatch, "checkpoint was evolved on " + trained.describe() +
                                               " but the environment is " + target.describe());
  }
}

void write_json(const fs::path& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot write '" + path.string() + "'");
  out << doc.dump(1) << '\n';
}

}  // namespace

std::uint64_t run_seed(std::uint64_t master, int run) {
  Rng rng = make_stream(master, StreamTag::kRun, 0, std::uint64_t(run));
  return rng();
}

EvolveArtifacts cmd_evolve(const ExperimentConfig& cfg, std::ostream& log,
                           const EvolveOptions& options) {
  cfg.validate();
  const EnvFactory factory = make_env_factory(cfg.env);
  EnvSpec spec;
  {
    auto probe = factory();
    spec = probe->spec();
  }
  spec.validate();
  const NetworkShape shape{spec.obs_dim, cfg.hidden, spec.act_dim};

  const fs::path root(cfg.output_dir);
  std::ofstream csv;
  if (!options.dry_run) {
    std::error_code ec;
    fs::create_directories(root, ec);
    if (ec) throw Error(ErrorCode::kIo, "cannot create '" + root.string() + "'");
    write_json(root / "config.json", config_to_json(cfg));
    csv.open(root / "generations.csv");
    if (!csv) throw Error(ErrorCode::kIo, "cannot write generations.csv");
    csv << kGenerationsHeader << '\n' << std::flush;
  }

  EvolveArtifacts artifacts;
  for (int r = 0; r < cfg.runs; ++r) {
    const std::uint64_t seed = run_seed(cfg.seed, r);
    const SpnModel model = SpnModel::create(shape, cfg.neuron, seed, cfg.input_gain);
    const fs::path run_dir = root / run_dir_name(r);
    if (!options.dry_run) fs::create_directories(run_dir);

    RunOutcome outcome;
    outcome.run = r;
    outcome.seed = seed;
    outcome.best_elite_mean = -std::numeric_limits<double>::infinity();

    EvolutionOptions evo;
    evo.workers = cfg.workers;
    evo.mode = cfg.mode;
    evo.on_generation = [&](const GenerationReport& rep, const EliteRecord& elite) {
      const GenerationRow row = make_row(r, rep);
      artifacts.rows.push_back(row);
      ++outcome.generations;
      if (rep.elite_mean > outcome.best_elite_mean) {
        outcome.best_elite_mean = rep.elite_mean;
        outcome.best_elite_generation = rep.generation;
      }
      if (!options.dry_run) {
        csv << format_row(row) << '\n' << std::flush;
        Checkpoint ckpt{cfg.env, spec, r, rep.generation, elite.genome_id, elite.mean_return,
                        cfg.ga, model, elite.genome};
        save_checkpoint(ckpt, (run_dir / elite_file_name(rep.generation)).string());
      }
      if (options.stop_at_return && rep.elite_mean >= *options.stop_at_return) {
        outcome.reached_at = rep.generation;
        return false;
      }
      return true;
    };
    run_evolution(cfg.ga, model, factory, seed, evo);
    artifacts.runs.push_back(outcome);
  }

  json summary{{"runs", json::array()}, {"generations", json::array()}};
  for (const auto& o : artifacts.runs) {
    json j{{"run", o.run},
           {"seed", o.seed},
           {"generations", o.generations},
           {"best_elite_mean", o.best_elite_mean},
           {"best_elite_generation", o.best_elite_generation}};
    if (o.reached_at) j["reached_at"] = *o.reached_at;
    summary["runs"].push_back(j);
  }
  for (const Band& b : aggregate(artifacts.rows, Metric::kEliteMean)) {
    char line[160];
    std::snprintf(line, sizeof line, "generation %3d  elite_mean %.3f +/- %.3f  (runs=%zu)",
                  b.generation, b.mean, 0.5 * b.std, b.runs);
    log << line << '\n';
    summary["generations"].push_back({{"generation", b.generation},
                                      {"elite_mean", b.mean},
                                      {"half_std", 0.5 * b.std},
                                      {"runs", b.runs}});
  }
  if (!options.dry_run) write_json(root / "summary.json", summary);
  return artifacts;
}

EvalReport cmd_eval(const Checkpoint& ckpt, const std::string& env_locator,
                    std::size_t episodes, std::uint64_t seed, int workers) {
  if (episodes == 0) throw Error(ErrorCode::kUsage, "episodes must be >= 1");
  const std::string locator = env_locator.empty() ? ckpt.env : env_locator;
  EnvPool pool(make_env_factory(locator), workers);
  check_env_matches(ckpt.env_spec, pool.spec());
  if (ckpt.model.shape.inputs != pool.spec().obs_dim ||
      ckpt.model.shape.outputs != pool.spec().act_dim) {
    throw Error(ErrorCode::kShapeMismatch, "checkpoint network does not fit " +
                                               pool.spec().describe());
  }

  const std::vector<SpikingPolicy> policies{
      make_policy(ckpt.genome, ckpt.model, ckpt.ga.score_threshold)};
  Rng rng = make_stream(seed, StreamTag::kEval);
  std::vector<EpisodeJob> jobs;
  for (std::size_t e = 0; e < episodes; ++e) jobs.push_back({0, draw_env_seed(rng)});
  const auto outcomes = run_episodes_parallel(policies, jobs, pool);

  EvalReport rep;
  rep.episodes = episodes;
  SpikeTally tally;
  for (const auto& o : outcomes) {
    rep.returns.push_back(o.total_return);
    rep.mean += o.total_return;
    tally += o.tally;
  }
  rep.mean /= double(episodes);
  for (double r : rep.returns) rep.std += (r - rep.mean) * (r - rep.mean);
  rep.std = std::sqrt(rep.std / double(episodes));
  rep.spike_rate = energy::measure_rate(tally, ckpt.model.shape.hidden);
  return rep;
}

energy::EnergyRow energy_from_run_dir(const std::string& dir, std::optional<double> target,
                                      const energy::OptimizationCounts& ppo) {
  const fs::path root(dir);
  const ExperimentConfig cfg = load_config((root / "config.json").string());
  const auto rows = read_generations_csv((root / "generations.csv").string());

  // Shape comes from any elite checkpoint of the run.
  std::optional<Checkpoint> ckpt;
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (entry.path().extension() == ".json" &&
        entry.path().filename().string().rfind("elite_gen_", 0) == 0) {
      ckpt = load_checkpoint(entry.path().string());
      break;
    }
  }
  if (!ckpt) throw Error(ErrorCode::kConfig, "no elite checkpoints under '" + dir + "'");
  const NetworkShape shape = ckpt->model.shape;

  // Rate over every rollout: weight each generation by the steps it consumed.
  std::map<int, std::uint64_t> last_steps;
  std::map<int, std::uint64_t> budget;
  std::map<int, std::uint64_t> reached;
  double spikes = 0.0;
  double steps = 0.0;
  for (const auto& row : rows) {
    const std::uint64_t gen_steps = row.cum_steps - last_steps[row.run];
    last_steps[row.run] = row.cum_steps;
    spikes += row.mean_rate * double(gen_steps);
    steps += double(gen_steps);
    budget[row.run] = row.cum_steps;
    if (target && row.elite_mean >= *target && !reached.count(row.run)) {
      reached[row.run] = row.cum_steps;
    }
  }
  if (steps <= 0.0) throw Error(ErrorCode::kConfig, "run directory records no steps");
  const double rate = spikes / steps;

  const auto& used = target ? reached : budget;
  if (used.empty()) {
    throw Error(ErrorCode::kConfig, "no run reached the target return");
  }
  double total = 0.0;
  for (const auto& [run, s] : used) total += double(s);
  energy::DataEfficiency eff;
  eff.total = std::uint64_t(std::llround(total / double(used.size())));
  eff.gamma = double(eff.total) / 1e6;

  const double e_spn = energy::spn_inference_energy(shape, rate, {}, cfg.neuron.time_window);
  return energy::make_row(ckpt->env_spec.name, shape, e_spn, ppo, eff);
}

}  // namespace spn
