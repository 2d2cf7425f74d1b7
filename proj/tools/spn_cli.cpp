// Command-line front end: evolve, eval, energy-report, plot.

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "spn/checkpoint.hpp"
#include "spn/config.hpp"
#include "spn/energy.hpp"
#include "spn/error.hpp"
#include "spn/experiment.hpp"
#include "spn/plot.hpp"

namespace {

using nlohmann::json;

int fail(std::string_view code, const std::string& message, int status) {
  std::cerr << json{{"error", code}, {"message", message}}.dump() << std::endl;
  return status;
}

spn::NetworkShape parse_shape(const std::string& text) {
  std::vector<std::size_t> dims;
  std::stringstream ss(text);
  for (std::string cell; std::getline(ss, cell, ',');) {
    try {
      std::size_t used = 0;
      const long v = std::stol(cell, &used);
      if (used != cell.size() || v < 1) throw std::invalid_argument(cell);
      dims.push_back(std::size_t(v));
    } catch (const std::exception&) {
      throw spn::Error(spn::ErrorCode::kUsage, "bad shape '" + text + "', expected n,h,m");
    }
  }
  if (dims.size() != 3) {
    throw spn::Error(spn::ErrorCode::kUsage, "bad shape '" + text + "', expected n,h,m");
  }
  return {dims[0], dims[1], dims[2]};
}

struct EnergyArgs {
  std::string run_dir;
  std::optional<double> target;
  bool manual = false;
  bool published = false;
  std::vector<std::string> tasks;
  std::vector<std::string> shapes;
  std::vector<double> rates;
  std::vector<double> spn_energies;
  std::vector<std::uint64_t> generations;
  std::uint64_t population = 200;
  std::uint64_t episode_length = 1000;
  double ppo_forward = 2.6e7;
  double ppo_backward = 2.5e7;
};

std::vector<spn::energy::EnergyRow> manual_rows(const EnergyArgs& a) {
  const std::size_t n = a.tasks.size();
  if (n == 0) throw spn::Error(spn::ErrorCode::kUsage, "--manual needs at least one --task");
  if (a.shapes.size() != n || a.generations.size() != n) {
    throw spn::Error(spn::ErrorCode::kUsage,
                     "--manual needs one --shape and one --generations per --task");
  }
  if ((a.rates.size() == n) == (a.spn_energies.size() == n)) {
    throw spn::Error(spn::ErrorCode::kUsage,
                     "--manual needs either one --rate or one --spn-energy per --task");
  }
  spn::energy::OptimizationCounts ppo{a.ppo_forward, a.ppo_backward, a.ppo_forward,
                                      a.ppo_backward, 0.0};
  std::vector<spn::energy::EnergyRow> rows;
  for (std::size_t i = 0; i < n; ++i) {
    const spn::NetworkShape shape = parse_shape(a.shapes[i]);
    const double e_spn = a.rates.size() == n
                             ? spn::energy::spn_inference_energy(shape, a.rates[i])
                             : a.spn_energies[i];
    spn::energy::EfficiencyInputs in;
    in.generations = a.generations[i];
    in.population = a.population;
    in.episode_length = a.episode_length;
    rows.push_back(spn::energy::make_row(a.tasks[i], shape, e_spn, ppo,
                                         spn::energy::data_efficiency(in)));
  }
  return rows;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Evolve connection masks of spiking policy networks and account their energy"};
  app.require_subcommand(1);

  // evolve
  auto* evolve = app.add_subcommand("evolve", "run independent evolutions from a config");
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
  std::optional<int> runs;
  std::string out_dir;
  std::optional<double> stop_at;
  evolve->add_option("--config", config_path, "config document (JSON); defaults if omitted");
  evolve->add_option("--seed", seed, "master seed (overrides config)");
  evolve->add_option("--workers", workers, "evaluation threads; < 1 uses all cores");
  evolve->add_option("--runs", runs, "number of independent runs (overrides config)");
  evolve->add_option("--out", out_dir, "output directory (overrides config)");
  evolve->add_option("--stop-at", stop_at, "stop each run once the elite mean reaches this");

  // eval
  auto* eval = app.add_subcommand("eval", "evaluate an elite checkpoint");
  std::string ckpt_path;
  std::string env_locator;
  long long episodes = 10;
  std::uint64_t eval_seed = 0;
  int eval_workers = 1;
  eval->add_option("--ckpt", ckpt_path, "checkpoint file")->required();
  eval->add_option("--env", env_locator, "environment locator (default: the checkpoint's)");
  eval->add_option("--episodes", episodes, "number of episodes")->capture_default_str();
  eval->add_option("--seed", eval_seed, "episode seed")->capture_default_str();
  eval->add_option("--workers", eval_workers, "evaluation threads")->capture_default_str();

  // energy-report
  auto* report = app.add_subcommand("energy-report", "inference/optimisation energy table");
  EnergyArgs ea;
  auto* run_dir_opt = report->add_option("--run-dir", ea.run_dir, "finished evolve output");
  report->add_option("--target", ea.target, "return defining the data budget (run-dir mode)");
  auto* manual_flag = report->add_flag("--manual", ea.manual, "rows from the options below");
  auto* published_flag =
      report->add_flag("--published", ea.published, "rows for the three published tasks");
  run_dir_opt->excludes(manual_flag)->excludes(published_flag);
  manual_flag->excludes(published_flag);
  report->add_option("--task", ea.tasks, "task name (repeatable)");
  report->add_option("--shape", ea.shapes, "n,h,m (repeatable)");
  report->add_option("--rate", ea.rates, "middle-layer spike rate (repeatable)");
  report->add_option("--spn-energy", ea.spn_energies, "SPN inference energy pJ (repeatable)");
  report->add_option("--generations", ea.generations, "generations to target (repeatable)");
  report->add_option("--population", ea.population)->capture_default_str();
  report->add_option("--episode-length", ea.episode_length)->capture_default_str();
  report->add_option("--ppo-forward", ea.ppo_forward)->capture_default_str();
  report->add_option("--ppo-backward", ea.ppo_backward)->capture_default_str();

  // plot
  auto* plot = app.add_subcommand("plot", "SVG learning curves from generations.csv");
  std::string csv_path;
  std::string svg_path;
  plot->add_option("--csv", csv_path, "generations.csv")->required();
  plot->add_option("--out", svg_path, "output SVG")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail("usage", e.what(), 2);
  }

  try {
    if (*evolve) {
      spn::ExperimentConfig cfg =
          config_path.empty() ? spn::ExperimentConfig{} : spn::load_config(config_path);
      if (seed) cfg.seed = *seed;
      if (workers) cfg.workers = *workers;
      if (runs) cfg.runs = *runs;
      if (!out_dir.empty()) cfg.output_dir = out_dir;
      spn::EvolveOptions opts;
      opts.stop_at_return = stop_at;
      spn::cmd_evolve(cfg, std::cout, opts);
    } else if (*eval) {
      if (episodes < 1) throw spn::Error(spn::ErrorCode::kUsage, "--episodes must be >= 1");
      const spn::Checkpoint ckpt = spn::load_checkpoint(ckpt_path);
      const auto rep =
          spn::cmd_eval(ckpt, env_locator, std::size_t(episodes), eval_seed, eval_workers);
      std::cout << json{{"episodes", rep.episodes},
                        {"mean_return", rep.mean},
                        {"std_return", rep.std},
                        {"spike_rate", rep.spike_rate},
                        {"returns", rep.returns}}
                       .dump()
                << '\n';
    } else if (*report) {
      std::vector<spn::energy::EnergyRow> rows;
      if (!ea.run_dir.empty()) {
        spn::energy::OptimizationCounts ppo{ea.ppo_forward, ea.ppo_backward, ea.ppo_forward,
                                            ea.ppo_backward, 0.0};
        rows.push_back(spn::energy_from_run_dir(ea.run_dir, ea.target, ppo));
        std::cerr << "note: E_infer_spn uses the spike rate measured over this run's rollouts\n";
      } else if (ea.manual) {
        rows = manual_rows(ea);
      } else if (ea.published) {
        rows = spn::energy::published_rows();
      } else {
        throw spn::Error(spn::ErrorCode::kUsage,
                         "energy-report needs --run-dir, --manual or --published");
      }
      std::cout << spn::energy::format_table(rows);
    } else if (*plot) {
      spn::plot_csv(csv_path, svg_path);
    }
  } catch (const spn::Error& e) {
    return fail(spn::to_string(e.code()), e.what(), e.code() == spn::ErrorCode::kUsage ? 2 : 1);
  } catch (const std::exception& e) {
    return fail("internal", e.what(), 1);
  }
  return 0;
}
