#ifndef SPN_ENERGY_HPP_
#define SPN_ENERGY_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "spn/types.hpp"

namespace spn::energy {

// 45nm CMOS per-operation energies in pJ.
struct EnergyConstants {
  double e_mac = 4.6;
  double e_ac = 0.9;
};

struct LayerOpCount {
  std::size_t f_in = 0;
  std::size_t f_out = 0;
  // Mean spikes per upstream neuron per inference; 1 for dense layers.
  double rate = 1.0;

  std::uint64_t dense_ops() const { return std::uint64_t(f_in) * f_out; }
};

// Dense layers of the ReLU/Tanh policy network (value_net: one output unit).
std::vector<LayerOpCount> dense_layers(const NetworkShape& shape, bool value_net);

// Sum of f_in * f_out * e_mac over the dense network's layers.
double dpn_inference_energy(const NetworkShape& shape, bool value_net,
                            const EnergyConstants& k = {});

// The sensory layer is not spiking and costs n*h MACs once per inference; the
// spiking layer costs rate * h * m accumulates. `rate` must lie in
// [0, time_window].
double spn_inference_energy(const NetworkShape& shape, double rate,
                            const EnergyConstants& k = {}, int time_window = 4);

// Spikes per middle neuron per inference.
double measure_rate(const SpikeTally& tally, std::size_t hidden);

struct OptimizationCounts {
  double dpn_forward = 0;
  double dpn_backward = 0;
  double dvn_forward = 0;
  double dvn_backward = 0;
  double spn_forward = 0;
};

struct OptimizationEnergy {
  double ppo = 0.0;
  double ga = 0.0;
  double ratio() const { return ppo / ga; }
};

// Inference energy times the number of passes; a backward pass costs the same
// as a forward pass.
OptimizationEnergy optimization_energy(const OptimizationCounts& counts, double e_dpn,
                                       double e_dvn, double e_spn);

struct EfficiencyInputs {
  std::uint64_t generations = 0;
  std::uint64_t population = 200;
  std::uint64_t episode_length = 1000;
  std::uint64_t elite_candidates = 10;
  std::uint64_t elite_episodes = 10;
  std::uint64_t reference_steps = 1000000;
};

struct DataEfficiency {
  std::uint64_t per_generation = 0;  // N*T + candidates*episodes*T
  std::uint64_t total = 0;           // generations * per_generation
  double gamma = 0.0;                // total / reference_steps
};

DataEfficiency data_efficiency(const EfficiencyInputs& in);

// One row of the energy report.
struct EnergyRow {
  std::string task;
  double e_infer_dpn = 0.0;
  double e_infer_spn = 0.0;
  double infer_ratio = 0.0;
  double e_optim_ppo = 0.0;
  double e_optim_ga = 0.0;
  double optim_ratio = 0.0;
  double gamma = 0.0;
};

// PPO pass counts for a 1e6-step run: 1e6 collection forwards plus 25 epochs
// over every batch, for both policy and value network.
OptimizationCounts default_ppo_counts();

// Builds a row; GA forward passes equal the environment steps consumed.
EnergyRow make_row(const std::string& task, const NetworkShape& shape, double e_infer_spn,
                   const OptimizationCounts& ppo, const DataEfficiency& efficiency,
                   const EnergyConstants& k = {});

// The three continuous-control rows using the published per-task inputs
// (SPN inference energies, generations-to-target, pass counts).
std::vector<EnergyRow> published_rows();

// CSV with header
// task,E_infer_dpn,E_infer_spn,infer_ratio,E_optim_ppo,E_optim_ga,optim_ratio,gamma
std::string format_table(const std::vector<EnergyRow>& rows);

}  // namespace spn::energy

#endif  // SPN_ENERGY_HPP_
