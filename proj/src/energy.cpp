#include "spn/energy.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include "spn/error.hpp"

namespace spn::energy {

std::vector<LayerOpCount> dense_layers(const NetworkShape& shape, bool value_net) {
  shape.validate();
  return {{shape.inputs, shape.hidden, 1.0},
          {shape.hidden, value_net ? std::size_t{1} : shape.outputs, 1.0}};
}

double dpn_inference_energy(const NetworkShape& shape, bool value_net,
                            const EnergyConstants& k) {
  double ops = 0.0;
  for (const auto& layer : dense_layers(shape, value_net)) ops += double(layer.dense_ops());
  return ops * k.e_mac;
}

double spn_inference_energy(const NetworkShape& shape, double rate,
                            const EnergyConstants& k, int time_window) {
  shape.validate();
  if (!(rate >= 0.0 && rate <= double(time_window))) {
    throw Error(ErrorCode::kInvalidArgument,
                "spike rate must lie in [0, " + std::to_string(time_window) + "]");
  }
  const double input_ops = double(shape.inputs) * double(shape.hidden);
  const double spiking_ops = rate * double(shape.hidden) * double(shape.outputs);
  return input_ops * k.e_mac + spiking_ops * k.e_ac;
}

double measure_rate(const SpikeTally& tally, std::size_t hidden) {
  if (tally.inferences == 0) {
    throw Error(ErrorCode::kInvalidArgument, "no inferences recorded");
  }
  if (hidden == 0) throw Error(ErrorCode::kInvalidArgument, "hidden size is zero");
  return double(tally.middle_spikes) / (double(hidden) * double(tally.inferences));
}

OptimizationEnergy optimization_energy(const OptimizationCounts& c, double e_dpn,
                                       double e_dvn, double e_spn) {
  return {e_dpn * (c.dpn_forward + c.dpn_backward) + e_dvn * (c.dvn_forward + c.dvn_backward),
          e_spn * c.spn_forward};
}

DataEfficiency data_efficiency(const EfficiencyInputs& in) {
  if (in.population == 0 || in.episode_length == 0 || in.reference_steps == 0) {
    throw Error(ErrorCode::kInvalidArgument, "efficiency inputs must be positive");
  }
  DataEfficiency d;
  d.per_generation = in.population * in.episode_length +
                     in.elite_candidates * in.elite_episodes * in.episode_length;
  d.total = in.generations * d.per_generation;
  d.gamma = double(d.total) / double(in.reference_steps);
  return d;
}

OptimizationCounts default_ppo_counts() {
  // 1e6 collection passes + 25 epochs over 1e6 samples.
  return {2.6e7, 2.5e7, 2.6e7, 2.5e7, 0.0};
}

EnergyRow make_row(const std::string& task, const NetworkShape& shape, double e_infer_spn,
                   const OptimizationCounts& ppo, const DataEfficiency& efficiency,
                   const EnergyConstants& k) {
  EnergyRow row;
  row.task = task;
  row.e_infer_dpn = dpn_inference_energy(shape, false, k);
  row.e_infer_spn = e_infer_spn;
  row.infer_ratio = row.e_infer_dpn / row.e_infer_spn;
  OptimizationCounts counts = ppo;
  counts.spn_forward = double(efficiency.total);
  const auto opt = optimization_energy(counts, row.e_infer_dpn,
                                       dpn_inference_energy(shape, true, k), e_infer_spn);
  row.e_optim_ppo = opt.ppo;
  row.e_optim_ga = opt.ga;
  row.optim_ratio = opt.ratio();
  row.gamma = efficiency.gamma;
  return row;
}

std::vector<EnergyRow> published_rows() {
  struct Task {
    const char* name;
    NetworkShape shape;
    double e_spn;
    std::uint64_t generations;
  };
  const Task tasks[] = {
      {"HalfCheetah-v2", {17, 64, 6}, 5.2e3, 61},
      {"Swimmer-v2", {8, 64, 2}, 2.41e3, 18},
      {"HumanoidStandup-v2", {376, 64, 17}, 1.1e5, 4},
  };
  std::vector<EnergyRow> rows;
  for (const Task& t : tasks) {
    EfficiencyInputs in;
    in.generations = t.generations;
    rows.push_back(make_row(t.name, t.shape, t.e_spn, default_ppo_counts(),
                            data_efficiency(in)));
  }
  return rows;
}

std::string format_table(const std::vector<EnergyRow>& rows) {
  std::ostringstream os;
  os << "task,E_infer_dpn,E_infer_spn,infer_ratio,E_optim_ppo,E_optim_ga,optim_ratio,gamma\n";
  os << std::setprecision(10);
  for (const auto& r : rows) {
    os << r.task << ',' << r.e_infer_dpn << ',' << r.e_infer_spn << ',' << r.infer_ratio << ','
       << r.e_optim_ppo << ',' << r.e_optim_ga << ',' << r.optim_ratio << ',' << r.gamma << '\n';
  }
  return os.str();
}

}  // namespace spn::energy
