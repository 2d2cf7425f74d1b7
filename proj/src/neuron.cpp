#include "spn/neuron.hpp"

#include <cassert>

namespace spn {

void lif_step(std::span<double> potential, std::span<std::uint8_t> spikes,
              std::span<const double> current, const NeuronConfig& cfg) {
  lif_step(potential, spikes, current, cfg, cfg.v_th);
}

void lif_step(std::span<double> potential, std::span<std::uint8_t> spikes,
              std::span<const double> current, const NeuronConfig& cfg,
              double threshold) {
  assert(potential.size() == spikes.size());
  assert(potential.size() == current.size());
  for (std::size_t j = 0; j < potential.size(); ++j) {
    const double prev = spikes[j] ? cfg.v_reset : potential[j];
    const double v = cfg.v_rest + cfg.decay * (prev - cfg.v_rest) + current[j];
    potential[j] = v;
    spikes[j] = v > threshold ? 1 : 0;
  }
}

void li_step(std::span<double> potential, std::span<const double> current,
             const NeuronConfig& cfg) {
  assert(potential.size() == current.size());
  for (std::size_t k = 0; k < potential.size(); ++k) {
    potential[k] =
        cfg.v_rest + cfg.decay * (potential[k] - cfg.v_rest) + current[k];
  }
}

}  // namespace spn
