#ifndef SPN_NEURON_HPP_
#define SPN_NEURON_HPP_

#include <cstdint>
#include <span>

#include "spn/types.hpp"

namespace spn {

// One simulation step of a layer of LIF neurons.
//
// `spikes` holds the emissions of the previous step on entry and of this step
// on exit. A neuron that fired on the previous step restarts from v_reset,
// otherwise its potential leaks toward v_rest by the factor `decay`; the input
// current is then added and the neuron fires iff v > v_th (strict). With
// v_rest = v_reset = 0 this is v = g * v * (1 - s) + I.
void lif_step(std::span<double> potential, std::span<std::uint8_t> spikes,
              std::span<const double> current, const NeuronConfig& cfg);

// Same step with the threshold supplied explicitly. lif_step() forwards here
// with cfg.v_th.
void lif_step(std::span<double> potential, std::span<std::uint8_t> spikes,
              std::span<const double> current, const NeuronConfig& cfg,
              double threshold);

// Leaky integration without firing or reset (the motor layer).
void li_step(std::span<double> potential, std::span<const double> current,
             const NeuronConfig& cfg);

}  // namespace spn

#endif  // SPN_NEURON_HPP_
