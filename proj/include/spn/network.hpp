#ifndef SPN_NETWORK_HPP_
#define SPN_NETWORK_HPP_

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "spn/types.hpp"

namespace spn {

// Fixed synaptic weights. layer1 is n x h (sensory -> middle), layer2 is
// h x m (middle -> motor). Entry (i, j) is the synapse from i to j.
struct FixedWeights {
  Matrix layer1;
  Matrix layer2;

  NetworkShape shape() const;
  void validate() const;

  // Each entry ~ Uniform(-b, b) with b = 1/sqrt(fan_in), fan_in being the
  // number of upstream neurons of the layer. The sensory layer bound is
  // multiplied by input_gain.
  static FixedWeights random(const NetworkShape& shape, std::uint64_t seed,
                             double input_gain = 1.0);

  friend bool operator==(const FixedWeights&, const FixedWeights&) = default;
};

// Binary connection matrices with the same layout as FixedWeights.
struct ConnectionMask {
  std::vector<std::uint8_t> layer1;
  std::vector<std::uint8_t> layer2;
  NetworkShape shape;

  static ConnectionMask all(const NetworkShape& shape, bool connected);
  std::size_t connection_count() const;

  friend bool operator==(const ConnectionMask&, const ConnectionMask&) = default;
};

// Keeps a synapse iff sigmoid(score) >= score_threshold. The threshold must lie
// in (0, 1).
ConnectionMask derive_mask(const Matrix& scores1, const Matrix& scores2,
                           double score_threshold);

// The same rule on the flat genome layout (layer1 row-major, then layer2).
ConnectionMask derive_mask(std::span<const double> scores,
                           const NetworkShape& shape, double score_threshold);

// Per-step membrane and spike history, filled on request by SpikingPolicy.
struct InferenceTrace {
  std::vector<std::vector<double>> middle_potential;
  std::vector<std::vector<std::uint8_t>> middle_spikes;
  std::vector<std::vector<double>> motor_potential;
};

struct Inference {
  // max over the time window of each motor potential
  std::vector<double> motor_peak;
  SpikeTally tally;
};

// Lowest index wins ties.
std::size_t argmax(std::span<const double> values);

Action decode_action(std::span<const double> motor_peak, ActionKind kind);

// A runnable network: the mask is folded into the weights once at
// construction, so repeated inference is cheap. Immutable and safe to share
// between threads.
class SpikingPolicy {
 public:
  SpikingPolicy(const FixedWeights& weights, const ConnectionMask& mask,
                const NeuronConfig& cfg);

  const NetworkShape& shape() const { return shape_; }
  const NeuronConfig& neuron() const { return cfg_; }

  // Membrane state starts at 0 on every call. Throws on non-finite or
  // wrongly-sized observations.
  Inference infer(std::span<const double> obs,
                  InferenceTrace* trace = nullptr) const;

  std::pair<Action, SpikeTally> act(std::span<const double> obs,
                                    ActionKind kind) const;

 private:
  NetworkShape shape_;
  NeuronConfig cfg_;
  // h x n, row j holds the effective input synapses of middle neuron j
  std::vector<double> input_synapses_;
  // h x m, row j holds the effective output synapses of middle neuron j
  std::vector<double> output_synapses_;
};

std::pair<Action, SpikeTally> forward(std::span<const double> obs,
                                      const FixedWeights& weights,
                                      const ConnectionMask& mask,
                                      const NeuronConfig& cfg, ActionKind kind);

// tanh(W2^T relu(W1^T obs)): the dense ReLU/Tanh network with the same
// topology. Only used to cross-check operation counts.
std::vector<double> dense_reference_forward(std::span<const double> obs,
                                            const FixedWeights& weights);

}  // namespace spn

#endif  // SPN_NETWORK_HPP_
