#ifndef SPN_TYPES_HPP_
#define SPN_TYPES_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

namespace spn {

// Dense row-major matrix. Small enough that we never need a BLAS here.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c, double fill = 0.0)
      : rows(r), cols(c), data(r * c, fill) {}

  double& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  double operator()(std::size_t r, std::size_t c) const {
    return data[r * cols + c];
  }
  std::size_t size() const { return data.size(); }

  friend bool operator==(const Matrix&, const Matrix&) = default;
};

// Sensory (n) -> middle LIF (h) -> motor LI (m).
struct NetworkShape {
  std::size_t inputs = 1;
  std::size_t hidden = 64;
  std::size_t outputs = 1;

  void validate() const;
  std::size_t layer1_size() const { return inputs * hidden; }
  std::size_t layer2_size() const { return hidden * outputs; }
  std::size_t parameter_count() const { return layer1_size() + layer2_size(); }

  friend bool operator==(const NetworkShape&, const NetworkShape&) = default;
};

struct NeuronConfig {
  int time_window = 4;
  double decay = 0.75;
  double v_th = 0.5;
  double v_rest = 0.0;
  double v_reset = 0.0;

  void validate() const;
  friend bool operator==(const NeuronConfig&, const NeuronConfig&) = default;
};

struct DiscreteAction {
  std::size_t index = 0;
  friend bool operator==(const DiscreteAction&, const DiscreteAction&) = default;
};

using ContinuousAction = std::vector<double>;
using Action = std::variant<DiscreteAction, ContinuousAction>;

enum class ActionKind { kDiscrete, kContinuous };

// Middle-layer spikes accumulated over one or more forward passes.
struct SpikeTally {
  std::uint64_t middle_spikes = 0;
  std::uint64_t inferences = 0;

  SpikeTally& operator+=(const SpikeTally& other) {
    middle_spikes += other.middle_spikes;
    inferences += other.inferences;
    return *this;
  }
  friend bool operator==(const SpikeTally&, const SpikeTally&) = default;
};

using Observation = std::vector<double>;

}  // namespace spn

#endif  // SPN_TYPES_HPP_
