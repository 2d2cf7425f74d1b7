#include "spn/network.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "spn/error.hpp"
#include "spn/neuron.hpp"
#include "spn/rng.hpp"

namespace spn {

namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

std::uint8_t keep(double score, double threshold) {
  return sigmoid(score) >= threshold ? 1 : 0;
}

void check_threshold(double threshold) {
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "score threshold must lie in (0, 1), got " +
                    std::to_string(threshold));
  }
}

void fill_uniform(Matrix& m, double bound, Rng& rng) {
  std::uniform_real_distribution<double> dist(-bound, bound);
  for (double& w : m.data) w = dist(rng);
}

}  // namespace

void NetworkShape::validate() const {
  if (inputs < 1 || hidden < 1 || outputs < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "network dimensions must all be >= 1");
  }
}

void NeuronConfig::validate() const {
  if (time_window < 1) {
    throw Error(ErrorCode::kInvalidArgument, "time_window must be >= 1");
  }
  if (!(decay > 0.0 && decay <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "decay must lie in (0, 1]");
  }
  if (std::isnan(v_th) || !std::isfinite(v_rest) || !std::isfinite(v_reset)) {
    throw Error(ErrorCode::kInvalidArgument, "neuron potentials must be finite");
  }
}

NetworkShape FixedWeights::shape() const {
  return {layer1.rows, layer1.cols, layer2.cols};
}

void FixedWeights::validate() const {
  if (layer1.cols != layer2.rows) {
    throw Error(ErrorCode::kShapeMismatch,
                "weight matrices disagree on the middle layer size");
  }
  shape().validate();
  const auto finite = [](double w) { return std::isfinite(w); };
  if (!std::all_of(layer1.data.begin(), layer1.data.end(), finite) ||
      !std::all_of(layer2.data.begin(), layer2.data.end(), finite)) {
    throw Error(ErrorCode::kNonFinite, "weights must be finite");
  }
}

FixedWeights FixedWeights::random(const NetworkShape& shape, std::uint64_t seed,
                                  double input_gain) {
  shape.validate();
  if (!(input_gain > 0.0) || !std::isfinite(input_gain)) {
    throw Error(ErrorCode::kInvalidArgument, "input gain must be positive and finite");
  }
  Rng rng = make_stream(seed, StreamTag::kWeights);
  FixedWeights w{Matrix(shape.inputs, shape.hidden),
                 Matrix(shape.hidden, shape.outputs)};
  fill_uniform(w.layer1, input_gain / std::sqrt(double(shape.inputs)), rng);
  fill_uniform(w.layer2, 1.0 / std::sqrt(double(shape.hidden)), rng);
  return w;
}

ConnectionMask ConnectionMask::all(const NetworkShape& shape, bool connected) {
  const std::uint8_t v = connected ? 1 : 0;
  return {std::vector<std::uint8_t>(shape.layer1_size(), v),
          std::vector<std::uint8_t>(shape.layer2_size(), v), shape};
}

std::size_t ConnectionMask::connection_count() const {
  return std::count(layer1.begin(), layer1.end(), 1) +
         std::count(layer2.begin(), layer2.end(), 1);
}

ConnectionMask derive_mask(const Matrix& scores1, const Matrix& scores2,
                           double score_threshold) {
  if (scores1.cols != scores2.rows) {
    throw Error(ErrorCode::kShapeMismatch,
                "score matrices disagree on the middle layer size (" +
                    std::to_string(scores1.cols) + " vs " +
                    std::to_string(scores2.rows) + ")");
  }
  const NetworkShape shape{scores1.rows, scores1.cols, scores2.cols};
  shape.validate();
  std::vector<double> flat(scores1.data);
  flat.insert(flat.end(), scores2.data.begin(), scores2.data.end());
  return derive_mask(flat, shape, score_threshold);
}

ConnectionMask derive_mask(std::span<const double> scores,
                           const NetworkShape& shape, double score_threshold) {
  check_threshold(score_threshold);
  if (scores.size() != shape.parameter_count()) {
    throw Error(ErrorCode::kShapeMismatch,
                "expected " + std::to_string(shape.parameter_count()) +
                    " connection scores, got " + std::to_string(scores.size()));
  }
  ConnectionMask mask;
  mask.shape = shape;
  mask.layer1.resize(shape.layer1_size());
  mask.layer2.resize(shape.layer2_size());
  const std::size_t split = shape.layer1_size();
  for (std::size_t i = 0; i < split; ++i) {
    mask.layer1[i] = keep(scores[i], score_threshold);
  }
  for (std::size_t i = 0; i < mask.layer2.size(); ++i) {
    mask.layer2[i] = keep(scores[split + i], score_threshold);
  }
  return mask;
}

std::size_t argmax(std::span<const double> values) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < values.size(); ++k) {
    if (values[k] > values[best]) best = k;
  }
  return best;
}

Action decode_action(std::span<const double> motor_peak, ActionKind kind) {
  if (kind == ActionKind::kDiscrete) return DiscreteAction{argmax(motor_peak)};
  return ContinuousAction(motor_peak.begin(), motor_peak.end());
}

SpikingPolicy::SpikingPolicy(const FixedWeights& weights,
                             const ConnectionMask& mask,
                             const NeuronConfig& cfg)
    : shape_(weights.shape()), cfg_(cfg) {
  weights.validate();
  cfg.validate();
  if (!(mask.shape == shape_) || mask.layer1.size() != shape_.layer1_size() ||
      mask.layer2.size() != shape_.layer2_size()) {
    throw Error(ErrorCode::kShapeMismatch,
                "connection mask does not match the weight shape");
  }
  const auto [n, h, m] = shape_;
  input_synapses_.assign(h * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < h; ++j) {
      if (mask.layer1[i * h + j]) input_synapses_[j * n + i] = weights.layer1(i, j);
    }
  }
  output_synapses_.assign(h * m, 0.0);
  for (std::size_t j = 0; j < h; ++j) {
    for (std::size_t k = 0; k < m; ++k) {
      if (mask.layer2[j * m + k]) output_synapses_[j * m + k] = weights.layer2(j, k);
    }
  }
}

Inference SpikingPolicy::infer(std::span<const double> obs,
                               InferenceTrace* trace) const {
  const auto [n, h, m] = shape_;
  if (obs.size() != n) {
    throw Error(ErrorCode::kShapeMismatch,
                "observation has " + std::to_string(obs.size()) +
                    " entries, network expects " + std::to_string(n));
  }
  for (double o : obs) {
    if (!std::isfinite(o)) {
      throw Error(ErrorCode::kNonFinite, "observation contains non-finite values");
    }
  }

  // The observation is held constant over the window, so the sensory layer
  // is evaluated once.
  std::vector<double> middle_current(h, 0.0);
  for (std::size_t j = 0; j < h; ++j) {
    const double* row = &input_synapses_[j * n];
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += row[i] * obs[i];
    middle_current[j] = acc;
  }

  std::vector<double> v1(h, 0.0);
  std::vector<std::uint8_t> s1(h, 0);
  std::vector<double> v2(m, 0.0);
  std::vector<double> motor_current(m);
  Inference out;
  out.motor_peak.assign(m, 0.0);
  out.tally.inferences = 1;

  for (int tau = 0; tau < cfg_.time_window; ++tau) {
    lif_step(v1, s1, middle_current, cfg_);
    // Event-driven accumulate: only firing neurons touch the motor layer.
    std::fill(motor_current.begin(), motor_current.end(), 0.0);
    for (std::size_t j = 0; j < h; ++j) {
      if (!s1[j]) continue;
      ++out.tally.middle_spikes;
      const double* row = &output_synapses_[j * m];
      for (std::size_t k = 0; k < m; ++k) motor_current[k] += row[k];
    }
    li_step(v2, motor_current, cfg_);
    for (std::size_t k = 0; k < m; ++k) {
      out.motor_peak[k] = tau == 0 ? v2[k] : std::max(out.motor_peak[k], v2[k]);
    }
    if (trace) {
      trace->middle_potential.push_back(v1);
      trace->middle_spikes.push_back(s1);
      trace->motor_potential.push_back(v2);
    }
  }
  return out;
}

std::pair<Action, SpikeTally> SpikingPolicy::act(std::span<const double> obs,
                                                 ActionKind kind) const {
  Inference inf = infer(obs);
  return {decode_action(inf.motor_peak, kind), inf.tally};
}

std::pair<Action, SpikeTally> forward(std::span<const double> obs,
                                      const FixedWeights& weights,
                                      const ConnectionMask& mask,
                                      const NeuronConfig& cfg, ActionKind kind) {
  return SpikingPolicy(weights, mask, cfg).act(obs, kind);
}

std::vector<double> dense_reference_forward(std::span<const double> obs,
                                            const FixedWeights& weights) {
  weights.validate();
  const auto [n, h, m] = weights.shape();
  if (obs.size() != n) {
    throw Error(ErrorCode::kShapeMismatch,
                "observation has " + std::to_string(obs.size()) +
                    " entries, network expects " + std::to_string(n));
  }
  std::vector<double> hidden(h, 0.0);
  for (std::size_t j = 0; j < h; ++j) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += weights.layer1(i, j) * obs[i];
    hidden[j] = std::max(acc, 0.0);
  }
  std::vector<double> out(m, 0.0);
  for (std::size_t k = 0; k < m; ++k) {
    double acc = 0.0;
    for (std::size_t j = 0; j < h; ++j) acc += weights.layer2(j, k) * hidden[j];
    out[k] = std::tanh(acc);
  }
  return out;
}

}  // namespace spn
