#include "spn/genome.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "spn/error.hpp"

namespace spn {

std::string to_string(GenomeMode mode) {
  return mode == GenomeMode::kConnections ? "connections" : "weights";
}

GenomeMode genome_mode_from_string(const std::string& s) {
  if (s == "connections") return GenomeMode::kConnections;
  if (s == "weights") return GenomeMode::kWeights;
  throw Error(ErrorCode::kConfig, "unknown genome mode '" + s + "'");
}

void GaConfig::validate() const {
  if (generations < 1) throw Error(ErrorCode::kConfig, "generations must be >= 1");
  if (population < 2 || population % 2 != 0) {
    throw Error(ErrorCode::kConfig,
                "population must be a positive even number (mirrored pairs), got " +
                    std::to_string(population));
  }
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw Error(ErrorCode::kConfig, "sigma must be finite and non-negative");
  }
  if (!(truncation > 0.0 && truncation <= 1.0)) {
    throw Error(ErrorCode::kConfig, "truncation ratio must lie in (0, 1]");
  }
  if (!(score_threshold > 0.0 && score_threshold < 1.0)) {
    throw Error(ErrorCode::kConfig, "score threshold must lie in (0, 1)");
  }
  if (elite_candidates < 1 || elite_candidates > population) {
    throw Error(ErrorCode::kConfig,
                "elite_candidates must lie in [1, population], got " +
                    std::to_string(elite_candidates));
  }
  if (elite_episodes < 1 || fitness_episodes < 1) {
    throw Error(ErrorCode::kConfig, "episode counts must be >= 1");
  }
}

std::size_t GaConfig::parent_count() const {
  const auto k = static_cast<std::size_t>(std::ceil(truncation * double(population)));
  return std::clamp<std::size_t>(k, 1, population);
}

SpnModel SpnModel::create(const NetworkShape& shape, const NeuronConfig& neuron,
                          std::uint64_t weight_seed, double input_gain) {
  shape.validate();
  neuron.validate();
  return {shape, neuron, FixedWeights::random(shape, weight_seed, input_gain), weight_seed,
          input_gain};
}

std::vector<Genome> init_population(const GaConfig& cfg, const NetworkShape& shape,
                                    std::uint64_t seed, GenomeMode mode) {
  cfg.validate();
  shape.validate();
  const Genome zero{mode, std::vector<double>(shape.parameter_count(), 0.0)};
  std::vector<Genome> pop;
  pop.reserve(cfg.population);
  for (std::size_t k = 0; k < cfg.population / 2; ++k) {
    Rng rng = make_stream(seed, StreamTag::kNoise, 0, k);
    auto [plus, minus] = mutate(zero, cfg.sigma, rng);
    pop.push_back(std::move(plus));
    pop.push_back(std::move(minus));
  }
  return pop;
}

std::pair<Genome, Genome> mutate(const Genome& parent, double sigma, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Genome plus = parent;
  Genome minus = parent;
  for (std::size_t i = 0; i < parent.values.size(); ++i) {
    const double step = sigma * normal(rng);
    plus.values[i] = parent.values[i] + step;
    minus.values[i] = parent.values[i] - step;
  }
  return {std::move(plus), std::move(minus)};
}

SpikingPolicy make_policy(const Genome& genome, const SpnModel& model,
                          double score_threshold) {
  const NetworkShape& shape = model.shape;
  if (genome.values.size() != shape.parameter_count()) {
    throw Error(ErrorCode::kShapeMismatch,
                "genome has " + std::to_string(genome.values.size()) +
                    " values, model needs " + std::to_string(shape.parameter_count()));
  }
  if (genome.mode == GenomeMode::kConnections) {
    return SpikingPolicy(model.weights,
                         derive_mask(genome.values, shape, score_threshold),
                         model.neuron);
  }
  FixedWeights w{Matrix(shape.inputs, shape.hidden), Matrix(shape.hidden, shape.outputs)};
  const auto split = genome.values.begin() + std::ptrdiff_t(shape.layer1_size());
  std::copy(genome.values.begin(), split, w.layer1.data.begin());
  std::copy(split, genome.values.end(), w.layer2.data.begin());
  return SpikingPolicy(w, ConnectionMask::all(shape, true), model.neuron);
}

}  // namespace spn
