#ifndef SPN_GENOME_HPP_
#define SPN_GENOME_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "spn/network.hpp"
#include "spn/rng.hpp"
#include "spn/types.hpp"

namespace spn {

// What the evolved vector means. Both modes share the flat layout
// [layer1 (n x h, row-major) | layer2 (h x m, row-major)].
enum class GenomeMode {
  kConnections,  // connection scores; the fixed weights stay untouched
  kWeights,      // the weights themselves, every synapse connected
};

std::string to_string(GenomeMode mode);
GenomeMode genome_mode_from_string(const std::string& s);

struct Genome {
  GenomeMode mode = GenomeMode::kConnections;
  std::vector<double> values;

  friend bool operator==(const Genome&, const Genome&) = default;
};

struct GaConfig {
  int generations = 100;
  std::size_t population = 200;
  double sigma = 0.01;
  double truncation = 0.25;
  double score_threshold = 0.5;
  std::size_t elite_candidates = 10;
  std::size_t elite_episodes = 10;
  std::size_t fitness_episodes = 1;

  void validate() const;
  // ceil(truncation * population)
  std::size_t parent_count() const;
};

// Fixed random weights together with the network constants; a genome turns it
// into a runnable policy.
struct SpnModel {
  NetworkShape shape;
  NeuronConfig neuron;
  FixedWeights weights;
  std::uint64_t weight_seed = 0;
  double input_gain = 1.0;

  static SpnModel create(const NetworkShape& shape, const NeuronConfig& neuron,
                         std::uint64_t weight_seed, double input_gain = 1.0);
};

// N/2 mirrored pairs: pair k is (+sigma*eps_k, -sigma*eps_k) with eps_k drawn
// from the noise stream for (seed, generation 0, k).
std::vector<Genome> init_population(const GaConfig& cfg, const NetworkShape& shape,
                                    std::uint64_t seed,
                                    GenomeMode mode = GenomeMode::kConnections);

// (parent + sigma*eps, parent - sigma*eps) with eps ~ N(0, I) from `rng`.
std::pair<Genome, Genome> mutate(const Genome& parent, double sigma, Rng& rng);

// Connection mode: the model's weights masked by derive_mask(scores).
// Weights mode: the genome's values as weights with every synapse connected.
SpikingPolicy make_policy(const Genome& genome, const SpnModel& model,
                          double score_threshold);

}  // namespace spn

#endif  // SPN_GENOME_HPP_
