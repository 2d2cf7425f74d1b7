#ifndef SPN_CONFIG_HPP_
#define SPN_CONFIG_HPP_

#include <cstdint>
#include <string>

#include "json.hpp"
#include "spn/genome.hpp"
#include "spn/types.hpp"

namespace spn {

// Everything needed to reproduce an experiment. Default-constructed values
// are the standard cart-pole setup; a config document only lists overrides.
struct ExperimentConfig {
  std::string env = "cartpole";  // locator understood by make_env_factory()
  GenomeMode mode = GenomeMode::kConnections;
  GaConfig ga;
  NeuronConfig neuron;
  std::size_t hidden = 64;
  // Multiplier on the sensory weight bound 1/sqrt(n).
  double input_gain = 2.0;
  int runs = 10;
  std::uint64_t seed = 0;
  std::string output_dir = "runs";
  int workers = 0;  // < 1: all hardware threads

  void validate() const;
};

// The "env" entry may be a locator string or an object with exactly one of
// "builtin", "command" or "address" ("host:port").
ExperimentConfig config_from_json(const nlohmann::json& doc);
nlohmann::json config_to_json(const ExperimentConfig& cfg);

ExperimentConfig load_config(const std::string& path);

nlohmann::json to_json(const GaConfig& ga);
nlohmann::json to_json(const NeuronConfig& neuron);
nlohmann::json to_json(const NetworkShape& shape);
GaConfig ga_from_json(const nlohmann::json& doc);
NeuronConfig neuron_from_json(const nlohmann::json& doc);
NetworkShape shape_from_json(const nlohmann::json& doc);

}  // namespace spn

#endif  // SPN_CONFIG_HPP_
