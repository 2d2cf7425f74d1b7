#ifndef SPN_CHECKPOINT_HPP_
#define SPN_CHECKPOINT_HPP_

#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"
#include "spn/environment.hpp"
#include "spn/genome.hpp"

namespace spn {

// A persisted elite: enough to rebuild the exact policy without the run.
struct Checkpoint {
  std::string env;  // locator the elite was evolved on
  EnvSpec env_spec;
  int run = 0;
  int generation = 0;
  std::size_t genome_id = 0;
  double elite_mean_return = 0.0;
  GaConfig ga;
  SpnModel model;
  Genome genome;
};

// Weight matrices with at most this many entries are written inline; larger
// models are stored by seed only. Loading accepts both.
inline constexpr std::size_t kInlineWeightLimit = 4096;

nlohmann::json checkpoint_to_json(const Checkpoint& ckpt);
Checkpoint checkpoint_from_json(const nlohmann::json& doc);

void save_checkpoint(const Checkpoint& ckpt, const std::string& path);
Checkpoint load_checkpoint(const std::string& path);

nlohmann::json spec_to_json(const EnvSpec& spec);
EnvSpec spec_from_json(const nlohmann::json& doc);

}  // namespace spn

#endif  // SPN_CHECKPOINT_HPP_
