#ifndef SPN_POPULATION_HPP_
#define SPN_POPULATION_HPP_

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "spn/environment.hpp"
#include "spn/network.hpp"

namespace spn {

// One episode to run: which policy and which environment seed.
struct EpisodeJob {
  std::size_t policy = 0;
  std::uint64_t env_seed = 0;
};

struct EpisodeOutcome {
  double total_return = 0.0;
  std::size_t length = 0;
  SpikeTally tally;
};

// One environment per worker. Workers never share an instance.
class EnvPool {
 public:
  EnvPool(const EnvFactory& factory, int workers);

  int size() const { return static_cast<int>(envs_.size()); }
  Environment& operator[](int worker) { return *envs_[std::size_t(worker)]; }
  const EnvSpec& spec() const { return envs_.front()->spec(); }

 private:
  std::vector<std::unique_ptr<Environment>> envs_;
};

// Resolves a worker-count request: values < 1 mean "all hardware threads".
int resolve_workers(int requested);

// Runs one episode of `policy` and tallies its spikes.
EpisodeOutcome run_episode(const SpikingPolicy& policy, Environment& env,
                           std::uint64_t env_seed);

// Serial reference: jobs in index order on a single environment.
std::vector<EpisodeOutcome> run_episodes_serial(std::span<const SpikingPolicy> policies,
                                                std::span<const EpisodeJob> jobs,
                                                Environment& env);

// OpenMP version over the pool, one thread per environment. Outcome i always
// belongs to job i, so results are identical to the serial reference for any
// pool size. If jobs fail, the error of the lowest failing job is rethrown.
std::vector<EpisodeOutcome> run_episodes_parallel(std::span<const SpikingPolicy> policies,
                                                  std::span<const EpisodeJob> jobs,
                                                  EnvPool& pool);

}  // namespace spn

#endif  // SPN_POPULATION_HPP_
