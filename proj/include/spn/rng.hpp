#ifndef SPN_RNG_HPP_
#define SPN_RNG_HPP_

#include <cstdint>
#include <random>

namespace spn {

using Rng = std::mt19937_64;

// Purpose tags keep streams for different consumers disjoint even when they
// share (seed, generation, index).
enum class StreamTag : std::uint32_t {
  kWeights = 1,
  kNoise = 2,
  kParents = 3,
  kFitness = 4,
  kElite = 5,
  kRun = 6,
  kEval = 7,
};

// Independent generator for (seed, tag, generation, index). The mapping only
// depends on its arguments, so evaluation order never changes what a stream
// produces.
Rng make_stream(std::uint64_t seed, StreamTag tag, std::uint64_t generation = 0,
                std::uint64_t index = 0);

// Seeds handed to environments are kept within 31 bits so that remote
// simulators with signed 32-bit seeding accept them.
std::uint64_t draw_env_seed(Rng& rng);

}  // namespace spn

#endif  // SPN_RNG_HPP_
