#include "spn/rng.hpp"

namespace spn {

Rng make_stream(std::uint64_t seed, StreamTag tag, std::uint64_t generation,
                std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(tag),
                    static_cast<std::uint32_t>(generation),
                    static_cast<std::uint32_t>(generation >> 32),
                    static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32)};
  return Rng(seq);
}

std::uint64_t draw_env_seed(Rng& rng) { return rng() & 0x7fffffffULL; }

}  // namespace spn
