#include "sensguard/rng.hpp"

namespace sensguard {

Rng make_rng(std::uint64_t seed)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
    return Rng(seq);
}

Rng derive_stream(std::uint64_t master_seed, std::uint64_t index)
{
    std::seed_seq seq{static_cast<std::uint32_t>(master_seed),
                      static_cast<std::uint32_t>(master_seed >> 32),
                      static_cast<std::uint32_t>(index),
                      static_cast<std::uint32_t>(index >> 32),
                      0x5eu};
    return Rng(seq);
}

}
