#pragma once

#include <cstdint>
#include <random>

#include <boost/random/bernoulli_distribution.hpp>
#include <boost/random/normal_distribution.hpp>
#include <boost/random/uniform_real_distribution.hpp>

namespace sensguard {

// boost distributions are used instead of std:: ones so that streams are
// identical across standard library implementations.
using Rng = std::mt19937_64;

Rng make_rng(std::uint64_t seed);

// Independent stream for (master seed, index), e.g. one per trial.
Rng derive_stream(std::uint64_t master_seed, std::uint64_t index);

inline double normal(Rng& rng, double sigma = 1.0)
{
    return boost::random::normal_distribution<double>(0.0, sigma)(rng);
}

inline double uniform(Rng& rng, double lo = 0.0, double hi = 1.0)
{
    return boost::random::uniform_real_distribution<double>(lo, hi)(rng);
}

}
