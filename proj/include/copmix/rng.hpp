#pragma once

#include <cstdint>
#include <random>

namespace copmix {

/// The only random source in the library. Every sampler takes one explicitly.
using Rng = std::mt19937_64;

/// Uniform double in [0,1) from the top 53 bits. Spelled out rather than using
/// std::uniform_real_distribution so streams are identical across standard
/// libraries.
inline double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace copmix
