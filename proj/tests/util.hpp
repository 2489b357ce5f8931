#pragma once

// Shared test plumbing: a deterministic bounded-draw helper so randomized
// checks reproduce bit-for-bit across platforms (the standard library's
// distributions are implementation-defined).

#include <cstdint>
#include <random>

namespace testutil {

inline std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t bound) {
    const unsigned __int128 wide = static_cast<unsigned __int128>(rng()) * bound;
    return static_cast<std::uint64_t>(wide >> 64);
}

}  // namespace testutil
