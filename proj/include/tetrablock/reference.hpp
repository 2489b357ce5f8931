#pragma once

// Independent slow-path implementations used to cross-check the closed-form
// inverse maps. Pure integer binary search, no floating point anywhere.

#include "tetrablock/core.hpp"

namespace tetrablock::reference {

/// Largest z with tetra(z) <= lambda, by binary search over exact values.
inline u64 layer_of_bsearch(u64 lambda) {
    u64 lo = 0, hi = kMaxTetraArg;
    while (lo < hi) {
        const u64 mid = lo + (hi - lo + 1) / 2;
        if (tetra(mid) <= lambda) lo = mid;
        else hi = mid - 1;
    }
    return lo;
}

/// Largest y with tri(y) <= lambda2, by binary search over exact values.
inline u64 row_of_bsearch(u64 lambda2) {
    u64 lo = 0, hi = kMaxTriArg;
    while (lo < hi) {
        const u64 mid = lo + (hi - lo + 1) / 2;
        if (tri(mid) <= lambda2) lo = mid;
        else hi = mid - 1;
    }
    return lo;
}

/// Inverse map through the binary-search routes only.
inline Coord3 unrank3_bsearch(u64 lambda, const PyramidShape& shape) {
    if (lambda >= shape.element_count) throw std::out_of_range("unrank3_bsearch: rank outside domain");
    const u64 z = layer_of_bsearch(lambda);
    const u64 rem = lambda - tetra(z);
    const u64 y = row_of_bsearch(rem);
    return Coord3{rem - tri(y), y, z};
}

}  // namespace tetrablock::reference
