#pragma once

// Closed-form cost model for warp-granular memory access over tetrahedral
// domains: aligned-row/warp counting per triangular layer, linear vs
// blocked access cost, and the dispatch improvement factor. All outputs
// are model values; the simulator module provides exact counted ground
// truth to compare against.

#include "tetrablock/core.hpp"

namespace tetrablock {

/// Hardware abstraction for the model: warp width, element size, the
/// k-byte transaction/alignment granularity, and the misaligned-access
/// cost multiplier.
struct WarpModel {
    u64 omega = 32;      // threads per warp
    u64 element_bytes = 4;
    u64 alignment = 128; // transaction size k in bytes
    double alpha = 2.0;  // cost multiplier for a misaligned warp

    void validate() const {
        if (omega == 0) throw std::invalid_argument("WarpModel: omega must be >= 1");
        if (element_bytes == 0) throw std::invalid_argument("WarpModel: element size must be >= 1");
        if (alignment == 0 || alignment % 2 != 0)
            throw std::invalid_argument("WarpModel: alignment must be positive and even");
        if (!(alpha >= 1.0)) throw std::invalid_argument("WarpModel: alpha must be >= 1");
    }
};

/// Rows of one triangular layer of side n whose start can sit on a k-byte
/// boundary under the model's counting. General form, valid for odd k too;
/// for even k it reduces to floor(n / 2k).
u64 aligned_rows(u64 n, u64 k);

/// Aligned warps in one triangular layer: R(R+1) with R = aligned_rows.
/// Verifies the model's own upper bound n^2/4k^2 + n/2k exactly.
u64 aligned_warps(u64 n, u64 k);

/// Fraction of aligned warps in a layer of side n: W / ceil(n(n+1)/2k).
/// Verifies the model's bound F < 1/2k + 1/n.
double aligned_fraction(u64 n, u64 k);

/// Access cost of one full sweep over the linear layout,
/// (T_n / k) * (F + alpha (1 - F)) with F taken at the maximal layer.
double cost_linear(u64 n, u64 k, double alpha);

/// Per-layer-summed variant of cost_linear: sum over layers i = 1..n of
/// (tri(i) / k) * (F_i + alpha (1 - F_i)). Exposed for comparison with the
/// single-fraction form; the two agree asymptotically.
double cost_linear_layered(u64 n, u64 k, double alpha);

struct BlockedCost {
    double model;  // (T_n + n^2 rho^3) / k, the coarse additive-overhead model
    double exact;  // tetra(ceil(n/rho)) * rho^3 / k, the layout's true slot count over k
};

/// Access cost of one full sweep over the blocked layout (fully aligned by
/// construction), under both the coarse model and the exact slot count.
BlockedCost cost_blocked(u64 n, u64 k, u64 rho);

struct ReorgSpeedup {
    double ratio;     // cost_linear(alpha=2) / (T_n / k), the model quotient
    double approx;    // 2 - F, the asymptotic form
    double fraction;  // F itself, for reporting
};

/// Improvement factor of re-organizing linear storage into aligned blocks,
/// at alpha = 2: the quotient of the linear sweep cost over the fully
/// aligned cost T_n / k (block padding overhead excluded, as in the model's
/// asymptotic step). Equals 2 - F up to rounding and is always <= 2.
ReorgSpeedup reorg_speedup(u64 n, u64 k);

struct MapSpeedup {
    double factor;  // 6 beta n^3 / (tau (n^3 + 3n^2 + 2n))
    double limit;   // 6 beta / tau, the n -> infinity bound
};

/// Modeled speedup of pyramidal over box thread dispatch given measured
/// per-block map costs beta (box) and tau (pyramidal). The block edge
/// cancels out of the ratio and is not a parameter.
MapSpeedup map_speedup(u64 n, double beta, double tau);

}  // namespace tetrablock
