#pragma once

// Host micro-benchmarks for the two per-block coordinate maps (box
// decomposition with wedge test vs pyramidal closed-form inverse) and for
// a whole-domain read sweep over the linear vs blocked layouts. All
// numbers are machine-local; nothing here asserts a fixed speedup.

#include "tetrablock/costmodel.hpp"

#include <stdexcept>
#include <string>

namespace tetrablock {

/// Raised when a benchmark sample is too short for the host timer to
/// resolve; callers should retry with a larger problem or batch size.
struct BenchResolutionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SampleStats {
    double min_ns = 0.0;
    double mean_ns = 0.0;
    double median_ns = 0.0;
    double stddev_ns = 0.0;
};

struct MapBenchReport {
    u64 n = 0;
    u64 rho = 0;
    u64 samples = 0;
    u64 box_evals = 0;        // grid indices per box sweep, ceil(n/rho)^3
    u64 pyramidal_evals = 0;  // ranks per pyramidal sweep, tetra(ceil(n/rho))
    double beta_ns = 0.0;     // median per-index cost of the box map
    double tau_ns = 0.0;      // median per-rank cost of the pyramidal map
    SampleStats beta_stats;
    SampleStats tau_stats;
    double i_model = 0.0;      // dispatch improvement factor from measured beta/tau
    double i_limit = 0.0;      // its large-n bound 6 beta / tau
    double i_throughput = 0.0; // direct wall-clock sweep ratio box/pyramidal
    u64 checksum_box = 0;        // over valid blocks; must equal the pyramidal one
    u64 checksum_pyramidal = 0;
};

/// Time full dispatch sweeps of both maps. Each sample is batched to at
/// least min_evals map evaluations, timed with a monotonic clock after a
/// discarded warm-up run; results fold into checksums so the work cannot
/// be optimized away. Samples shorter than ~100 timer ticks raise
/// BenchResolutionError.
MapBenchReport bench_maps(u64 n, u64 rho, u64 repetitions, u64 min_evals = 1'000'000);

struct LayoutSweepReport {
    u64 n = 0;
    u64 rho = 0;
    u64 element_bytes = 0;
    u64 samples = 0;
    double linear_bytes_per_s = 0.0;   // pyramid-order traversal, per-element addressing
    double blocked_bytes_per_s = 0.0;  // contiguous streaming over the padded buffer
    double ratio = 0.0;                // blocked over linear
    u64 checksum_linear = 0;
    u64 checksum_blocked = 0;  // padding reads as zero, so the sums match
};

/// Time a read-accumulate sweep over both layouts of the same domain. The
/// linear side walks coordinates and pays the address computation per
/// element; the blocked side streams the whole padded buffer in order.
LayoutSweepReport bench_layout_sweep(u64 n, u64 rho, const WarpModel& model, u64 repetitions);

}  // namespace tetrablock
