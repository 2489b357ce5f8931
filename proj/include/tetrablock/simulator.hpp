#pragma once

// Exact-counting access simulator: replays warp-granular traces over the
// linear and blocked layouts and counts k-byte transactions, plus thread
// occupancy and dispatch-coverage checks for box vs pyramidal launches.
// Where the analytic cost model estimates, this module counts.

#include "tetrablock/costmodel.hpp"
#include "tetrablock/layout.hpp"

#include <vector>

namespace tetrablock {

enum class LayoutKind { linear, blocked };
enum class AccessPattern { sweep_once, stencil6 };
enum class GridStrategy { box, pyramidal };

struct TransactionReport {
    u64 warps_total = 0;
    u64 warps_aligned = 0;
    u64 transactions = 0;
    u64 ideal_transactions = 0;
    double measured_fraction = 0.0;   // warps_aligned / warps_total
    double measured_cost_ratio = 0.0; // transactions / ideal_transactions
};

/// Replay one access pattern over the chosen layout and count exactly.
///
/// Thread assignment: elements in layout-linear order, omega per warp. In
/// the linear layout a new row starts a new warp (row-granular warp
/// formation, matching the per-row alignment accounting of the cost
/// model); in the blocked layout warps run contiguously over the whole
/// padded buffer and sweeps fetch padded slots along with their blocks.
///
/// A warp counts as aligned iff every access it issues starts on a k-byte
/// boundary and touches the minimal number of k-byte segments for the
/// bytes it covers; partial warps at region ends count as full warps for
/// fraction purposes. In stencil mode a warp issues one access per tap
/// (self plus up to six neighbors, boundary taps skipped) and warps whose
/// threads are all padding issue nothing and are not counted.
///
/// ideal_transactions is the fully packed floor: ceil(T_n b / k) for the
/// linear sweep, ceil(slots b / k) for the blocked sweep, and the sum of
/// per-access minimal segment counts for stencils.
TransactionReport simulate_warps(u64 n, LayoutKind kind, const WarpModel& model,
                                 AccessPattern pattern, u64 rho = 4);

struct OccupancyReport {
    u64 blocks_launched = 0;
    u64 threads_launched = 0;
    u64 threads_useful = 0;  // elements of the domain, identical either way
    u64 threads_wasted = 0;
    double waste_ratio = 0.0;
};

/// Thread accounting for a kernel launch over blocks of edge rho using the
/// full bounding-box grid or the pyramidal (block-ranked) grid.
OccupancyReport simulate_occupancy(u64 n, u64 rho, GridStrategy strategy);

/// Valid block coordinates produced by a dispatch, in emission order. The
/// box strategy enumerates all ceil(n/rho)^3 grid indices through the box
/// decomposition and drops blocks failing x <= y <= z; the pyramidal
/// strategy enumerates tetra(ceil(n/rho)) block ranks through the inverse
/// map. Both emit in (z, y, x)-lexicographic order, so equal dispatches
/// compare equal elementwise.
std::vector<Coord3> simulate_map_dispatch(u64 n, u64 rho, GridStrategy strategy);

struct DispatchCheck {
    bool equal = false;          // same valid-block sequence from both strategies
    u64 box_blocks = 0;          // grid indices the box strategy enumerates
    u64 valid_blocks = 0;        // indices that pass the wedge test
    u64 pyramidal_blocks = 0;    // ranks the pyramidal strategy enumerates
};

/// Streaming equivalence check between the two dispatch strategies; does
/// not materialize the block lists, so it scales to large n. The box side
/// walks the grid in the same index order box_unrank induces.
DispatchCheck check_dispatch_equivalence(u64 n, u64 rho);

}  // namespace tetrablock
