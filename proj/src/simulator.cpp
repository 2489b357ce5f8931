#include "tetrablock/simulator.hpp"

#include <algorithm>
#include <array>

namespace tetrablock {

namespace {

// Tallies warps and k-byte segments. All byte positions handed in are
// bounded by a layout's size_bytes(), which construction already checked,
// so plain u64 arithmetic cannot wrap here.
struct WarpCounter {
    u64 k;
    u64 b;
    u64 warps = 0;
    u64 aligned = 0;
    u64 transactions = 0;

    // One warp accessing `count` consecutive elements starting at a byte.
    void add_contiguous(u64 first_byte, u64 count) {
        const u64 bytes = count * b;
        const u64 segments = (first_byte + bytes - 1) / k - first_byte / k + 1;
        ++warps;
        transactions += segments;
        if (first_byte % k == 0 && segments == ceil_div(bytes, k)) ++aligned;
    }

    // A maximal run of `count` elements from `start_byte`, chopped into
    // warps of up to `omega` threads.
    void add_region(u64 start_byte, u64 count, u64 omega) {
        for (u64 i = 0; i < count; i += omega) {
            add_contiguous(start_byte + i * b, std::min(omega, count - i));
        }
    }
};

// Segment count of one scattered warp access; addresses arrive in the
// layout's traversal order and are sorted defensively. After sorting both
// the first and last touched segment ids are nondecreasing, so counting
// distinct segments is a single merge pass.
u64 scattered_segments(std::vector<u64>& addrs, u64 k, u64 b) {
    std::sort(addrs.begin(), addrs.end());
    u64 segments = 0;
    u64 next_unseen = 0;  // smallest uncounted segment id, meaningful once segments > 0
    for (const u64 a : addrs) {
        const u64 first = a / k;
        const u64 last = (a + b - 1) / k;
        const u64 from = segments == 0 ? first : std::max(first, next_unseen);
        if (last >= from) {
            segments += last - from + 1;
            next_unseen = last + 1;
        }
    }
    return segments;
}

// One warp of a stencil trace: up to seven accesses (self + six taps).
struct StencilWarp {
    std::array<std::vector<u64>, 7> taps;

    bool any() const {
        for (const auto& t : taps)
            if (!t.empty()) return true;
        return false;
    }
    void clear() {
        for (auto& t : taps) t.clear();
    }
};

struct StencilCounter {
    u64 k;
    u64 b;
    u64 warps = 0;
    u64 aligned = 0;
    u64 transactions = 0;
    u64 ideal = 0;

    void flush(StencilWarp& w) {
        if (!w.any()) {
            w.clear();
            return;
        }
        bool warp_aligned = true;
        for (auto& addrs : w.taps) {
            if (addrs.empty()) continue;
            const u64 segments = scattered_segments(addrs, k, b);
            const u64 minimal = ceil_div(addrs.size() * b, k);
            transactions += segments;
            ideal += minimal;
            if (addrs.front() % k != 0 || segments != minimal) warp_aligned = false;
        }
        ++warps;
        if (warp_aligned) ++aligned;
        w.clear();
    }
};

template <typename Layout>
void push_taps(StencilWarp& w, const Coord3& c, const Layout& lay, const PyramidShape& shape) {
    w.taps[0].push_back(lay.address(c));
    for (int s = 0; s < 6; ++s) {
        if (const auto nb = neighbor(c, kAllSteps[s], shape)) {
            w.taps[s + 1].push_back(lay.address(*nb));
        }
    }
}

TransactionReport finish(u64 warps, u64 aligned, u64 transactions, u64 ideal) {
    TransactionReport r;
    r.warps_total = warps;
    r.warps_aligned = aligned;
    r.transactions = transactions;
    r.ideal_transactions = ideal;
    r.measured_fraction = warps == 0 ? 0.0 : static_cast<double>(aligned) / static_cast<double>(warps);
    r.measured_cost_ratio =
        ideal == 0 ? 0.0 : static_cast<double>(transactions) / static_cast<double>(ideal);
    return r;
}

TransactionReport sweep_linear(u64 n, const WarpModel& m) {
    const PyramidShape shape(n);
    WarpCounter c{m.alignment, m.element_bytes};
    for (u64 z = 0; z < n; ++z) {
        const u64 layer_base = tetra(z);
        for (u64 y = 0; y <= z; ++y) {
            c.add_region((layer_base + tri(y)) * m.element_bytes, y + 1, m.omega);
        }
    }
    const u64 ideal = shape.element_count == 0
                          ? 0
                          : ceil_div(shape.element_count * m.element_bytes, m.alignment);
    return finish(c.warps, c.aligned, c.transactions, ideal);
}

TransactionReport sweep_blocked(u64 n, u64 rho, const WarpModel& m) {
    const BlockedLayout lay(BlockGrid(n, rho), m.element_bytes);
    const u64 slots = lay.grid.total_slots();
    WarpCounter c{m.alignment, m.element_bytes};
    c.add_region(0, slots, m.omega);
    const u64 ideal = slots == 0 ? 0 : ceil_div(slots * m.element_bytes, m.alignment);
    return finish(c.warps, c.aligned, c.transactions, ideal);
}

TransactionReport stencil_linear(u64 n, const WarpModel& m) {
    const PyramidShape shape(n);
    const LinearLayout lay(shape, m.element_bytes);
    StencilCounter c{m.alignment, m.element_bytes};
    StencilWarp w;
    for (u64 z = 0; z < n; ++z) {
        for (u64 y = 0; y <= z; ++y) {
            for (u64 x0 = 0; x0 <= y; x0 += m.omega) {
                const u64 end = std::min(y + 1, x0 + m.omega);
                for (u64 x = x0; x < end; ++x) push_taps(w, Coord3{x, y, z}, lay, shape);
                c.flush(w);
            }
        }
    }
    return finish(c.warps, c.aligned, c.transactions, c.ideal);
}

TransactionReport stencil_blocked(u64 n, u64 rho, const WarpModel& m) {
    const PyramidShape shape(n);
    const BlockedLayout lay(BlockGrid(n, rho), m.element_bytes);
    const u64 nb = lay.grid.blocks_per_side;
    StencilCounter c{m.alignment, m.element_bytes};
    StencilWarp w;
    u64 slot = 0;
    for (u64 bz = 0; bz < nb; ++bz) {
        for (u64 by = 0; by <= bz; ++by) {
            for (u64 bx = 0; bx <= by; ++bx) {
                for (u64 lz = 0; lz < rho; ++lz) {
                    for (u64 ly = 0; ly < rho; ++ly) {
                        for (u64 lx = 0; lx < rho; ++lx) {
                            if (slot % m.omega == 0 && slot != 0) c.flush(w);
                            const Coord3 g{bx * rho + lx, by * rho + ly, bz * rho + lz};
                            if (shape.contains(g)) push_taps(w, g, lay, shape);
                            ++slot;
                        }
                    }
                }
            }
        }
    }
    c.flush(w);
    return finish(c.warps, c.aligned, c.transactions, c.ideal);
}

}  // namespace

TransactionReport simulate_warps(u64 n, LayoutKind kind, const WarpModel& model,
                                 AccessPattern pattern, u64 rho) {
    model.validate();
    if (kind == LayoutKind::blocked && rho == 0)
        throw std::invalid_argument("simulate_warps: rho must be >= 1 for the blocked layout");
    switch (pattern) {
        case AccessPattern::sweep_once:
            return kind == LayoutKind::linear ? sweep_linear(n, model)
                                              : sweep_blocked(n, rho, model);
        case AccessPattern::stencil6:
            return kind == LayoutKind::linear ? stencil_linear(n, model)
                                              : stencil_blocked(n, rho, model);
    }
    throw std::invalid_argument("simulate_warps: unsupported access pattern");
}

OccupancyReport simulate_occupancy(u64 n, u64 rho, GridStrategy strategy) {
    if (rho == 0) throw std::invalid_argument("simulate_occupancy: rho must be >= 1");
    const BlockGrid grid(n, rho);
    const u64 m = grid.blocks_per_side;
    OccupancyReport r;
    r.blocks_launched = strategy == GridStrategy::box
                            ? checked_mul(checked_mul(m, m), m)
                            : grid.block_count;
    r.threads_launched = checked_mul(r.blocks_launched, grid.block_volume);
    r.threads_useful = tetra(n);
    r.threads_wasted = r.threads_launched - r.threads_useful;
    r.waste_ratio = r.threads_launched == 0
                        ? 0.0
                        : static_cast<double>(r.threads_wasted) /
                              static_cast<double>(r.threads_launched);
    return r;
}

std::vector<Coord3> simulate_map_dispatch(u64 n, u64 rho, GridStrategy strategy) {
    if (rho == 0) throw std::invalid_argument("simulate_map_dispatch: rho must be >= 1");
    const BlockGrid grid(n, rho);
    const u64 m = grid.blocks_per_side;
    std::vector<Coord3> blocks;
    blocks.reserve(grid.block_count);
    if (m == 0) return blocks;
    if (strategy == GridStrategy::box) {
        const u64 total = checked_mul(checked_mul(m, m), m);
        for (u64 i = 0; i < total; ++i) {
            const BoxCoord bc = box_unrank(i, m);
            if (bc.valid) blocks.push_back(Coord3{bc.x, bc.y, bc.z});
        }
    } else {
        const PyramidShape block_shape(m);
        for (u64 r = 0; r < block_shape.element_count; ++r) {
            blocks.push_back(unrank3(r, block_shape));
        }
    }
    return blocks;
}

DispatchCheck check_dispatch_equivalence(u64 n, u64 rho) {
    if (rho == 0) throw std::invalid_argument("check_dispatch_equivalence: rho must be >= 1");
    const BlockGrid grid(n, rho);
    const u64 m = grid.blocks_per_side;
    DispatchCheck chk;
    chk.box_blocks = checked_mul(checked_mul(m, m), m);
    chk.pyramidal_blocks = grid.block_count;
    const PyramidShape block_shape(m);
    // Walk the box grid in its index order; only indices inside the wedge
    // can match, so the walk visits exactly those (an exhaustively tested
    // equivalence with the box_unrank route over every grid index).
    u64 next_rank = 0;
    bool equal = true;
    for (u64 bz = 0; bz < m && equal; ++bz) {
        for (u64 by = 0; by <= bz && equal; ++by) {
            for (u64 bx = 0; bx <= by; ++bx) {
                if (next_rank >= block_shape.element_count) {
                    equal = false;
                    break;
                }
                const Coord3 c = unrank3(next_rank, block_shape);
                ++next_rank;
                if (c.x != bx || c.y != by || c.z != bz) {
                    equal = false;
                    break;
                }
            }
        }
    }
    chk.valid_blocks = next_rank;
    chk.equal = equal && next_rank == block_shape.element_count;
    return chk;
}

}  // namespace tetrablock
