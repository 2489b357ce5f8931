#pragma once

// Storage layouts for tetrahedral data. Two layouts are provided:
//   linear  - elements packed densely in rank order (z, then y, then x),
//   blocked - the domain tiled into rho^3-element cubic blocks, blocks
//             ordered by their own tetrahedral rank, every block padded to
//             the full rho^3 span so block starts stay alignment-friendly.

#include "tetrablock/core.hpp"

#include <optional>

namespace tetrablock {

// ---------------------------------------------------------------------------
// block decomposition

struct BlockGrid {
    u64 rho = 1;             // elements per block edge
    u64 n = 0;               // domain side
    u64 blocks_per_side = 0; // ceil(n / rho)
    u64 block_count = 0;     // tetra(blocks_per_side)
    u64 block_volume = 0;    // rho^3 slots per block

    BlockGrid() = default;
    BlockGrid(u64 domain_side, u64 block_edge) {
        if (block_edge == 0) throw std::invalid_argument("BlockGrid: block edge must be >= 1");
        rho = block_edge;
        n = domain_side;
        blocks_per_side = ceil_div(n, rho);
        if (blocks_per_side > max_supported_n()) throw_overflow("BlockGrid: too many blocks per side");
        block_count = tetra(blocks_per_side);
        block_volume = checked_mul(checked_mul(rho, rho), rho);
    }

    u64 total_slots() const { return checked_mul(block_count, block_volume); }
};

struct BlockRef {
    Coord3 block;  // block coordinates, inherit x <= y <= z from the element
    Coord3 local;  // offsets within the block, each in [0, rho)
    friend bool operator==(const BlockRef&, const BlockRef&) = default;
};

inline BlockRef block_of(const Coord3& c, const BlockGrid& grid) {
    return BlockRef{
        Coord3{c.x / grid.rho, c.y / grid.rho, c.z / grid.rho},
        Coord3{c.x % grid.rho, c.y % grid.rho, c.z % grid.rho},
    };
}

// ---------------------------------------------------------------------------
// layouts

struct LinearLayout {
    PyramidShape shape;
    u64 element_size = 4;

    LinearLayout() = default;
    LinearLayout(PyramidShape s, u64 bytes_per_element) : shape(s), element_size(bytes_per_element) {
        if (bytes_per_element == 0) throw std::invalid_argument("LinearLayout: element size must be >= 1");
        size_bytes();  // fail construction early if the span does not fit
    }

    u64 address(const Coord3& c) const { return rank3(c, shape) * element_size; }
    u64 size_bytes() const { return checked_mul(shape.element_count, element_size); }
};

struct BlockedLayout {
    BlockGrid grid;
    u64 element_size = 4;
    PyramidShape block_shape;  // pyramid of blocks, side = blocks_per_side

    BlockedLayout() = default;
    BlockedLayout(BlockGrid g, u64 bytes_per_element)
        : grid(g), element_size(bytes_per_element), block_shape(g.blocks_per_side) {
        if (bytes_per_element == 0) throw std::invalid_argument("BlockedLayout: element size must be >= 1");
        size_bytes();
    }

    u64 address(const Coord3& c) const {
        if (!in_pyramid(c, grid.n)) throw std::domain_error("blocked address: coordinate outside tetrahedral domain");
        const BlockRef r = block_of(c, grid);
        const u64 block_rank = rank3(r.block, block_shape);
        const u64 local = (r.local.z * grid.rho + r.local.y) * grid.rho + r.local.x;
        return (block_rank * grid.block_volume + local) * element_size;
    }

    u64 size_bytes() const { return checked_mul(grid.total_slots(), element_size); }
};

// ---------------------------------------------------------------------------
// padding accounting

struct PaddingReport {
    u64 padded_elements = 0;   // exact: total slots minus useful elements
    double ratio = 0.0;        // padded_elements / T_n
    u64 model_elements = 0;    // the coarse n^2 * rho^3 model value
};

inline PaddingReport padding_overhead(const BlockGrid& grid) {
    const u64 slots = grid.total_slots();
    const u64 useful = tetra(grid.n);
    PaddingReport r;
    r.padded_elements = slots - useful;  // containment: slots >= useful
    r.ratio = useful == 0 ? 0.0 : static_cast<double>(r.padded_elements) / static_cast<double>(useful);
    r.model_elements = checked_mul(checked_mul(grid.n, grid.n), grid.block_volume);
    return r;
}

// ---------------------------------------------------------------------------
// neighbor access (boundary is a value, not an error)

enum class Step { pos_x, neg_x, pos_y, neg_y, pos_z, neg_z };

inline constexpr Step kAllSteps[6] = {Step::pos_x, Step::neg_x, Step::pos_y,
                                      Step::neg_y, Step::pos_z, Step::neg_z};

inline std::optional<Coord3> neighbor(const Coord3& c, Step s, const PyramidShape& shape) {
    Coord3 r = c;
    switch (s) {
        case Step::pos_x: r.x += 1; break;
        case Step::neg_x: if (r.x == 0) return std::nullopt; r.x -= 1; break;
        case Step::pos_y: r.y += 1; break;
        case Step::neg_y: if (r.y == 0) return std::nullopt; r.y -= 1; break;
        case Step::pos_z: r.z += 1; break;
        case Step::neg_z: if (r.z == 0) return std::nullopt; r.z -= 1; break;
    }
    if (!shape.contains(r)) return std::nullopt;
    return r;
}

}  // namespace tetrablock
