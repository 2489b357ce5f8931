"""Block-space maps, layouts, cost models, and exact simulators for
tetrahedral (0 <= x <= y <= z < n) domains."""

from ._core import (
    BenchResolutionError,
    BlockedCost,
    DispatchCheck,
    LayoutSweepReport,
    MapBenchReport,
    MapSpeedup,
    OccupancyReport,
    PaddingReport,
    ReorgSpeedup,
    SampleStats,
    TransactionReport,
    aligned_fraction,
    aligned_rows,
    aligned_warps,
    bench_layout_sweep,
    bench_maps,
    block_of,
    blocked_address,
    blocked_size_bytes,
    box_unrank,
    check_dispatch_equivalence,
    cost_blocked,
    cost_linear,
    cost_linear_layered,
    in_pyramid,
    linear_address,
    linear_size_bytes,
    map_speedup,
    max_supported_n,
    neighbor,
    padding_overhead,
    rank3,
    reorg_speedup,
    simulate_map_dispatch,
    simulate_occupancy,
    simulate_warps,
    tetra,
    tri,
    unrank2,
    unrank3,
    unrank_layer,
)

__all__ = [
    "BenchResolutionError",
    "BlockedCost",
    "DispatchCheck",
    "LayoutSweepReport",
    "MapBenchReport",
    "MapSpeedup",
    "OccupancyReport",
    "PaddingReport",
    "ReorgSpeedup",
    "SampleStats",
    "TransactionReport",
    "aligned_fraction",
    "aligned_rows",
    "aligned_warps",
    "bench_layout_sweep",
    "bench_maps",
    "block_of",
    "blocked_address",
    "blocked_size_bytes",
    "box_unrank",
    "check_dispatch_equivalence",
    "cost_blocked",
    "cost_linear",
    "cost_linear_layered",
    "in_pyramid",
    "linear_address",
    "linear_size_bytes",
    "map_speedup",
    "max_supported_n",
    "neighbor",
    "padding_overhead",
    "rank3",
    "reorg_speedup",
    "simulate_map_dispatch",
    "simulate_occupancy",
    "simulate_warps",
    "tetra",
    "tri",
    "unrank2",
    "unrank3",
    "unrank_layer",
]
