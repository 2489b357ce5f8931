#include "tetrablock/bench.hpp"

#include "tetrablock/layout.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <numeric>
#include <vector>

namespace tetrablock {

namespace {

using clock_type = std::chrono::steady_clock;

u64 elapsed_ns(clock_type::time_point t0, clock_type::time_point t1) {
    return static_cast<u64>(std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count());
}

// Smallest positive step the monotonic clock reports, floor 1 ns.
u64 timer_tick_ns() {
    u64 best = ~u64{0};
    for (int probe = 0; probe < 200; ++probe) {
        const auto t0 = clock_type::now();
        auto t1 = clock_type::now();
        while (t1 == t0) t1 = clock_type::now();
        best = std::min(best, elapsed_ns(t0, t1));
    }
    return std::max<u64>(best, 1);
}

SampleStats stats_from(std::vector<double> samples) {
    std::sort(samples.begin(), samples.end());
    SampleStats s;
    s.min_ns = samples.front();
    s.mean_ns = std::accumulate(samples.begin(), samples.end(), 0.0) /
                static_cast<double>(samples.size());
    const size_t mid = samples.size() / 2;
    s.median_ns = samples.size() % 2 == 1 ? samples[mid] : 0.5 * (samples[mid - 1] + samples[mid]);
    double acc = 0.0;
    for (const double v : samples) acc += (v - s.mean_ns) * (v - s.mean_ns);
    s.stddev_ns = std::sqrt(acc / static_cast<double>(samples.size()));
    return s;
}

// Order-independent fold of a block coordinate; both map sweeps emit the
// same multiset of valid blocks, so the folds must agree.
inline u64 fold_coord(u64 x, u64 y, u64 z) {
    return x + (y << 21) + (z << 42);
}

volatile u64 g_bench_sink = 0;  // keeps sweeps observable to the optimizer

template <typename Sweep>
std::vector<double> time_sweeps(Sweep&& sweep, u64 evals_per_sweep, u64 batches, u64 repetitions,
                                u64 floor_ns) {
    sweep();  // warm-up, discarded
    std::vector<double> per_eval_ns;
    per_eval_ns.reserve(repetitions);
    for (u64 rep = 0; rep < repetitions; ++rep) {
        const auto t0 = clock_type::now();
        for (u64 i = 0; i < batches; ++i) sweep();
        const auto t1 = clock_type::now();
        const u64 dur = elapsed_ns(t0, t1);
        if (dur < floor_ns) {
            throw BenchResolutionError(
                "benchmark sample shorter than the timer can resolve; increase n or the batch size");
        }
        per_eval_ns.push_back(static_cast<double>(dur) /
                              (static_cast<double>(evals_per_sweep) * static_cast<double>(batches)));
    }
    return per_eval_ns;
}

u64 sweep_batches(u64 evals, u64 min_evals) {
    return std::max<u64>(1, ceil_div(std::max<u64>(min_evals, 1), evals));
}

}  // namespace

MapBenchReport bench_maps(u64 n, u64 rho, u64 repetitions, u64 min_evals) {
    if (n == 0) throw std::invalid_argument("bench_maps: n must be >= 1");
    if (rho == 0) throw std::invalid_argument("bench_maps: rho must be >= 1");
    if (repetitions == 0) throw std::invalid_argument("bench_maps: repetitions must be >= 1");

    const BlockGrid grid(n, rho);
    const u64 m = grid.blocks_per_side;
    const PyramidShape block_shape(m);
    const u64 box_evals = checked_mul(checked_mul(m, m), m);
    const u64 pyr_evals = block_shape.element_count;

    MapBenchReport r;
    r.n = n;
    r.rho = rho;
    r.samples = repetitions;
    r.box_evals = box_evals;
    r.pyramidal_evals = pyr_evals;

    const u64 floor_ns = 100 * timer_tick_ns();

    u64 chk_box = 0;
    const auto box_sweep = [&] {
        u64 chk = 0;
        for (u64 i = 0; i < box_evals; ++i) {
            const BoxCoord c = box_unrank(i, m);
            if (c.valid) chk += fold_coord(c.x, c.y, c.z);
        }
        chk_box = chk;
        g_bench_sink = chk;
    };
    u64 chk_pyr = 0;
    const auto pyr_sweep = [&] {
        u64 chk = 0;
        for (u64 rank = 0; rank < pyr_evals; ++rank) {
            const Coord3 c = unrank3(rank, block_shape);
            chk += fold_coord(c.x, c.y, c.z);
        }
        chk_pyr = chk;
        g_bench_sink = chk;
    };

    const auto beta_samples =
        time_sweeps(box_sweep, box_evals, sweep_batches(box_evals, min_evals), repetitions, floor_ns);
    const auto tau_samples =
        time_sweeps(pyr_sweep, pyr_evals, sweep_batches(pyr_evals, min_evals), repetitions, floor_ns);

    r.beta_stats = stats_from(beta_samples);
    r.tau_stats = stats_from(tau_samples);
    r.beta_ns = r.beta_stats.median_ns;
    r.tau_ns = r.tau_stats.median_ns;
    r.checksum_box = chk_box;
    r.checksum_pyramidal = chk_pyr;

    const MapSpeedup model = map_speedup(n, r.beta_ns, r.tau_ns);
    r.i_model = model.factor;
    r.i_limit = model.limit;
    // Direct sweep-versus-sweep ratio from the same medians: per-sweep time
    // is the per-eval median scaled by the sweep's evaluation count.
    r.i_throughput = (r.beta_ns * static_cast<double>(box_evals)) /
                     (r.tau_ns * static_cast<double>(pyr_evals));
    return r;
}

LayoutSweepReport bench_layout_sweep(u64 n, u64 rho, const WarpModel& model, u64 repetitions) {
    model.validate();
    if (n == 0) throw std::invalid_argument("bench_layout_sweep: n must be >= 1");
    if (rho == 0) throw std::invalid_argument("bench_layout_sweep: rho must be >= 1");
    if (repetitions == 0) throw std::invalid_argument("bench_layout_sweep: repetitions must be >= 1");

    const u64 b = model.element_bytes;
    const PyramidShape shape(n);
    const LinearLayout linear(shape, b);
    const BlockedLayout blocked(BlockGrid(n, rho), b);

    // Element payload: its low rank byte replicated across b bytes, pads
    // left zero, so whole-buffer byte sums agree between the layouts.
    std::vector<unsigned char> lin_buf(linear.size_bytes(), 0);
    std::vector<unsigned char> blk_buf(blocked.size_bytes(), 0);
    for (u64 z = 0; z < n; ++z) {
        for (u64 y = 0; y <= z; ++y) {
            for (u64 x = 0; x <= y; ++x) {
                const Coord3 c{x, y, z};
                const u64 rank = rank3(c, shape);
                const auto v = static_cast<unsigned char>(rank & 0xFF);
                std::memset(lin_buf.data() + linear.address(c), v, b);
                std::memset(blk_buf.data() + blocked.address(c), v, b);
            }
        }
    }

    const u64 floor_ns = 100 * timer_tick_ns();
    constexpr u64 kTargetBytesPerSample = u64{1} << 22;

    u64 chk_lin = 0;
    const auto linear_sweep = [&] {
        u64 acc = 0;
        for (u64 z = 0; z < n; ++z) {
            for (u64 y = 0; y <= z; ++y) {
                for (u64 x = 0; x <= y; ++x) {
                    const u64 addr = linear.address(Coord3{x, y, z});
                    for (u64 i = 0; i < b; ++i) acc += lin_buf[addr + i];
                }
            }
        }
        chk_lin = acc;
        g_bench_sink = acc;
    };
    u64 chk_blk = 0;
    const auto blocked_sweep = [&] {
        u64 acc = 0;
        for (const unsigned char byte : blk_buf) acc += byte;
        chk_blk = acc;
        g_bench_sink = acc;
    };

    const u64 lin_bytes = linear.size_bytes();
    const u64 blk_bytes = blocked.size_bytes();
    const auto lin_samples = time_sweeps(linear_sweep, lin_bytes,
                                         sweep_batches(lin_bytes, kTargetBytesPerSample),
                                         repetitions, floor_ns);
    const auto blk_samples = time_sweeps(blocked_sweep, blk_bytes,
                                         sweep_batches(blk_bytes, kTargetBytesPerSample),
                                         repetitions, floor_ns);

    LayoutSweepReport r;
    r.n = n;
    r.rho = rho;
    r.element_bytes = b;
    r.samples = repetitions;
    const double lin_ns_per_byte = stats_from(lin_samples).median_ns;
    const double blk_ns_per_byte = stats_from(blk_samples).median_ns;
    r.linear_bytes_per_s = 1e9 / lin_ns_per_byte;
    r.blocked_bytes_per_s = 1e9 / blk_ns_per_byte;
    r.ratio = r.blocked_bytes_per_s / r.linear_bytes_per_s;
    r.checksum_linear = chk_lin;
    r.checksum_blocked = chk_blk;
    return r;
}

}  // namespace tetrablock
