// Acceptance gate: one line per criterion, PASS or FAIL with the measured
// quantity and its pinned tolerance. Exits 0 only if every criterion holds.
//
// The checks here intentionally recompute everything from the public API;
// expected values come from independent enumeration (streaming coordinate
// loops, binary-search references) rather than from the functions under test.

#include "tetrablock/bench.hpp"
#include "tetrablock/costmodel.hpp"
#include "tetrablock/reference.hpp"
#include "tetrablock/simulator.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

namespace tb = tetrablock;
using tb::u64;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

void note(Outcome& o, const char* fmt, ...) {
    char buf[512];
    va_list args;
    va_start(args, fmt);
    vsnprintf(buf, sizeof buf, fmt, args);
    va_end(args);
    if (!o.detail.empty()) o.detail += "; ";
    o.detail += buf;
}

u64 draw_below(std::mt19937_64& rng, u64 bound) {
    const unsigned __int128 wide = static_cast<unsigned __int128>(rng()) * bound;
    return static_cast<u64>(wide >> 64);
}

// C1: the rank/unrank pair is a bijection. Exhaustive streaming enumeration
// up to n = 512 (the closed form is shape independent, so the n = 512 run
// covers every smaller prefix), then randomized ranks at n = 2e6 against an
// integer binary-search reference.
Outcome c1_inverse_bijection() {
    Outcome o;
    constexpr u64 kExhaustiveN = 512;
    constexpr u64 kRandomN = 2'000'000;
    constexpr u64 kRandomSamples = 1'000'000;
    constexpr u64 kSeed = 0xacce97ed;

    const tb::PyramidShape shape(kExhaustiveN);
    u64 lambda = 0;
    u64 bad = 0;
    for (u64 z = 0; z < kExhaustiveN && bad == 0; ++z) {
        for (u64 y = 0; y <= z && bad == 0; ++y) {
            for (u64 x = 0; x <= y; ++x) {
                const tb::Coord3 c = tb::unrank3(lambda, shape);
                if (!(c == tb::Coord3{x, y, z}) || tb::rank3(c, shape) != lambda) {
                    ++bad;
                    note(o, "exhaustive mismatch at rank %" PRIu64, lambda);
                    break;
                }
                ++lambda;
            }
        }
    }
    o.pass = bad == 0 && lambda == shape.element_count;
    if (o.pass) note(o, "%" PRIu64 " ranks exhaustive to n=%" PRIu64, lambda, kExhaustiveN);

    const tb::PyramidShape big(kRandomN);
    std::mt19937_64 rng(kSeed);
    u64 random_bad = 0;
    for (u64 i = 0; i < kRandomSamples; ++i) {
        const u64 r = draw_below(rng, big.element_count);
        const tb::Coord3 c = tb::unrank3(r, big);
        if (!(c == tb::reference::unrank3_bsearch(r, big)) || tb::rank3(c, big) != r) {
            if (random_bad++ == 0) note(o, "randomized mismatch at rank %" PRIu64, r);
        }
    }
    o.pass = o.pass && random_bad == 0;
    if (random_bad == 0)
        note(o, "%" PRIu64 " randomized ranks at n=%" PRIu64, kRandomSamples, kRandomN);
    return o;
}

// C2: the reorganization speedup never exceeds 2, approaches 2 for large
// domains, and equals 2 - F (aligned fraction) to within 1e-9.
Outcome c2_reorg_speedup() {
    Outcome o;
    constexpr double kCap = 2.0 + 1e-12;
    constexpr double kIdentityTol = 1e-9;
    constexpr double kLargeDomainFloor = 1.95;
    double worst_gap = 0.0;
    double min_large = 2.0;
    for (u64 k : {32ULL, 64ULL, 128ULL, 256ULL}) {
        for (u64 n = 1; n <= 4096; ++n) {
            const tb::ReorgSpeedup s = tb::reorg_speedup(n, k);
            if (s.ratio > kCap) {
                o.pass = false;
                note(o, "ratio %.17g > 2 at n=%" PRIu64 " k=%" PRIu64, s.ratio, n, k);
                return o;
            }
            const double gap = std::fabs(s.ratio - (2.0 - s.fraction));
            worst_gap = std::max(worst_gap, gap);
            if (k == 128 && n >= 256) min_large = std::min(min_large, s.ratio);
        }
    }
    if (worst_gap > kIdentityTol) {
        o.pass = false;
        note(o, "|ratio - (2 - F)| = %.3g > 1e-9", worst_gap);
    }
    if (min_large < kLargeDomainFloor) {
        o.pass = false;
        note(o, "ratio %.6f < %.2f for n >= 256, k = 128", min_large, kLargeDomainFloor);
    }
    if (o.pass)
        note(o, "ratio <= 2 over n <= 4096, k in {32..256}; identity gap <= %.1e; min %.4f at n >= 256 k=128",
             worst_gap, min_large);
    return o;
}

// C3: the pyramidal grid launches at most the box grid's threads, the saving
// grows monotonically with domain size, reaches >= 5.8x by n = 1024 (block
// edge 8), and the analytic per-block speedup sits within 1% of its limit 6
// from n = 600 on.
Outcome c3_occupancy_gains() {
    Outcome o;
    constexpr u64 kRho = 8;
    constexpr double kRatioFloor = 5.8;
    constexpr double kLimitTolerance = 0.01;

    u64 prev_num = 0, prev_den = 1;
    for (u64 m = 1; m <= 128; ++m) {
        const u64 num = m * m * m;      // box blocks
        const u64 den = tb::tetra(m);   // pyramidal blocks
        if (num < den) {
            o.pass = false;
            note(o, "box launches fewer blocks than pyramidal at m=%" PRIu64, m);
        }
        // ratio must not decrease: num/den >= prev_num/prev_den, cross-multiplied
        if (num * prev_den < prev_num * den) {
            o.pass = false;
            note(o, "launch ratio decreases at m=%" PRIu64, m);
        }
        prev_num = num;
        prev_den = den;
    }

    const tb::OccupancyReport box = tb::simulate_occupancy(1024, kRho, tb::GridStrategy::box);
    const tb::OccupancyReport pyr = tb::simulate_occupancy(1024, kRho, tb::GridStrategy::pyramidal);
    const double ratio = static_cast<double>(box.threads_launched) /
                         static_cast<double>(pyr.threads_launched);
    if (!(ratio >= kRatioFloor)) {
        o.pass = false;
        note(o, "thread ratio %.4f < %.1f at n=1024", ratio, kRatioFloor);
    }
    if (box.threads_useful != pyr.threads_useful || pyr.threads_wasted >= box.threads_wasted) {
        o.pass = false;
        note(o, "occupancy accounting inconsistent at n=1024");
    }

    double worst_rel = 0.0;
    for (u64 n = 600; n <= 3000; ++n) {
        const tb::MapSpeedup s = tb::map_speedup(n, 1.0, 1.0);
        const double rel = (s.limit - s.factor) / s.limit;
        worst_rel = std::max(worst_rel, rel);
        if (s.factor > s.limit) {
            o.pass = false;
            note(o, "speedup exceeds its limit at n=%" PRIu64, n);
        }
    }
    if (worst_rel > kLimitTolerance) {
        o.pass = false;
        note(o, "speedup trails the limit by %.3f%% > 1%% in n=600..3000", worst_rel * 100.0);
    }
    if (o.pass)
        note(o, "monotone to m=128; %.4fx threads at n=1024 (floor %.1f); limit gap <= %.3f%%",
             ratio, kRatioFloor, worst_rel * 100.0);
    return o;
}

// C4: a full sweep of the blocked layout is perfectly aligned whenever the
// transaction size divides the block's byte footprint and a warp spans at
// least one transaction (k <= omega * b; larger transactions straddle warps
// by construction and cannot reach the minimal count).
Outcome c4_blocked_alignment() {
    Outcome o;
    tb::WarpModel model;  // omega=32, b=4, alignment set per case
    u64 cases = 0;
    for (u64 rho : {2ULL, 4ULL, 8ULL, 16ULL}) {
        const u64 block_bytes = rho * rho * rho * model.element_bytes;
        for (u64 k = 2; k <= model.omega * model.element_bytes; k += 2) {
            if (block_bytes % k != 0) continue;
            model.alignment = k;
            for (u64 n = 1; n <= 256; ++n) {
                const tb::TransactionReport r = tb::simulate_warps(
                    n, tb::LayoutKind::blocked, model, tb::AccessPattern::sweep_once, rho);
                ++cases;
                if (r.measured_fraction != 1.0 || r.transactions != r.ideal_transactions) {
                    o.pass = false;
                    note(o, "misaligned warp at n=%" PRIu64 " rho=%" PRIu64 " k=%" PRIu64
                            " (fraction %.4f)",
                         n, rho, k, r.measured_fraction);
                    return o;
                }
            }
        }
    }
    note(o, "%" PRIu64 " (n, rho, k) cases fully aligned, transactions == ideal", cases);
    return o;
}

// C5: the box dispatch (bounding-box grid + per-block validity map) and the
// pyramidal dispatch (ranked grid + inverse map) produce identical block
// sequences. Streaming check across the whole sweep, plus a materialized
// cross-check on smaller domains.
Outcome c5_dispatch_equivalence() {
    Outcome o;
    u64 checks = 0;
    for (u64 rho : {1ULL, 2ULL, 4ULL, 8ULL, 16ULL}) {
        for (u64 n = 0; n <= 512; ++n) {
            const tb::DispatchCheck chk = tb::check_dispatch_equivalence(n, rho);
            ++checks;
            const u64 m = tb::ceil_div(n, rho);
            const bool counts_ok = chk.box_blocks == m * m * m &&
                                   chk.valid_blocks == tb::tetra(m) &&
                                   chk.pyramidal_blocks == tb::tetra(m);
            if (!chk.equal || !counts_ok) {
                o.pass = false;
                note(o, "dispatch mismatch at n=%" PRIu64 " rho=%" PRIu64, n, rho);
                return o;
            }
        }
    }
    for (u64 rho : {1ULL, 3ULL, 4ULL, 8ULL}) {
        for (u64 n = 0; n <= 128; ++n) {
            const auto via_box = tb::simulate_map_dispatch(n, rho, tb::GridStrategy::box);
            const auto via_pyr = tb::simulate_map_dispatch(n, rho, tb::GridStrategy::pyramidal);
            ++checks;
            if (via_box != via_pyr) {
                o.pass = false;
                note(o, "materialized dispatch mismatch at n=%" PRIu64 " rho=%" PRIu64, n, rho);
                return o;
            }
        }
    }
    note(o, "%" PRIu64 " (n, rho) dispatches equivalent (streaming + materialized)", checks);
    return o;
}

// C6: the measured per-block cost ratio of the box map to the pyramidal map
// (micro-benchmark medians) matches the analytic prediction within 10%.
Outcome c6_map_cost_model() {
    Outcome o;
    constexpr double kTolerance = 0.10;
    try {
        const tb::MapBenchReport r = tb::bench_maps(1024, 8, 9);
        const double rel = std::fabs(r.i_model / r.i_throughput - 1.0);
        if (!(rel <= kTolerance)) {
            o.pass = false;
            note(o, "i_model %.4f vs i_throughput %.4f: relative gap %.3f > %.2f",
                 r.i_model, r.i_throughput, rel, kTolerance);
            return o;
        }
        if (!(r.i_model <= r.i_limit)) {
            o.pass = false;
            note(o, "i_model %.4f exceeds the limit %.4f", r.i_model, r.i_limit);
            return o;
        }
        note(o, "i_model %.4f vs i_throughput %.4f (beta %.2fns, tau %.2fns), gap %.3f <= %.2f",
             r.i_model, r.i_throughput, r.beta_ns, r.tau_ns, rel, kTolerance);
    } catch (const tb::BenchResolutionError& e) {
        o.pass = false;
        note(o, "benchmark unusable on this machine: %s", e.what());
    }
    return o;
}

// C7: the simulated aligned-warp fraction of a linear sweep stays below the
// model's qualitative ceiling (under 5% of warps aligned for 128-byte
// transactions) and sits next to the analytic prediction. The side-by-side
// table goes to stderr.
Outcome c7_alignment_fraction() {
    Outcome o;
    constexpr double kFractionCeiling = 0.05;
    tb::WarpModel model;  // omega=32, b=4, k=128
    fprintf(stderr, "%8s %20s %20s %12s\n", "n", "analytic_fraction", "measured_fraction",
            "divergence");
    double worst = 0.0;
    for (u64 n : {64ULL, 128ULL, 256ULL, 512ULL}) {
        const tb::TransactionReport r = tb::simulate_warps(
            n, tb::LayoutKind::linear, model, tb::AccessPattern::sweep_once, 1);
        const double analytic =
            tb::aligned_fraction(n, model.alignment / model.element_bytes);
        fprintf(stderr, "%8" PRIu64 " %20.12f %20.12f %12.3e\n", n, analytic,
                r.measured_fraction, r.measured_fraction - analytic);
        worst = std::max(worst, r.measured_fraction);
        if (!(r.measured_fraction < kFractionCeiling) || r.warps_aligned == 0) {
            o.pass = false;
            note(o, "fraction %.6f out of (0, %.2f) at n=%" PRIu64, r.measured_fraction,
                 kFractionCeiling, n);
        }
    }
    if (o.pass) note(o, "all measured fractions in (0, %.2f); max %.6f", kFractionCeiling, worst);
    return o;
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        Outcome (*run)();
    };
    const Criterion criteria[] = {
        {"inverse map bijection", c1_inverse_bijection},
        {"reorganization speedup bound", c2_reorg_speedup},
        {"pyramidal occupancy gains", c3_occupancy_gains},
        {"blocked layout alignment", c4_blocked_alignment},
        {"dispatch equivalence", c5_dispatch_equivalence},
        {"map cost model vs measurement", c6_map_cost_model},
        {"linear alignment fraction", c7_alignment_fraction},
    };
    int failures = 0;
    int index = 1;
    for (const Criterion& c : criteria) {
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.pass = false;
            note(o, "unexpected exception: %s", e.what());
        }
        printf("C%d %s: %s (%s)\n", index, c.name, o.pass ? "PASS" : "FAIL", o.detail.c_str());
        fflush(stdout);
        failures += o.pass ? 0 : 1;
        ++index;
    }
    return failures == 0 ? 0 : 1;
}
