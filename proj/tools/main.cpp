// tetrablock CLI: verification, cost tables, exact-count simulations, and
// micro-benchmarks for tetrahedral-domain index maps and layouts.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error, 3 resource
// error (allocation or timer resolution). Reports go to stdout (or --output);
// human-readable summaries and errors go to stderr, errors as one line.

#include "tetrablock/bench.hpp"
#include "tetrablock/io.hpp"
#include "tetrablock/reference.hpp"
#include "tetrablock/simulator.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

namespace tb = tetrablock;
namespace tio = tetrablock::io;
using tb::u64;
using tio::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerification = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct VerificationFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Deterministic bounded draw (the standard distributions are
// implementation-defined, which would break byte-identical output).
u64 draw_below(std::mt19937_64& rng, u64 bound) {
    const unsigned __int128 wide = static_cast<unsigned __int128>(rng()) * bound;
    return static_cast<u64>(wide >> 64);
}

std::filesystem::path resolve_output(const std::string& path) {
    std::filesystem::path p(path);
    if (p.is_relative()) {
        if (const char* dir = std::getenv("TETRABLOCK_OUT_DIR"); dir != nullptr && *dir != '\0') {
            p = std::filesystem::path(dir) / p;
        }
    }
    return p;
}

void emit(const std::vector<ordered_json>& rows, const std::string& format,
          const std::string& output) {
    const std::string text =
        format == "json" ? tio::json_from_rows(rows) : tio::csv_from_rows(rows);
    if (output.empty() || output == "-") {
        std::cout << text;
        return;
    }
    const std::filesystem::path p = resolve_output(output);
    if (p.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(p.parent_path(), ec);
    }
    std::ofstream f(p, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + p.string());
    f << text;
    if (!f) throw std::runtime_error("cannot write output file: " + p.string());
}

// ---------------------------------------------------------------------------
// verify

int run_verify(u64 n, u64 random_count, u64 seed, u64 exhaustive_limit, bool random_given,
               const std::string& format, const std::string& output) {
    u64 checked = 0;
    u64 mismatches = 0;
    std::string first_bad;
    std::string mode;

    if (random_given) {
        mode = "random";
        const tb::PyramidShape shape(n);
        if (shape.element_count == 0) throw UsageError("randomized verification needs n >= 1");
        if (random_count == 0) throw UsageError("--random needs a positive sample count");
        std::mt19937_64 rng(seed);
        for (u64 i = 0; i < random_count; ++i) {
            const u64 lambda = draw_below(rng, shape.element_count);
            const tb::Coord3 c = tb::unrank3(lambda, shape);
            const bool ok = c == tb::reference::unrank3_bsearch(lambda, shape) &&
                            tb::rank3(c, shape) == lambda;
            ++checked;
            if (!ok && mismatches++ == 0) first_bad = std::to_string(lambda);
        }
    } else {
        mode = "exhaustive";
        if (n > exhaustive_limit)
            throw UsageError("n exceeds the exhaustive limit (" +
                             std::to_string(exhaustive_limit) + "); pass --random COUNT");
        const tb::PyramidShape shape(n);
        u64 lambda = 0;
        for (u64 z = 0; z < n; ++z) {
            for (u64 y = 0; y <= z; ++y) {
                for (u64 x = 0; x <= y; ++x) {
                    const tb::Coord3 c = tb::unrank3(lambda, shape);
                    const bool ok =
                        c == tb::Coord3{x, y, z} && tb::rank3(c, shape) == lambda;
                    if (!ok && mismatches++ == 0) first_bad = std::to_string(lambda);
                    ++lambda;
                }
            }
        }
        checked = lambda;
    }

    std::vector<ordered_json> rows;
    rows.push_back({{"mode", mode},
                    {"n", n},
                    {"ranks_checked", checked},
                    {"mismatches", mismatches},
                    {"seed", random_given ? seed : 0}});
    emit(rows, format, output);
    std::cerr << checked << " ranks checked\n";
    if (mismatches != 0) throw VerificationFailure("mismatch at lambda=" + first_bad);
    return kExitOk;
}

// ---------------------------------------------------------------------------
// cost

int run_cost(const std::vector<u64>& ns, const std::vector<u64>& ks, const std::vector<u64>& rhos,
             double alpha, double beta, double tau, const std::string& format,
             const std::string& output) {
    std::vector<ordered_json> rows;
    for (const u64 n : ns) {
        for (const u64 k : ks) {
            for (const u64 rho : rhos) {
                const tb::BlockedCost blocked = tb::cost_blocked(n, k, rho);
                const tb::ReorgSpeedup reorg = tb::reorg_speedup(n, k);
                const tb::MapSpeedup map = tb::map_speedup(n, beta, tau);
                rows.push_back({{"n", n},
                                {"k", k},
                                {"rho", rho},
                                {"aligned_rows", tb::aligned_rows(n, k)},
                                {"aligned_warps", tb::aligned_warps(n, k)},
                                {"aligned_fraction", tb::aligned_fraction(n, k)},
                                {"cost_linear", tb::cost_linear(n, k, alpha)},
                                {"cost_blocked_model", blocked.model},
                                {"cost_blocked_exact", blocked.exact},
                                {"reorg_ratio", reorg.ratio},
                                {"i_limit", map.limit}});
            }
        }
    }
    emit(rows, format, output);
    return kExitOk;
}

// ---------------------------------------------------------------------------
// simulate

int run_simulate_warps(std::vector<u64> ns, tb::LayoutKind kind, tb::AccessPattern pattern,
                       u64 rho, tb::WarpModel model, const std::string& layout_file,
                       const std::string& emit_layout, const std::string& format,
                       const std::string& output) {
    if (!layout_file.empty()) {
        std::ifstream f(resolve_output(layout_file));
        if (!f) throw UsageError("cannot open layout file: " + layout_file);
        const auto doc = ordered_json::parse(f, nullptr, true);
        const tio::LayoutDescriptor d = tio::layout_descriptor_from_json(doc);
        kind = d.kind;
        rho = d.rho;
        model.element_bytes = d.element_size;
        ns = {d.n};
    }
    std::vector<ordered_json> rows;
    for (const u64 n : ns) {
        const tb::TransactionReport r = tb::simulate_warps(n, kind, model, pattern, rho);
        // The analytic model counts in elements, the simulator in bytes. The
        // columns line up when a warp spans whole transactions (the canonical
        // omega * b = k case); otherwise the analytic value is approximate.
        const bool convertible = model.element_bytes != 0 && model.alignment % model.element_bytes == 0;
        const u64 k_elems = convertible ? model.alignment / model.element_bytes : 0;
        const double analytic =
            kind == tb::LayoutKind::linear
                ? (n == 0 || !convertible ? 0.0 : tb::aligned_fraction(n, k_elems))
                : 1.0;
        ordered_json row{{"n", n},
                         {"layout", tio::to_string(kind)},
                         {"pattern", tio::to_string(pattern)},
                         {"rho", kind == tb::LayoutKind::blocked ? rho : 1},
                         {"omega", model.omega},
                         {"b", model.element_bytes},
                         {"k", model.alignment}};
        const ordered_json body = tio::to_json(r);
        for (const auto& [key, value] : body.items()) row[key] = value;
        row["analytic_fraction"] = analytic;
        row["fraction_divergence"] = r.measured_fraction - analytic;
        rows.push_back(std::move(row));
    }
    emit(rows, format, output);
    if (!emit_layout.empty()) {
        const tio::LayoutDescriptor d{kind, ns.empty() ? 0 : ns.back(),
                                      kind == tb::LayoutKind::blocked ? rho : 1,
                                      model.element_bytes};
        std::ofstream f(resolve_output(emit_layout), std::ios::binary);
        if (!f) throw std::runtime_error("cannot open layout output: " + emit_layout);
        f << tio::to_json(d).dump(2) << "\n";
    }
    return kExitOk;
}

int run_simulate_occupancy(const std::vector<u64>& ns, u64 rho, const std::string& strategy,
                           const std::string& format, const std::string& output) {
    std::vector<ordered_json> rows;
    for (const u64 n : ns) {
        const tb::OccupancyReport box = tb::simulate_occupancy(n, rho, tb::GridStrategy::box);
        const tb::OccupancyReport pyr = tb::simulate_occupancy(n, rho, tb::GridStrategy::pyramidal);
        const double launch_ratio =
            pyr.threads_launched == 0
                ? 0.0
                : static_cast<double>(box.threads_launched) /
                      static_cast<double>(pyr.threads_launched);
        const auto push = [&](const char* name, const tb::OccupancyReport& r) {
            ordered_json row{{"n", n}, {"rho", rho}, {"strategy", name}};
            const ordered_json body = tio::to_json(r);
            for (const auto& [key, value] : body.items()) row[key] = value;
            row["launch_ratio"] = launch_ratio;
            rows.push_back(std::move(row));
        };
        if (strategy == "box" || strategy == "both") push("box", box);
        if (strategy == "pyramidal" || strategy == "both") push("pyramidal", pyr);
    }
    emit(rows, format, output);
    return kExitOk;
}

int run_simulate_dispatch(const std::vector<u64>& ns, u64 rho, const std::string& format,
                          const std::string& output) {
    std::vector<ordered_json> rows;
    bool all_equal = true;
    for (const u64 n : ns) {
        const tb::DispatchCheck chk = tb::check_dispatch_equivalence(n, rho);
        all_equal = all_equal && chk.equal;
        rows.push_back({{"n", n},
                        {"rho", rho},
                        {"box_blocks", chk.box_blocks},
                        {"valid_blocks", chk.valid_blocks},
                        {"pyramidal_blocks", chk.pyramidal_blocks},
                        {"sets_equal", chk.equal}});
    }
    emit(rows, format, output);
    std::cerr << "block sets equal: " << (all_equal ? "true" : "false") << "\n";
    if (!all_equal) throw VerificationFailure("dispatch block sets differ");
    return kExitOk;
}

// ---------------------------------------------------------------------------
// bench

int run_bench_maps(u64 n, u64 rho, u64 reps, u64 min_evals, const std::string& format,
                   const std::string& output) {
    const tb::MapBenchReport r = tb::bench_maps(n, rho, reps, min_evals);
    emit({tio::to_json(r)}, format, output);
    return kExitOk;
}

int run_bench_sweep(u64 n, u64 rho, u64 b, u64 reps, const std::string& format,
                    const std::string& output) {
    tb::WarpModel model;
    model.element_bytes = b;
    const tb::LayoutSweepReport r = tb::bench_layout_sweep(n, rho, model, reps);
    emit({tio::to_json(r)}, format, output);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"block-space toolkit for tetrahedral (0 <= x <= y <= z < n) domains"};
    app.require_subcommand(1);

    std::string format = "csv";
    std::string output;
    app.add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    app.add_option("--output", output,
                   "Output path ('-' or empty for stdout; relative paths resolve "
                   "against $TETRABLOCK_OUT_DIR)");

    // verify
    auto* verify = app.add_subcommand("verify", "Check the inverse map against oracles");
    u64 v_n = 0, v_random = 0, v_seed = 1, v_limit = 512;
    verify->add_option("--n", v_n, "Domain side")->required();
    auto* v_random_opt = verify->add_option("--random", v_random, "Randomized sample count");
    verify->add_option("--seed", v_seed, "Random seed")->capture_default_str();
    verify->add_option("--exhaustive-limit", v_limit, "Largest n checked exhaustively")
        ->capture_default_str();

    // cost
    auto* cost = app.add_subcommand("cost", "Analytic cost-model table");
    std::vector<u64> c_ns, c_ks{128}, c_rhos{4};
    double c_alpha = 2.0, c_beta = 1.0, c_tau = 1.0;
    cost->add_option("--n", c_ns, "Domain sides")->required()->delimiter(',');
    cost->add_option("--k", c_ks, "Alignment sizes in bytes")->delimiter(',')->capture_default_str();
    cost->add_option("--rho", c_rhos, "Block edges")->delimiter(',')->capture_default_str();
    cost->add_option("--alpha", c_alpha, "Misaligned-access cost multiplier")->capture_default_str();
    cost->add_option("--beta", c_beta, "Per-block box map cost")->capture_default_str();
    cost->add_option("--tau", c_tau, "Per-block pyramidal map cost")->capture_default_str();

    // simulate
    auto* simulate = app.add_subcommand("simulate", "Exact-counting simulations");
    simulate->require_subcommand(1);

    auto* warps = simulate->add_subcommand("warps", "Count k-byte transactions per warp");
    std::vector<u64> w_ns;
    std::string w_layout = "linear", w_pattern = "sweep-once";
    std::string w_layout_file, w_emit_layout;
    u64 w_rho = 4;
    tb::WarpModel w_model;
    warps->add_option("--n", w_ns, "Domain sides")->delimiter(',');
    warps->add_option("--layout", w_layout, "Layout kind")
        ->check(CLI::IsMember({"linear", "blocked"}))
        ->capture_default_str();
    warps->add_option("--pattern", w_pattern, "Access pattern")
        ->check(CLI::IsMember({"sweep-once", "sweep", "stencil-6", "stencil"}))
        ->capture_default_str();
    warps->add_option("--rho", w_rho, "Block edge (blocked layout)")->capture_default_str();
    warps->add_option("--omega", w_model.omega, "Threads per warp")->capture_default_str();
    warps->add_option("--b", w_model.element_bytes, "Bytes per element")->capture_default_str();
    warps->add_option("--k", w_model.alignment, "Transaction size in bytes")->capture_default_str();
    warps->add_option("--layout-file", w_layout_file, "Read run layout from a descriptor JSON");
    warps->add_option("--emit-layout", w_emit_layout, "Write the run layout as descriptor JSON");

    auto* occupancy = simulate->add_subcommand("occupancy", "Thread accounting per grid strategy");
    std::vector<u64> o_ns;
    u64 o_rho = 4;
    std::string o_strategy = "both";
    occupancy->add_option("--n", o_ns, "Domain sides")->required()->delimiter(',');
    occupancy->add_option("--rho", o_rho, "Block edge")->capture_default_str();
    occupancy->add_option("--strategy", o_strategy, "Grid strategy")
        ->check(CLI::IsMember({"box", "pyramidal", "both"}))
        ->capture_default_str();

    auto* dispatch = simulate->add_subcommand("dispatch", "Box vs pyramidal block coverage");
    std::vector<u64> d_ns;
    u64 d_rho = 4;
    dispatch->add_option("--n", d_ns, "Domain sides")->required()->delimiter(',');
    dispatch->add_option("--rho", d_rho, "Block edge")->capture_default_str();

    // bench
    auto* bench = app.add_subcommand("bench", "Machine-local micro-benchmarks");
    bench->require_subcommand(1);

    auto* maps = bench->add_subcommand("maps", "Per-block map costs (box vs pyramidal)");
    u64 bm_n = 0, bm_rho = 4, bm_reps = 9, bm_min_evals = 1'000'000;
    maps->add_option("--n", bm_n, "Domain side")->required();
    maps->add_option("--rho", bm_rho, "Block edge")->capture_default_str();
    maps->add_option("--reps", bm_reps, "Timed repetitions")->capture_default_str();
    maps->add_option("--min-evals", bm_min_evals, "Minimum map evaluations per sample")
        ->capture_default_str();

    auto* sweep = bench->add_subcommand("sweep", "Layout read-throughput comparison");
    u64 bs_n = 0, bs_rho = 4, bs_b = 4, bs_reps = 9;
    sweep->add_option("--n", bs_n, "Domain side")->required();
    sweep->add_option("--rho", bs_rho, "Block edge")->capture_default_str();
    sweep->add_option("--b", bs_b, "Bytes per element")->capture_default_str();
    sweep->add_option("--reps", bs_reps, "Timed repetitions")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (app.got_subcommand(verify))
            return run_verify(v_n, v_random, v_seed, v_limit, v_random_opt->count() > 0, format,
                              output);
        if (app.got_subcommand(cost))
            return run_cost(c_ns, c_ks, c_rhos, c_alpha, c_beta, c_tau, format, output);
        if (app.got_subcommand(simulate)) {
            if (simulate->got_subcommand(warps)) {
                if (w_ns.empty() && w_layout_file.empty())
                    throw UsageError("simulate warps needs --n or --layout-file");
                return run_simulate_warps(w_ns, tio::layout_kind_from(w_layout),
                                          tio::pattern_from(w_pattern), w_rho, w_model,
                                          w_layout_file, w_emit_layout, format, output);
            }
            if (simulate->got_subcommand(occupancy))
                return run_simulate_occupancy(o_ns, o_rho, o_strategy, format, output);
            if (simulate->got_subcommand(dispatch))
                return run_simulate_dispatch(d_ns, d_rho, format, output);
        }
        if (app.got_subcommand(bench)) {
            if (bench->got_subcommand(maps))
                return run_bench_maps(bm_n, bm_rho, bm_reps, bm_min_evals, format, output);
            if (bench->got_subcommand(sweep))
                return run_bench_sweep(bs_n, bs_rho, bs_b, bs_reps, format, output);
        }
        throw UsageError("no subcommand selected");
    } catch (const VerificationFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerification;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const tb::BenchResolutionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitResource;
    } catch (const std::bad_alloc&) {
        std::cerr << "error: out of memory\n";
        return kExitResource;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::overflow_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitResource;
    }
}
