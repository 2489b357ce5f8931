// Python bindings for the tetrablock library. Coordinates cross the
// boundary as plain tuples, report structs as small read-only classes,
// and enums as their canonical string names.

#include "tetrablock/bench.hpp"
#include "tetrablock/costmodel.hpp"
#include "tetrablock/io.hpp"
#include "tetrablock/layout.hpp"
#include "tetrablock/simulator.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>
#include <tuple>

namespace py = pybind11;
namespace tb = tetrablock;
namespace tio = tetrablock::io;
using tb::u64;

namespace {

tb::Step step_from(const std::string& name) {
    if (name == "+x") return tb::Step::pos_x;
    if (name == "-x") return tb::Step::neg_x;
    if (name == "+y") return tb::Step::pos_y;
    if (name == "-y") return tb::Step::neg_y;
    if (name == "+z") return tb::Step::pos_z;
    if (name == "-z") return tb::Step::neg_z;
    throw std::invalid_argument("unknown step: " + name + " (use one of +x -x +y -y +z -z)");
}

std::string repr_json(const char* name, const tio::ordered_json& body) {
    std::ostringstream out;
    out << name << "(";
    bool first = true;
    for (const auto& [key, value] : body.items()) {
        if (!first) out << ", ";
        first = false;
        out << key << "=" << value.dump();
    }
    out << ")";
    return out.str();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "block-space maps, layouts, cost models, and exact simulators "
              "for tetrahedral (0 <= x <= y <= z < n) domains";

    // ------------------------------------------------------------------ core
    m.def("tri", &tb::tri, py::arg("m"),
          "Triangular number m (m + 1) / 2, the size of one wedge row prefix.");
    m.def("tetra", &tb::tetra, py::arg("m"),
          "Tetrahedral number m (m + 1) (m + 2) / 6, elements of a side-m domain.");
    m.def("max_supported_n", &tb::max_supported_n,
          "Largest domain side whose element count fits in 64 bits.");
    m.def(
        "rank3",
        [](u64 x, u64 y, u64 z, u64 n) {
            return tb::rank3(tb::Coord3{x, y, z}, tb::PyramidShape(n));
        },
        py::arg("x"), py::arg("y"), py::arg("z"), py::arg("n"),
        "Rank of (x, y, z) in the lexicographic (z, y, x) order of the domain.");
    m.def(
        "unrank3",
        [](u64 rank, u64 n) {
            const tb::Coord3 c = tb::unrank3(rank, tb::PyramidShape(n));
            return std::make_tuple(c.x, c.y, c.z);
        },
        py::arg("rank"), py::arg("n"), "Inverse of rank3; returns (x, y, z).");
    m.def("unrank_layer", &tb::unrank_layer, py::arg("rank"),
          "Layer z containing the given rank (largest z with tetra(z) <= rank).");
    m.def(
        "unrank2",
        [](u64 rank) {
            const tb::Coord2 c = tb::unrank2(rank);
            return std::make_tuple(c.x, c.y);
        },
        py::arg("rank"), "Position (x, y) of a rank within one layer.");
    m.def(
        "box_unrank",
        [](u64 index, u64 side) {
            const tb::BoxCoord c = tb::box_unrank(index, side);
            return std::make_tuple(c.x, c.y, c.z, c.valid);
        },
        py::arg("index"), py::arg("side"),
        "Decode a bounding-box grid index to (x, y, z, valid); valid marks "
        "membership in the wedge x <= y <= z.");
    m.def(
        "in_pyramid", [](u64 x, u64 y, u64 z, u64 n) { return tb::in_pyramid(tb::Coord3{x, y, z}, n); },
        py::arg("x"), py::arg("y"), py::arg("z"), py::arg("n"));

    // --------------------------------------------------------------- layouts
    m.def(
        "linear_address",
        [](u64 x, u64 y, u64 z, u64 n, u64 element_size) {
            return tb::LinearLayout(tb::PyramidShape(n), element_size).address(tb::Coord3{x, y, z});
        },
        py::arg("x"), py::arg("y"), py::arg("z"), py::arg("n"), py::arg("element_size") = 4,
        "Byte offset of an element in the dense rank-order layout.");
    m.def(
        "blocked_address",
        [](u64 x, u64 y, u64 z, u64 n, u64 rho, u64 element_size) {
            return tb::BlockedLayout(tb::BlockGrid(n, rho), element_size)
                .address(tb::Coord3{x, y, z});
        },
        py::arg("x"), py::arg("y"), py::arg("z"), py::arg("n"), py::arg("rho"),
        py::arg("element_size") = 4,
        "Byte offset of an element in the padded blocked layout (block edge rho).");
    m.def(
        "linear_size_bytes",
        [](u64 n, u64 element_size) {
            return tb::LinearLayout(tb::PyramidShape(n), element_size).size_bytes();
        },
        py::arg("n"), py::arg("element_size") = 4);
    m.def(
        "blocked_size_bytes",
        [](u64 n, u64 rho, u64 element_size) {
            return tb::BlockedLayout(tb::BlockGrid(n, rho), element_size).size_bytes();
        },
        py::arg("n"), py::arg("rho"), py::arg("element_size") = 4);
    m.def(
        "block_of",
        [](u64 x, u64 y, u64 z, u64 rho) {
            const tb::BlockRef r = tb::block_of(tb::Coord3{x, y, z}, tb::BlockGrid(0, rho));
            return std::make_tuple(std::make_tuple(r.block.x, r.block.y, r.block.z),
                                   std::make_tuple(r.local.x, r.local.y, r.local.z));
        },
        py::arg("x"), py::arg("y"), py::arg("z"), py::arg("rho"),
        "Split a coordinate into ((bx, by, bz), (lx, ly, lz)) for block edge rho.");
    m.def(
        "neighbor",
        [](u64 x, u64 y, u64 z, u64 n, const std::string& step) -> std::optional<std::tuple<u64, u64, u64>> {
            const auto r = tb::neighbor(tb::Coord3{x, y, z}, step_from(step), tb::PyramidShape(n));
            if (!r) return std::nullopt;
            return std::make_tuple(r->x, r->y, r->z);
        },
        py::arg("x"), py::arg("y"), py::arg("z"), py::arg("n"), py::arg("step"),
        "Unit-step neighbor inside the domain, or None at a boundary. Steps: "
        "+x -x +y -y +z -z.");

    py::class_<tb::PaddingReport>(m, "PaddingReport")
        .def_readonly("padded_elements", &tb::PaddingReport::padded_elements)
        .def_readonly("ratio", &tb::PaddingReport::ratio)
        .def_readonly("model_elements", &tb::PaddingReport::model_elements)
        .def("__repr__", [](const tb::PaddingReport& r) {
            std::ostringstream out;
            out << "PaddingReport(padded_elements=" << r.padded_elements << ", ratio=" << r.ratio
                << ", model_elements=" << r.model_elements << ")";
            return out.str();
        });
    m.def(
        "padding_overhead",
        [](u64 n, u64 rho) { return tb::padding_overhead(tb::BlockGrid(n, rho)); },
        py::arg("n"), py::arg("rho"),
        "Padding the blocked layout adds over the dense element count.");

    // ------------------------------------------------------------ cost model
    m.def("aligned_rows", &tb::aligned_rows, py::arg("n"), py::arg("k"));
    m.def("aligned_warps", &tb::aligned_warps, py::arg("n"), py::arg("k"));
    m.def("aligned_fraction", &tb::aligned_fraction, py::arg("n"), py::arg("k"));
    m.def("cost_linear", &tb::cost_linear, py::arg("n"), py::arg("k"), py::arg("alpha") = 2.0);
    m.def("cost_linear_layered", &tb::cost_linear_layered, py::arg("n"), py::arg("k"),
          py::arg("alpha") = 2.0);

    py::class_<tb::BlockedCost>(m, "BlockedCost")
        .def_readonly("model", &tb::BlockedCost::model)
        .def_readonly("exact", &tb::BlockedCost::exact)
        .def("__repr__", [](const tb::BlockedCost& c) {
            std::ostringstream out;
            out << "BlockedCost(model=" << c.model << ", exact=" << c.exact << ")";
            return out.str();
        });
    m.def("cost_blocked", &tb::cost_blocked, py::arg("n"), py::arg("k"), py::arg("rho"));

    py::class_<tb::ReorgSpeedup>(m, "ReorgSpeedup")
        .def_readonly("ratio", &tb::ReorgSpeedup::ratio)
        .def_readonly("approx", &tb::ReorgSpeedup::approx)
        .def_readonly("fraction", &tb::ReorgSpeedup::fraction)
        .def("__repr__", [](const tb::ReorgSpeedup& s) {
            std::ostringstream out;
            out << "ReorgSpeedup(ratio=" << s.ratio << ", approx=" << s.approx
                << ", fraction=" << s.fraction << ")";
            return out.str();
        });
    m.def("reorg_speedup", &tb::reorg_speedup, py::arg("n"), py::arg("k"));

    py::class_<tb::MapSpeedup>(m, "MapSpeedup")
        .def_readonly("factor", &tb::MapSpeedup::factor)
        .def_readonly("limit", &tb::MapSpeedup::limit)
        .def("__repr__", [](const tb::MapSpeedup& s) {
            std::ostringstream out;
            out << "MapSpeedup(factor=" << s.factor << ", limit=" << s.limit << ")";
            return out.str();
        });
    m.def("map_speedup", &tb::map_speedup, py::arg("n"), py::arg("beta"), py::arg("tau"));

    // -------------------------------------------------------------- simulator
    py::class_<tb::TransactionReport>(m, "TransactionReport")
        .def_readonly("warps_total", &tb::TransactionReport::warps_total)
        .def_readonly("warps_aligned", &tb::TransactionReport::warps_aligned)
        .def_readonly("transactions", &tb::TransactionReport::transactions)
        .def_readonly("ideal_transactions", &tb::TransactionReport::ideal_transactions)
        .def_readonly("measured_fraction", &tb::TransactionReport::measured_fraction)
        .def_readonly("measured_cost_ratio", &tb::TransactionReport::measured_cost_ratio)
        .def("__repr__",
             [](const tb::TransactionReport& r) { return repr_json("TransactionReport", tio::to_json(r)); });
    m.def(
        "simulate_warps",
        [](u64 n, const std::string& layout, const std::string& pattern, u64 rho, u64 omega,
           u64 element_bytes, u64 alignment) {
            tb::WarpModel model;
            model.omega = omega;
            model.element_bytes = element_bytes;
            model.alignment = alignment;
            return tb::simulate_warps(n, tio::layout_kind_from(layout), model,
                                      tio::pattern_from(pattern), rho);
        },
        py::arg("n"), py::arg("layout") = "linear", py::arg("pattern") = "sweep-once",
        py::arg("rho") = 4, py::arg("omega") = 32, py::arg("element_bytes") = 4,
        py::arg("alignment") = 128,
        "Replay an access pattern and count warps, aligned warps, and "
        "alignment-sized transactions exactly.");

    py::class_<tb::OccupancyReport>(m, "OccupancyReport")
        .def_readonly("blocks_launched", &tb::OccupancyReport::blocks_launched)
        .def_readonly("threads_launched", &tb::OccupancyReport::threads_launched)
        .def_readonly("threads_useful", &tb::OccupancyReport::threads_useful)
        .def_readonly("threads_wasted", &tb::OccupancyReport::threads_wasted)
        .def_readonly("waste_ratio", &tb::OccupancyReport::waste_ratio)
        .def("__repr__",
             [](const tb::OccupancyReport& r) { return repr_json("OccupancyReport", tio::to_json(r)); });
    m.def(
        "simulate_occupancy",
        [](u64 n, u64 rho, const std::string& strategy) {
            return tb::simulate_occupancy(n, rho, tio::strategy_from(strategy));
        },
        py::arg("n"), py::arg("rho"), py::arg("strategy"),
        "Thread accounting for a launch with the 'box' or 'pyramidal' grid.");

    m.def(
        "simulate_map_dispatch",
        [](u64 n, u64 rho, const std::string& strategy) {
            std::vector<std::tuple<u64, u64, u64>> out;
            for (const tb::Coord3& c :
                 tb::simulate_map_dispatch(n, rho, tio::strategy_from(strategy))) {
                out.emplace_back(c.x, c.y, c.z);
            }
            return out;
        },
        py::arg("n"), py::arg("rho"), py::arg("strategy"),
        "Valid block coordinates a dispatch produces, in emission order.");

    py::class_<tb::DispatchCheck>(m, "DispatchCheck")
        .def_readonly("equal", &tb::DispatchCheck::equal)
        .def_readonly("box_blocks", &tb::DispatchCheck::box_blocks)
        .def_readonly("valid_blocks", &tb::DispatchCheck::valid_blocks)
        .def_readonly("pyramidal_blocks", &tb::DispatchCheck::pyramidal_blocks)
        .def("__repr__", [](const tb::DispatchCheck& c) {
            std::ostringstream out;
            out << "DispatchCheck(equal=" << (c.equal ? "True" : "False")
                << ", box_blocks=" << c.box_blocks << ", valid_blocks=" << c.valid_blocks
                << ", pyramidal_blocks=" << c.pyramidal_blocks << ")";
            return out.str();
        });
    m.def("check_dispatch_equivalence", &tb::check_dispatch_equivalence, py::arg("n"),
          py::arg("rho"),
          "Streaming proof that box and pyramidal dispatch cover the same blocks.");

    // ------------------------------------------------------------------ bench
    py::class_<tb::SampleStats>(m, "SampleStats")
        .def_readonly("min_ns", &tb::SampleStats::min_ns)
        .def_readonly("mean_ns", &tb::SampleStats::mean_ns)
        .def_readonly("median_ns", &tb::SampleStats::median_ns)
        .def_readonly("stddev_ns", &tb::SampleStats::stddev_ns);

    py::class_<tb::MapBenchReport>(m, "MapBenchReport")
        .def_readonly("n", &tb::MapBenchReport::n)
        .def_readonly("rho", &tb::MapBenchReport::rho)
        .def_readonly("samples", &tb::MapBenchReport::samples)
        .def_readonly("box_evals", &tb::MapBenchReport::box_evals)
        .def_readonly("pyramidal_evals", &tb::MapBenchReport::pyramidal_evals)
        .def_readonly("beta_ns", &tb::MapBenchReport::beta_ns)
        .def_readonly("tau_ns", &tb::MapBenchReport::tau_ns)
        .def_readonly("beta_stats", &tb::MapBenchReport::beta_stats)
        .def_readonly("tau_stats", &tb::MapBenchReport::tau_stats)
        .def_readonly("i_model", &tb::MapBenchReport::i_model)
        .def_readonly("i_limit", &tb::MapBenchReport::i_limit)
        .def_readonly("i_throughput", &tb::MapBenchReport::i_throughput)
        .def_readonly("checksum_box", &tb::MapBenchReport::checksum_box)
        .def_readonly("checksum_pyramidal", &tb::MapBenchReport::checksum_pyramidal)
        .def("__repr__",
             [](const tb::MapBenchReport& r) { return repr_json("MapBenchReport", tio::to_json(r)); });
    m.def("bench_maps", &tb::bench_maps, py::arg("n"), py::arg("rho"), py::arg("repetitions") = 9,
          py::arg("min_evals") = u64{1'000'000},
          "Time full dispatch sweeps of the box and pyramidal maps; medians "
          "of per-evaluation nanoseconds.");

    py::class_<tb::LayoutSweepReport>(m, "LayoutSweepReport")
        .def_readonly("n", &tb::LayoutSweepReport::n)
        .def_readonly("rho", &tb::LayoutSweepReport::rho)
        .def_readonly("element_bytes", &tb::LayoutSweepReport::element_bytes)
        .def_readonly("samples", &tb::LayoutSweepReport::samples)
        .def_readonly("linear_bytes_per_s", &tb::LayoutSweepReport::linear_bytes_per_s)
        .def_readonly("blocked_bytes_per_s", &tb::LayoutSweepReport::blocked_bytes_per_s)
        .def_readonly("ratio", &tb::LayoutSweepReport::ratio)
        .def_readonly("checksum_linear", &tb::LayoutSweepReport::checksum_linear)
        .def_readonly("checksum_blocked", &tb::LayoutSweepReport::checksum_blocked)
        .def("__repr__",
             [](const tb::LayoutSweepReport& r) { return repr_json("LayoutSweepReport", tio::to_json(r)); });
    m.def(
        "bench_layout_sweep",
        [](u64 n, u64 rho, u64 element_bytes, u64 repetitions) {
            tb::WarpModel model;
            model.element_bytes = element_bytes;
            return tb::bench_layout_sweep(n, rho, model, repetitions);
        },
        py::arg("n"), py::arg("rho") = 4, py::arg("element_bytes") = 4,
        py::arg("repetitions") = 9,
        "Time a read-accumulate sweep over the linear and blocked layouts.");

    py::register_exception<tb::BenchResolutionError>(m, "BenchResolutionError", PyExc_RuntimeError);
}
