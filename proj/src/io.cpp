#include "tetrablock/io.hpp"

#include <charconv>
#include <stdexcept>

namespace tetrablock::io {

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string to_string(LayoutKind kind) {
    return kind == LayoutKind::linear ? "linear" : "blocked";
}

std::string to_string(AccessPattern pattern) {
    return pattern == AccessPattern::sweep_once ? "sweep-once" : "stencil-6";
}

std::string to_string(GridStrategy strategy) {
    return strategy == GridStrategy::box ? "box" : "pyramidal";
}

LayoutKind layout_kind_from(const std::string& name) {
    if (name == "linear") return LayoutKind::linear;
    if (name == "blocked") return LayoutKind::blocked;
    throw std::invalid_argument("unknown layout kind: " + name);
}

AccessPattern pattern_from(const std::string& name) {
    if (name == "sweep-once" || name == "sweep") return AccessPattern::sweep_once;
    if (name == "stencil-6" || name == "stencil") return AccessPattern::stencil6;
    throw std::invalid_argument("unknown access pattern: " + name);
}

GridStrategy strategy_from(const std::string& name) {
    if (name == "box") return GridStrategy::box;
    if (name == "pyramidal") return GridStrategy::pyramidal;
    throw std::invalid_argument("unknown grid strategy: " + name);
}

ordered_json to_json(const TransactionReport& r) {
    return ordered_json{
        {"warps_total", r.warps_total},
        {"warps_aligned", r.warps_aligned},
        {"transactions", r.transactions},
        {"ideal_transactions", r.ideal_transactions},
        {"measured_fraction", r.measured_fraction},
        {"measured_cost_ratio", r.measured_cost_ratio},
    };
}

ordered_json to_json(const OccupancyReport& r) {
    return ordered_json{
        {"blocks_launched", r.blocks_launched},
        {"threads_launched", r.threads_launched},
        {"threads_useful", r.threads_useful},
        {"threads_wasted", r.threads_wasted},
        {"waste_ratio", r.waste_ratio},
    };
}

ordered_json to_json(const MapBenchReport& r) {
    return ordered_json{
        {"n", r.n},
        {"rho", r.rho},
        {"samples", r.samples},
        {"box_evals", r.box_evals},
        {"pyramidal_evals", r.pyramidal_evals},
        {"beta_ns", r.beta_ns},
        {"tau_ns", r.tau_ns},
        {"beta_min_ns", r.beta_stats.min_ns},
        {"beta_mean_ns", r.beta_stats.mean_ns},
        {"beta_stddev_ns", r.beta_stats.stddev_ns},
        {"tau_min_ns", r.tau_stats.min_ns},
        {"tau_mean_ns", r.tau_stats.mean_ns},
        {"tau_stddev_ns", r.tau_stats.stddev_ns},
        {"i_model", r.i_model},
        {"i_limit", r.i_limit},
        {"i_throughput", r.i_throughput},
        {"checksum_box", r.checksum_box},
        {"checksum_pyramidal", r.checksum_pyramidal},
    };
}

ordered_json to_json(const LayoutSweepReport& r) {
    return ordered_json{
        {"n", r.n},
        {"rho", r.rho},
        {"b", r.element_bytes},
        {"samples", r.samples},
        {"linear_bytes_per_s", r.linear_bytes_per_s},
        {"blocked_bytes_per_s", r.blocked_bytes_per_s},
        {"ratio", r.ratio},
        {"checksum_linear", r.checksum_linear},
        {"checksum_blocked", r.checksum_blocked},
    };
}

ordered_json to_json(const LayoutDescriptor& d) {
    return ordered_json{
        {"kind", to_string(d.kind)},
        {"n", d.n},
        {"rho", d.rho},
        {"element_size", d.element_size},
    };
}

LayoutDescriptor layout_descriptor_from_json(const ordered_json& doc) {
    if (!doc.is_object()) throw std::invalid_argument("layout descriptor: not a JSON object");
    LayoutDescriptor d;
    d.kind = layout_kind_from(doc.at("kind").get<std::string>());
    d.n = doc.at("n").get<u64>();
    d.rho = doc.value("rho", u64{1});
    d.element_size = doc.value("element_size", u64{4});
    if (d.rho == 0) throw std::invalid_argument("layout descriptor: rho must be >= 1");
    if (d.element_size == 0) throw std::invalid_argument("layout descriptor: element_size must be >= 1");
    return d;
}

namespace {

std::string cell_text(const ordered_json& v) {
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_float()) return format_double(v.get<double>());
    if (v.is_number_unsigned()) return std::to_string(v.get<u64>());
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_string()) return v.get<std::string>();
    throw std::invalid_argument("csv cell: unsupported value type");
}

}  // namespace

std::string csv_from_rows(const std::vector<ordered_json>& rows) {
    if (rows.empty()) return "";
    std::string out;
    bool first = true;
    for (const auto& [key, value] : rows.front().items()) {
        (void)value;
        if (!first) out += ',';
        out += key;
        first = false;
    }
    out += '\n';
    for (const auto& row : rows) {
        if (row.size() != rows.front().size())
            throw std::invalid_argument("csv rows: inconsistent schema");
        first = true;
        for (const auto& [key, value] : row.items()) {
            if (!rows.front().contains(key)) throw std::invalid_argument("csv rows: inconsistent schema");
            if (!first) out += ',';
            out += cell_text(value);
            first = false;
        }
        out += '\n';
    }
    return out;
}

std::string json_from_rows(const std::vector<ordered_json>& rows) {
    ordered_json arr = ordered_json::array();
    for (const auto& row : rows) arr.push_back(row);
    return arr.dump(2) + "\n";
}

}  // namespace tetrablock::io
