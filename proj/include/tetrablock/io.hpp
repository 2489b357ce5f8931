#pragma once

// Serialization helpers: stable-field JSON objects for every report type,
// CSV assembly from those same objects (one-to-one fields), and layout
// descriptor documents for reproducible runs.

#include "tetrablock/bench.hpp"
#include "tetrablock/simulator.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace tetrablock::io {

using ordered_json = nlohmann::ordered_json;

/// Shortest decimal form that parses back to exactly the same double.
std::string format_double(double v);

std::string to_string(LayoutKind kind);
std::string to_string(AccessPattern pattern);
std::string to_string(GridStrategy strategy);
LayoutKind layout_kind_from(const std::string& name);
AccessPattern pattern_from(const std::string& name);
GridStrategy strategy_from(const std::string& name);

ordered_json to_json(const TransactionReport& r);
ordered_json to_json(const OccupancyReport& r);
ordered_json to_json(const MapBenchReport& r);
ordered_json to_json(const LayoutSweepReport& r);

/// Everything needed to reconstruct a layout for a reproducible run.
struct LayoutDescriptor {
    LayoutKind kind = LayoutKind::linear;
    u64 n = 0;
    u64 rho = 1;  // meaningful for blocked; kept at 1 for linear
    u64 element_size = 4;
    friend bool operator==(const LayoutDescriptor&, const LayoutDescriptor&) = default;
};

ordered_json to_json(const LayoutDescriptor& d);
LayoutDescriptor layout_descriptor_from_json(const ordered_json& doc);

/// CSV with a header row: columns are exactly the keys of the first row
/// object, values formatted deterministically. All rows must share the
/// first row's schema.
std::string csv_from_rows(const std::vector<ordered_json>& rows);

/// The same rows as a JSON array (pretty-printed, trailing newline).
std::string json_from_rows(const std::vector<ordered_json>& rows);

}  // namespace tetrablock::io
