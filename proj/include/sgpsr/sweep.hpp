#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sgpsr/config.hpp"
#include "sgpsr/engine.hpp"
#include "sgpsr/metrics.hpp"

namespace sgpsr {

inline constexpr std::string_view kCsvHeader =
    "protocol,n_nodes,area_m,n_malicious,seed,sent,delivered,control_packets,delivery_ratio,routing_overhead,"
    "avg_delay_s,avg_hops";

/// Axes of the cross product. Defaults reproduce the published grid, plus the
/// attack-free baseline at 0 malicious nodes.
struct SweepAxes {
    std::vector<Protocol> protocols{Protocol::Gpsr, Protocol::Sgpsr};
    std::vector<std::uint32_t> nodes{150, 200};
    std::vector<double> areas{300.0, 500.0};  // square side, metres
    std::vector<std::uint32_t> malicious{0, 5, 10, 15, 20, 25};
};

/// Reads and erases `sweep_protocols`, `sweep_nodes`, `sweep_areas`, `sweep_malicious` (comma lists).
SweepAxes apply_sweep_keys(SweepAxes axes, KeyValues& kv);

struct SweepCell {
    Protocol protocol = Protocol::Gpsr;
    std::uint32_t nodes = 0;
    double area = 0.0;
    std::uint32_t malicious = 0;
};

std::string describe(const SweepCell& cell);

struct SweepRun {
    SweepCell cell;
    std::uint64_t seed = 0;
    RunMetrics metrics;
    std::vector<DeliveryRecord> deliveries;  // only with keep_deliveries
};

struct SweepOptions {
    std::uint32_t seeds = 10;
    std::uint32_t jobs = 1;
    bool keep_deliveries = false;
};

struct SweepResult {
    std::vector<SweepRun> runs;  // sweep order: protocol, nodes, area, malicious, seed
    std::string csv;
};

class SweepError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Cells in sweep order.
std::vector<SweepCell> sweep_cells(const SweepAxes& axes);

/// The configuration one sweep run uses; seeds are base.seed + run_index.
SimConfig cell_config(const SimConfig& base, const SweepCell& cell, std::uint32_t run_index);

/// Runs the full cross product (up to `jobs` runs at once) and renders the CSV:
/// per cell, one row per seed followed by a `mean` and a `std` aggregate row.
SweepResult run_sweep(const SimConfig& base, const SweepAxes& axes, const SweepOptions& options);

std::string format_run_row(const SweepCell& cell, std::uint64_t seed, const RunMetrics& m);

/// `mean` and `std` (sample standard deviation) rows over one cell's runs.
std::string format_aggregate_rows(const SweepCell& cell, const std::vector<const RunMetrics*>& runs);

}  // namespace sgpsr
