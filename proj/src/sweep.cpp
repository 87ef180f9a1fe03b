#include "sgpsr/sweep.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>

#include <fmt/format.h>

namespace sgpsr {

namespace {

std::vector<std::string_view> split_list(std::string_view text)
{
    std::vector<std::string_view> out;
    while (!text.empty()) {
        const auto comma = text.find(',');
        std::string_view item = text.substr(0, comma);
        while (!item.empty() && (item.front() == ' ' || item.front() == '\t'))
            item.remove_prefix(1);
        while (!item.empty() && (item.back() == ' ' || item.back() == '\t'))
            item.remove_suffix(1);
        if (!item.empty())
            out.push_back(item);
        if (comma == std::string_view::npos)
            break;
        text.remove_prefix(comma + 1);
    }
    return out;
}

template <typename T>
std::vector<T> parse_list(std::string_view key, std::string_view text, std::vector<std::string>& errors)
{
    std::vector<T> out;
    for (auto item : split_list(text)) {
        T value{};
        auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
        if (ec != std::errc{} || ptr != item.data() + item.size())
            errors.push_back(fmt::format("{}: '{}' is not a valid number", key, item));
        else
            out.push_back(value);
    }
    if (out.empty())
        errors.push_back(fmt::format("{}: list is empty", key));
    return out;
}

struct Stats {
    double mean = 0.0;
    double std = 0.0;
};

Stats stats_of(const std::vector<double>& values)
{
    Stats s;
    if (values.empty())
        return s;
    for (double v : values)
        s.mean += v;
    s.mean /= static_cast<double>(values.size());
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values)
            ss += (v - s.mean) * (v - s.mean);
        s.std = std::sqrt(ss / static_cast<double>(values.size() - 1));
    }
    return s;
}

}  // namespace

SweepAxes apply_sweep_keys(SweepAxes axes, KeyValues& kv)
{
    std::vector<std::string> errors;
    auto take = [&kv](std::string_view key) -> std::optional<std::string> {
        auto it = kv.find(key);
        if (it == kv.end())
            return std::nullopt;
        std::string v = it->second;
        kv.erase(it);
        return v;
    };
    if (auto v = take("sweep_protocols")) {
        axes.protocols.clear();
        for (auto item : split_list(*v)) {
            try {
                axes.protocols.push_back(parse_protocol(item));
            }
            catch (const ConfigError& e) {
                errors.insert(errors.end(), e.diagnostics().begin(), e.diagnostics().end());
            }
        }
        if (axes.protocols.empty())
            errors.push_back("sweep_protocols: list is empty");
    }
    if (auto v = take("sweep_nodes"))
        axes.nodes = parse_list<std::uint32_t>("sweep_nodes", *v, errors);
    if (auto v = take("sweep_areas"))
        axes.areas = parse_list<double>("sweep_areas", *v, errors);
    if (auto v = take("sweep_malicious"))
        axes.malicious = parse_list<std::uint32_t>("sweep_malicious", *v, errors);
    if (!errors.empty())
        throw ConfigError(std::move(errors));
    return axes;
}

std::string describe(const SweepCell& cell)
{
    return fmt::format("protocol={} nodes={} area={}x{} malicious={}", to_string(cell.protocol), cell.nodes,
                       cell.area, cell.area, cell.malicious);
}

std::vector<SweepCell> sweep_cells(const SweepAxes& axes)
{
    std::vector<SweepCell> cells;
    for (auto protocol : axes.protocols)
        for (auto nodes : axes.nodes)
            for (auto area : axes.areas)
                for (auto malicious : axes.malicious)
                    cells.push_back({protocol, nodes, area, malicious});
    return cells;
}

SimConfig cell_config(const SimConfig& base, const SweepCell& cell, std::uint32_t run_index)
{
    SimConfig cfg = base;
    cfg.protocol = cell.protocol;
    cfg.n_nodes = cell.nodes;
    cfg.area = {cell.area, cell.area};
    cfg.n_malicious = cell.malicious;
    cfg.seed = base.seed + run_index;
    return cfg;
}

std::string format_run_row(const SweepCell& cell, std::uint64_t seed, const RunMetrics& m)
{
    std::string overhead = m.routing_overhead ? fmt::format("{:.4f}", *m.routing_overhead) : std::string{};
    return fmt::format("{},{},{},{},{},{},{},{},{:.4f},{},{:.6f},{:.4f}\n", to_string(cell.protocol), cell.nodes,
                       cell.area, cell.malicious, seed, m.sent, m.delivered, m.control_packets, m.delivery_ratio,
                       overhead, m.avg_delay, m.avg_hops_delivered);
}

std::string format_aggregate_rows(const SweepCell& cell, const std::vector<const RunMetrics*>& runs)
{
    std::vector<double> sent, delivered, control, ratio, overhead, delay, hops;
    for (const auto* m : runs) {
        sent.push_back(static_cast<double>(m->sent));
        delivered.push_back(static_cast<double>(m->delivered));
        control.push_back(static_cast<double>(m->control_packets));
        ratio.push_back(m->delivery_ratio);
        if (m->routing_overhead)
            overhead.push_back(*m->routing_overhead);
        delay.push_back(m->avg_delay);
        hops.push_back(m->avg_hops_delivered);
    }
    const Stats s_sent = stats_of(sent), s_del = stats_of(delivered), s_ctl = stats_of(control),
                s_ratio = stats_of(ratio), s_ovh = stats_of(overhead), s_delay = stats_of(delay),
                s_hops = stats_of(hops);
    auto row = [&](std::string_view label, auto pick) {
        std::string ovh = overhead.empty() ? std::string{} : fmt::format("{:.4f}", pick(s_ovh));
        return fmt::format("{},{},{},{},{},{:.4f},{:.4f},{:.4f},{:.4f},{},{:.6f},{:.4f}\n", to_string(cell.protocol),
                           cell.nodes, cell.area, cell.malicious, label, pick(s_sent), pick(s_del), pick(s_ctl),
                           pick(s_ratio), ovh, pick(s_delay), pick(s_hops));
    };
    return row("mean", [](const Stats& s) { return s.mean; }) + row("std", [](const Stats& s) { return s.std; });
}

SweepResult run_sweep(const SimConfig& base, const SweepAxes& axes, const SweepOptions& options)
{
    const auto cells = sweep_cells(axes);
    const std::uint32_t seeds = options.seeds;

    // validate every cell up front so a bad axis value fails before any work
    for (const auto& cell : cells) {
        try {
            validate_config(cell_config(base, cell, 0));
        }
        catch (const ConfigError& e) {
            throw SweepError(fmt::format("sweep cell {}: {}", describe(cell), e.what()));
        }
    }

    SweepResult result;
    result.runs.resize(cells.size() * seeds);
    for (std::size_t c = 0; c < cells.size(); ++c)
        for (std::uint32_t r = 0; r < seeds; ++r) {
            auto& slot = result.runs[c * seeds + r];
            slot.cell = cells[c];
            slot.seed = base.seed + r;
        }

    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::mutex error_mutex;
    std::string first_error;
    std::size_t first_error_index = result.runs.size();

    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= result.runs.size() || failed.load())
                return;
            SweepRun& slot = result.runs[i];
            try {
                RunResult r = run(cell_config(base, slot.cell, static_cast<std::uint32_t>(i % seeds)));
                slot.metrics = r.metrics;
                if (options.keep_deliveries)
                    slot.deliveries = std::move(r.deliveries);
            }
            catch (const std::exception& e) {
                std::lock_guard lock(error_mutex);
                if (i < first_error_index) {
                    first_error_index = i;
                    first_error = fmt::format("sweep cell {} seed {}: {}", describe(slot.cell), slot.seed, e.what());
                }
                failed.store(true);
                return;
            }
        }
    };

    const std::uint32_t jobs = std::max<std::uint32_t>(1, options.jobs);
    if (jobs == 1) {
        worker();
    }
    else {
        std::vector<std::thread> pool;
        for (std::uint32_t j = 0; j < jobs; ++j)
            pool.emplace_back(worker);
        for (auto& t : pool)
            t.join();
    }
    if (failed.load())
        throw SweepError(first_error);

    result.csv = std::string(kCsvHeader) + "\n";
    for (std::size_t c = 0; c < cells.size(); ++c) {
        std::vector<const RunMetrics*> members;
        for (std::uint32_t r = 0; r < seeds; ++r) {
            const auto& run = result.runs[c * seeds + r];
            result.csv += format_run_row(run.cell, run.seed, run.metrics);
            members.push_back(&run.metrics);
        }
        if (seeds > 0)
            result.csv += format_aggregate_rows(cells[c], members);
    }
    return result;
}

}  // namespace sgpsr
