#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "sgpsr/config.hpp"
#include "sgpsr/engine.hpp"
#include "sgpsr/sweep.hpp"

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kConfigError = 2, kInconsistent = 3, kSweepFailed = 4, kIoError = 5 };

bool write_text(const std::string& path, const std::string& text)
{
    if (path.empty() || path == "-") {
        std::cout << text;
        return static_cast<bool>(std::cout);
    }
    std::ofstream out(path, std::ios::binary);
    out << text;
    return static_cast<bool>(out);
}

struct SimulateArgs {
    std::optional<std::string> protocol;
    std::optional<std::uint32_t> nodes;
    std::optional<std::string> area;
    std::optional<std::uint32_t> malicious;
    std::optional<std::uint64_t> seed;
    std::string config;
    std::optional<std::string> trace;
    std::string out;
};

struct SweepArgs {
    std::string config;
    std::uint32_t seeds = 10;
    std::uint32_t jobs = 0;
    std::string out;
};

int simulate(const SimulateArgs& args)
{
    using namespace sgpsr;
    SimConfig cfg;
    KeyValues overrides;
    if (!args.config.empty())
        cfg = load_config_file(args.config);
    if (args.protocol)
        overrides["protocol"] = *args.protocol;
    if (args.nodes)
        overrides["nodes"] = std::to_string(*args.nodes);
    if (args.area)
        overrides["area_m"] = *args.area;
    if (args.malicious)
        overrides["malicious"] = std::to_string(*args.malicious);
    if (args.seed)
        overrides["seed"] = std::to_string(*args.seed);
    apply_config_keys(cfg, overrides);
    cfg = validate_config(cfg);

    RunOptions options;
    options.trace = args.trace.has_value();
    RunResult result = run(cfg, options);

    const SweepCell cell{cfg.protocol, cfg.n_nodes, cfg.area.width, cfg.n_malicious};
    std::string csv = std::string(kCsvHeader) + "\n" + format_run_row(cell, cfg.seed, result.metrics);
    if (!write_text(args.out, csv)) {
        std::cerr << "error: cannot write " << args.out << "\n";
        return kIoError;
    }
    if (args.trace) {
        std::string path = *args.trace;
        if (path.empty())
            path = args.out.empty() || args.out == "-" ? "-" : args.out + ".trace";
        if (!write_text(path, result.trace)) {
            std::cerr << "error: cannot write " << path << "\n";
            return kIoError;
        }
        std::cerr << fmt::format("trace_hash={:016x}\n", result.trace_hash);
    }
    return kOk;
}

int sweep(const SweepArgs& args)
{
    using namespace sgpsr;
    SimConfig base;
    SweepAxes axes;
    if (!args.config.empty()) {
        std::ifstream in(args.config);
        if (!in)
            throw ConfigError({fmt::format("cannot open config file '{}'", args.config)});
        std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        KeyValues kv = parse_key_values(text);
        axes = apply_sweep_keys(axes, kv);
        apply_config_keys(base, kv);
        if (!kv.empty()) {
            std::vector<std::string> errors;
            for (const auto& [key, value] : kv)
                errors.push_back(fmt::format("{}: unknown key", key));
            throw ConfigError(std::move(errors));
        }
    }
    SweepOptions options;
    options.seeds = args.seeds;
    options.jobs = args.jobs == 0 ? std::max(1u, std::thread::hardware_concurrency()) : args.jobs;
    SweepResult result = run_sweep(base, axes, options);
    if (!write_text(args.out, result.csv)) {
        std::cerr << "error: cannot write " << args.out << "\n";
        return kIoError;
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"GPSR / S-GPSR wireless sensor network simulator"};
    app.require_subcommand(1);

    SimulateArgs sim;
    auto* sim_cmd = app.add_subcommand("simulate", "Run one simulation and print its CSV row");
    sim_cmd->add_option("--protocol", sim.protocol, "gpsr | sgpsr");
    sim_cmd->add_option("--nodes", sim.nodes, "Number of nodes");
    sim_cmd->add_option("--area", sim.area, "Square side in metres, or WIDTHxHEIGHT");
    sim_cmd->add_option("--malicious", sim.malicious, "Number of malicious nodes");
    sim_cmd->add_option("--seed", sim.seed, "Run seed");
    sim_cmd->add_option("--config", sim.config, "Key-value configuration file")->check(CLI::ExistingFile);
    sim_cmd->add_option("--trace", sim.trace, "Write the per-event trace (to FILE, or beside --out)")
        ->expected(0, 1)
        ->default_str("");
    sim_cmd->add_option("--out", sim.out, "Output CSV file (default: stdout)");

    SweepArgs sw;
    auto* sweep_cmd = app.add_subcommand("sweep", "Run the parameter sweep and write CSV");
    sweep_cmd->add_option("--config", sw.config, "Base configuration file (may carry sweep_* axis keys)")
        ->check(CLI::ExistingFile);
    sweep_cmd->add_option("--seeds", sw.seeds, "Seeds per cell")->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--jobs", sw.jobs, "Concurrent runs (default: hardware threads)");
    sweep_cmd->add_option("--out", sw.out, "Output CSV file (default: stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim_cmd->parsed())
            return simulate(sim);
        return sweep(sw);
    }
    catch (const sgpsr::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    }
    catch (const sgpsr::InconsistencyError& e) {
        std::cerr << "internal inconsistency: " << e.what() << "\n";
        return kInconsistent;
    }
    catch (const sgpsr::SweepError& e) {
        std::cerr << "sweep failed: " << e.what() << "\n";
        return kSweepFailed;
    }
}
