#include "sgpsr/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include <fmt/format.h>

namespace sgpsr {

namespace {

std::string join_lines(const std::vector<std::string>& lines)
{
    std::string out = "invalid configuration";
    for (const auto& line : lines)
        out += "\n  - " + line;
    return out;
}

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

bool is_finite_positive(double v) { return std::isfinite(v) && v > 0.0; }

template <typename T>
bool parse_number(std::string_view text, T& out)
{
    const char* begin = text.data();
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc{} && ptr == end;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> diagnostics)
    : std::runtime_error(join_lines(diagnostics)), diagnostics_(std::move(diagnostics))
{
}

std::string_view to_string(Protocol p) { return p == Protocol::Gpsr ? "GPSR" : "SGPSR"; }

std::string_view to_string(AttackMode a)
{
    switch (a) {
    case AttackMode::Sinkhole: return "sinkhole";
    case AttackMode::SelectiveForward: return "selective";
    case AttackMode::Both: return "both";
    }
    return "both";
}

std::string_view to_string(MaliciousAction a) { return a == MaliciousAction::Drop ? "drop" : "tamper"; }

std::string_view to_string(Planarization p) { return p == Planarization::Gabriel ? "gabriel" : "rng"; }

Protocol parse_protocol(std::string_view text)
{
    if (text == "GPSR" || text == "gpsr")
        return Protocol::Gpsr;
    if (text == "SGPSR" || text == "sgpsr" || text == "S-GPSR" || text == "s-gpsr")
        return Protocol::Sgpsr;
    throw ConfigError({fmt::format("protocol: unknown value '{}' (expected gpsr|sgpsr)", text)});
}

AttackMode parse_attack(std::string_view text)
{
    if (text == "sinkhole")
        return AttackMode::Sinkhole;
    if (text == "selective")
        return AttackMode::SelectiveForward;
    if (text == "both")
        return AttackMode::Both;
    throw ConfigError({fmt::format("attack: unknown value '{}' (expected sinkhole|selective|both)", text)});
}

Planarization parse_planarization(std::string_view text)
{
    if (text == "gabriel")
        return Planarization::Gabriel;
    if (text == "rng")
        return Planarization::Rng;
    throw ConfigError({fmt::format("planarization: unknown value '{}' (expected gabriel|rng)", text)});
}

std::vector<std::string> config_diagnostics(const SimConfig& cfg)
{
    std::vector<std::string> out;
    auto require = [&out](bool ok, std::string message) {
        if (!ok)
            out.push_back(std::move(message));
    };
    require(cfg.n_nodes >= 2, "nodes: need at least 2 nodes");
    require(cfg.n_malicious < cfg.n_nodes, "malicious: n_malicious must be smaller than n_nodes");
    require(is_finite_positive(cfg.area.width) && is_finite_positive(cfg.area.height),
            "area_m: width and height must be positive and finite");
    require(cfg.packet_size > 0, "packet_size_bytes: must be positive");
    require(is_finite_positive(cfg.traffic.interval_s), "cbr_interval_s: must be positive");
    require(std::isfinite(cfg.traffic.warmup_s) && cfg.traffic.warmup_s >= 0.0, "warmup_s: must be non-negative");
    require(std::uint64_t{2} * cfg.traffic.flows + cfg.n_malicious <= cfg.n_nodes,
            "flows: 2 * flows + n_malicious must not exceed n_nodes (flow endpoints are honest and distinct)");
    require(std::isfinite(cfg.mobility.pause_s) && cfg.mobility.pause_s >= 0.0, "pause_s: must be non-negative");
    require(is_finite_positive(cfg.mobility.speed_min), "speed_min_mps: must be positive");
    require(std::isfinite(cfg.mobility.speed_max) && cfg.mobility.speed_max >= cfg.mobility.speed_min,
            "speed_max_mps: must be at least speed_min_mps");
    require(is_finite_positive(cfg.radio_range), "radio_range_m: must be positive");
    require(is_finite_positive(cfg.beacon_interval), "beacon_interval_s: must be positive");
    require(cfg.beacon_jitter >= 0.0 && cfg.beacon_jitter < 1.0, "beacon_jitter: must lie in [0, 1)");
    require(is_finite_positive(cfg.neighbor_timeout), "neighbor_timeout_s: must be positive");
    require(cfg.trust.init >= 0.0 && cfg.trust.init <= 1.0, "trust_init: must lie in [0, 1]");
    require(is_finite_positive(cfg.trust.reward), "trust_reward: must be positive");
    require(is_finite_positive(cfg.trust.penalty), "trust_penalty: must be positive");
    require(cfg.trust.threshold >= 0.0 && cfg.trust.threshold < 1.0, "trust_threshold: must lie in [0, 1)");
    require(is_finite_positive(cfg.trust.tui), "tui_s: must be positive");
    require(is_finite_positive(cfg.sim_time), "sim_time_s: must be positive");
    require(cfg.drop_prob >= 0.0 && cfg.drop_prob <= 1.0, "drop_prob: must lie in [0, 1]");
    require(std::isfinite(cfg.sinkhole_jitter) && cfg.sinkhole_jitter >= 0.0,
            "sinkhole_jitter_m: must be non-negative");
    require(std::isfinite(cfg.tx_delay) && cfg.tx_delay >= 0.0, "tx_delay_s: must be non-negative");
    require(is_finite_positive(cfg.bandwidth_bps), "bandwidth_bps: must be positive");
    return out;
}

SimConfig validate_config(SimConfig cfg)
{
    if (auto diags = config_diagnostics(cfg); !diags.empty())
        throw ConfigError(std::move(diags));
    if (cfg.ttl == 0)
        cfg.ttl = 2 * cfg.n_nodes;
    return cfg;
}

KeyValues parse_key_values(std::string_view text)
{
    KeyValues kv;
    std::vector<std::string> errors;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            errors.push_back(fmt::format("line {}: expected 'key = value'", line_no));
            continue;
        }
        std::string key{trim(line.substr(0, eq))};
        std::string value{trim(line.substr(eq + 1))};
        if (key.empty()) {
            errors.push_back(fmt::format("line {}: empty key", line_no));
            continue;
        }
        if (kv.contains(key)) {
            errors.push_back(fmt::format("line {}: duplicate key '{}'", line_no, key));
            continue;
        }
        kv.emplace(std::move(key), std::move(value));
    }
    if (!errors.empty())
        throw ConfigError(std::move(errors));
    return kv;
}

void apply_config_keys(SimConfig& cfg, KeyValues& kv)
{
    std::vector<std::string> errors;

    auto take = [&kv](std::string_view key) -> std::optional<std::string> {
        auto it = kv.find(key);
        if (it == kv.end())
            return std::nullopt;
        std::string value = it->second;
        kv.erase(it);
        return value;
    };
    auto number = [&]<typename T>(std::string_view key, T& field) {
        if (auto v = take(key)) {
            if (!parse_number(*v, field))
                errors.push_back(fmt::format("{}: '{}' is not a valid number", key, *v));
        }
    };
    auto choice = [&](std::string_view key, auto parse, auto& field) {
        if (auto v = take(key)) {
            try {
                field = parse(*v);
            }
            catch (const ConfigError& e) {
                errors.insert(errors.end(), e.diagnostics().begin(), e.diagnostics().end());
            }
        }
    };

    choice("protocol", parse_protocol, cfg.protocol);
    number("nodes", cfg.n_nodes);
    if (auto v = take("area_m")) {
        std::string_view text = *v;
        const auto x = text.find_first_of("xX");
        bool ok = false;
        if (x == std::string_view::npos) {
            ok = parse_number(trim(text), cfg.area.width);
            cfg.area.height = cfg.area.width;
        }
        else {
            ok = parse_number(trim(text.substr(0, x)), cfg.area.width) &&
                 parse_number(trim(text.substr(x + 1)), cfg.area.height);
        }
        if (!ok)
            errors.push_back(fmt::format("area_m: '{}' is not 'SIDE' or 'WIDTHxHEIGHT'", *v));
    }
    number("malicious", cfg.n_malicious);
    number("packet_size_bytes", cfg.packet_size);
    if (auto v = take("traffic"); v && *v != "cbr" && *v != "CBR")
        errors.push_back(fmt::format("traffic: unknown value '{}' (only cbr is supported)", *v));
    number("flows", cfg.traffic.flows);
    number("cbr_interval_s", cfg.traffic.interval_s);
    number("warmup_s", cfg.traffic.warmup_s);
    if (auto v = take("mobility"); v && *v != "random_waypoint")
        errors.push_back(fmt::format("mobility: unknown value '{}' (only random_waypoint is supported)", *v));
    number("pause_s", cfg.mobility.pause_s);
    number("speed_min_mps", cfg.mobility.speed_min);
    number("speed_max_mps", cfg.mobility.speed_max);
    number("radio_range_m", cfg.radio_range);
    number("beacon_interval_s", cfg.beacon_interval);
    number("beacon_jitter", cfg.beacon_jitter);
    number("neighbor_timeout_s", cfg.neighbor_timeout);
    number("trust_init", cfg.trust.init);
    number("trust_reward", cfg.trust.reward);
    number("trust_penalty", cfg.trust.penalty);
    number("trust_threshold", cfg.trust.threshold);
    number("tui_s", cfg.trust.tui);
    number("sim_time_s", cfg.sim_time);
    number("seed", cfg.seed);
    choice("attack", parse_attack, cfg.attack);
    number("drop_prob", cfg.drop_prob);
    if (auto v = take("malicious_action")) {
        if (*v == "drop")
            cfg.malicious_action = MaliciousAction::Drop;
        else if (*v == "tamper")
            cfg.malicious_action = MaliciousAction::Tamper;
        else
            errors.push_back(fmt::format("malicious_action: unknown value '{}' (expected drop|tamper)", *v));
    }
    number("sinkhole_jitter_m", cfg.sinkhole_jitter);
    choice("planarization", parse_planarization, cfg.planarization);
    number("tx_delay_s", cfg.tx_delay);
    number("bandwidth_bps", cfg.bandwidth_bps);
    number("ttl", cfg.ttl);

    if (!errors.empty())
        throw ConfigError(std::move(errors));
}

SimConfig parse_config(std::string_view text)
{
    KeyValues kv = parse_key_values(text);
    SimConfig cfg;
    apply_config_keys(cfg, kv);
    if (!kv.empty()) {
        std::vector<std::string> errors;
        for (const auto& [key, value] : kv)
            errors.push_back(fmt::format("{}: unknown key", key));
        throw ConfigError(std::move(errors));
    }
    return cfg;
}

SimConfig load_config_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError({fmt::format("cannot open config file '{}'", path)});
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

std::string serialize_config(const SimConfig& cfg)
{
    std::string out;
    auto line = [&out](std::string_view key, const auto& value) { out += fmt::format("{} = {}\n", key, value); };
    line("protocol", to_string(cfg.protocol));
    line("nodes", cfg.n_nodes);
    if (cfg.area.width == cfg.area.height)
        line("area_m", cfg.area.width);
    else
        line("area_m", fmt::format("{}x{}", cfg.area.width, cfg.area.height));
    line("malicious", cfg.n_malicious);
    line("packet_size_bytes", cfg.packet_size);
    line("traffic", "cbr");
    line("flows", cfg.traffic.flows);
    line("cbr_interval_s", cfg.traffic.interval_s);
    line("warmup_s", cfg.traffic.warmup_s);
    line("mobility", "random_waypoint");
    line("pause_s", cfg.mobility.pause_s);
    line("speed_min_mps", cfg.mobility.speed_min);
    line("speed_max_mps", cfg.mobility.speed_max);
    line("radio_range_m", cfg.radio_range);
    line("beacon_interval_s", cfg.beacon_interval);
    line("beacon_jitter", cfg.beacon_jitter);
    line("neighbor_timeout_s", cfg.neighbor_timeout);
    line("trust_init", cfg.trust.init);
    line("trust_reward", cfg.trust.reward);
    line("trust_penalty", cfg.trust.penalty);
    line("trust_threshold", cfg.trust.threshold);
    line("tui_s", cfg.trust.tui);
    line("sim_time_s", cfg.sim_time);
    line("seed", cfg.seed);
    line("attack", to_string(cfg.attack));
    line("drop_prob", cfg.drop_prob);
    line("malicious_action", to_string(cfg.malicious_action));
    line("sinkhole_jitter_m", cfg.sinkhole_jitter);
    line("planarization", to_string(cfg.planarization));
    line("tx_delay_s", cfg.tx_delay);
    line("bandwidth_bps", cfg.bandwidth_bps);
    line("ttl", cfg.ttl);
    return out;
}

}  // namespace sgpsr
