#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sgpsr {

enum class Protocol { Gpsr, Sgpsr };
enum class AttackMode { Sinkhole, SelectiveForward, Both };
enum class MaliciousAction { Drop, Tamper };
enum class Planarization { Gabriel, Rng };

std::string_view to_string(Protocol p);
std::string_view to_string(AttackMode a);
std::string_view to_string(MaliciousAction a);
std::string_view to_string(Planarization p);

Protocol parse_protocol(std::string_view text);
AttackMode parse_attack(std::string_view text);
Planarization parse_planarization(std::string_view text);

struct Area {
    double width = 300.0;
    double height = 300.0;

    bool operator==(const Area&) const = default;
};

struct TrafficSpec {
    std::uint32_t flows = 10;
    double interval_s = 0.25;
    double warmup_s = 5.0;

    bool operator==(const TrafficSpec&) const = default;
};

struct MobilitySpec {
    double pause_s = 20.0;
    double speed_min = 1.0;
    double speed_max = 5.0;

    bool operator==(const MobilitySpec&) const = default;
};

struct TrustParams {
    double init = 0.5;
    double reward = 0.05;
    double penalty = 0.10;
    double threshold = 0.3;
    double tui = 0.5;

    bool operator==(const TrustParams&) const = default;
};

struct SimConfig {
    std::uint32_t n_nodes = 150;
    Area area;
    std::uint32_t n_malicious = 0;
    std::uint32_t packet_size = 512;
    TrafficSpec traffic;
    MobilitySpec mobility;
    double radio_range = 100.0;
    double beacon_interval = 1.0;
    double beacon_jitter = 0.25;  // fraction of the interval
    double neighbor_timeout = 3.0;
    TrustParams trust;
    double sim_time = 100.0;
    std::uint64_t seed = 1;
    Protocol protocol = Protocol::Gpsr;
    AttackMode attack = AttackMode::Both;
    double drop_prob = 1.0;
    MaliciousAction malicious_action = MaliciousAction::Drop;
    double sinkhole_jitter = 2.0;
    Planarization planarization = Planarization::Gabriel;
    double tx_delay = 0.001;
    double bandwidth_bps = 250000.0;
    std::uint32_t ttl = 0;  // 0 resolves to 2 * n_nodes

    bool operator==(const SimConfig&) const = default;
};

/// Thrown with one diagnostic per violated invariant or malformed key.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::vector<std::string> diagnostics);

    const std::vector<std::string>& diagnostics() const { return diagnostics_; }

private:
    std::vector<std::string> diagnostics_;
};

/// Every violated invariant, named individually. Empty means valid.
std::vector<std::string> config_diagnostics(const SimConfig& cfg);

/// Checks all invariants and resolves derived defaults (ttl).
SimConfig validate_config(SimConfig cfg);

/// Parsed `key = value` lines; `#` starts a comment.
using KeyValues = std::map<std::string, std::string, std::less<>>;

KeyValues parse_key_values(std::string_view text);

/// Applies recognised keys onto `cfg`, erasing them from `kv`.
void apply_config_keys(SimConfig& cfg, KeyValues& kv);

/// Parses a full configuration file body. Unknown keys are errors.
SimConfig parse_config(std::string_view text);

SimConfig load_config_file(const std::string& path);

/// Serializes every key; parse_config(serialize_config(c)) == c.
std::string serialize_config(const SimConfig& cfg);

}  // namespace sgpsr
