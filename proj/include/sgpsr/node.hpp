#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "sgpsr/geometry.hpp"
#include "sgpsr/packet.hpp"

namespace sgpsr {

struct NeighborEntry {
    NodeId id;
    Position pos;  // last advertised
    double last_heard = 0.0;
    double trust = 0.0;  // mirrors NodeState::trust; only S-GPSR reads it
};

/// A forwarded packet awaiting promiscuous confirmation from its next hop.
struct PendingVerification {
    std::uint64_t pkt_seq = 0;
    Digest digest = 0;
    NodeId expected_forwarder;
    double deadline = 0.0;
};

enum class NodeRole { Honest, Sinkhole, SelectiveForwarder };

struct NodeCounters {
    std::uint64_t sent = 0;
    std::uint64_t forwarded = 0;
    std::uint64_t delivered = 0;
    std::uint64_t dropped = 0;
};

struct NodeState {
    NodeId id;
    Position true_pos;
    std::map<NodeId, NeighborEntry> neighbors;
    // Direct trust outlives neighbor eviction so a distrusted node cannot
    // launder its record by leaving and re-entering radio range.
    std::map<NodeId, double> trust;
    std::vector<PendingVerification> pending;
    NodeRole role = NodeRole::Honest;
    NodeCounters counters;
    std::uint64_t beacon_seq = 0;

    bool is_malicious() const { return role != NodeRole::Honest; }
};

}  // namespace sgpsr
