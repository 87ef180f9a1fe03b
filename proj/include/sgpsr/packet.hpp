#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "sgpsr/geometry.hpp"

namespace sgpsr {

enum class PacketKind { Beacon, Data };
enum class RoutingMode { Greedy, Perimeter };

std::string_view to_string(RoutingMode mode);

/// Directed edge (from -> to) of the planar subgraph.
struct Edge {
    NodeId from;
    NodeId to;

    constexpr bool operator==(const Edge&) const = default;
};

using Digest = std::uint64_t;

struct Packet {
    PacketKind kind = PacketKind::Data;
    std::uint64_t seq = 0;
    NodeId src;
    NodeId dst;
    Position dst_pos;
    double origin_time = 0.0;
    std::uint32_t payload_len = 0;
    Digest payload_digest = 0;

    // mutable routing state, rewritten hop by hop
    RoutingMode mode = RoutingMode::Greedy;
    std::optional<Position> lp;  // where greedy forwarding failed
    std::optional<Position> lf;  // where the packet entered the current face
    std::optional<Edge> e0;      // first edge traversed on the current face
    NodeId prev_hop;
    std::uint32_t ttl = 0;
    Position piggyback_pos;
};

/// Checksum of the synthetic payload a source attaches to (src, seq, len).
Digest payload_checksum(NodeId src, std::uint64_t seq, std::uint32_t payload_len);

/// Digest over the fields an honest forwarder never changes.
Digest immutable_digest(const Packet& p);

/// Clears the perimeter bookkeeping and returns the packet to greedy mode.
void reset_to_greedy(Packet& p);

}  // namespace sgpsr
