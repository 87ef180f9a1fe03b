#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "sgpsr/config.hpp"
#include "sgpsr/node.hpp"
#include "sgpsr/packet.hpp"
#include "sgpsr/planarization.hpp"

namespace sgpsr {

enum class DropReason { NoRoute, Unreachable, TtlExpired, LinkBroken, Malicious, Corrupted };

std::string_view to_string(DropReason reason);

/// Per-run routing knobs shared by every node.
struct RoutingContext {
    Protocol protocol = Protocol::Gpsr;
    TrustParams trust;
    Planarization planarization = Planarization::Gabriel;
    double neighbor_timeout = 3.0;
};

struct DeliverLocal {};

struct Send {
    NodeId next_hop;
    Packet packet;
};

struct Drop {
    DropReason reason;
};

using ForwardAction = std::variant<DeliverLocal, Send, Drop>;
using RouteDecision = std::variant<Send, Drop>;

/// The position a node uses for itself in routing decisions and advertises
/// when honest: its true position at wire precision.
Position routing_position(const NodeState& state);

Packet make_beacon(NodeState& state, double now);

/// Inserts or refreshes the sender's entry. Unknown senders start at their
/// remembered trust, or `trust_init` when never seen before.
void refresh_neighbor(NodeState& state, NodeId sender, const Position& advertised, double now, double trust_init);

void handle_beacon(NodeState& state, const Packet& beacon, double now, double trust_init);

/// Evicts entries not heard from for longer than `timeout`. Returns the evicted count.
std::size_t evict_stale_neighbors(NodeState& state, double now, double timeout);

/// Fresh neighbor entries; S-GPSR additionally drops neighbors at or below the trust threshold.
std::vector<NeighborPoint> usable_neighbors(const NodeState& state, double now, const RoutingContext& ctx);

/// Neighbor closest to `dst_pos` among those strictly closer than `self_pos`.
/// The destination itself wins whenever it is a candidate. Ties break on the smaller id.
std::optional<NodeId> select_greedy_next_hop(const Position& self_pos, std::span<const NeighborPoint> candidates,
                                             NodeId dst, const Position& dst_pos);

std::optional<NodeId> select_greedy_next_hop(const NodeState& state, double now, NodeId dst,
                                             const Position& dst_pos, double neighbor_timeout);

/// Marks the packet as perimeter mode at a local maximum and picks the first face edge.
/// nullopt when the planar set is empty.
std::optional<Send> enter_perimeter_mode(const Packet& packet, NodeId self, const Position& self_pos,
                                         const PlanarNeighborSet& planar);

/// One perimeter-mode hop: reverts to greedy once closer than the entry point,
/// otherwise walks the current face by the right-hand rule, changing faces where
/// an edge crosses the entry->destination line closer to the destination.
RouteDecision perimeter_forward(NodeId self, const Position& self_pos, std::span<const NeighborPoint> candidates,
                                const Packet& packet, Planarization planarization);

/// Full per-hop pipeline: deliver, greedy, or perimeter. Updates the node's counters.
/// The returned packet already carries the decremented ttl, prev_hop and piggyback.
ForwardAction forward_data(NodeState& state, const Packet& packet, double now, const RoutingContext& ctx);

}  // namespace sgpsr
