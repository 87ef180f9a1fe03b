#include "sgpsr/gpsr.hpp"

#include "sgpsr/trust.hpp"

namespace sgpsr {

namespace {

std::optional<Position> position_of(std::span<const NeighborPoint> candidates, NodeId id)
{
    for (const auto& c : candidates)
        if (c.id == id)
            return c.pos;
    return std::nullopt;
}

RouteDecision route_greedy(NodeId self, const Position& self_pos, std::span<const NeighborPoint> candidates,
                           const Packet& packet, Planarization planarization)
{
    if (auto next = select_greedy_next_hop(self_pos, candidates, packet.dst, packet.dst_pos)) {
        Packet out = packet;
        reset_to_greedy(out);
        return Send{*next, std::move(out)};
    }
    auto planar = planarize(planarization, self, self_pos, candidates);
    if (auto entered = enter_perimeter_mode(packet, self, self_pos, planar))
        return std::move(*entered);
    return Drop{DropReason::NoRoute};
}

}  // namespace

std::string_view to_string(DropReason reason)
{
    switch (reason) {
    case DropReason::NoRoute: return "no_route";
    case DropReason::Unreachable: return "unreachable";
    case DropReason::TtlExpired: return "ttl_expired";
    case DropReason::LinkBroken: return "link_broken";
    case DropReason::Malicious: return "malicious";
    case DropReason::Corrupted: return "corrupted";
    }
    return "unknown";
}

Position routing_position(const NodeState& state) { return quantize_wire(state.true_pos); }

Packet make_beacon(NodeState& state, double now)
{
    Packet beacon;
    beacon.kind = PacketKind::Beacon;
    beacon.seq = ++state.beacon_seq;
    beacon.src = state.id;
    beacon.dst = state.id;
    beacon.origin_time = now;
    beacon.prev_hop = state.id;
    beacon.piggyback_pos = routing_position(state);
    return beacon;
}

void refresh_neighbor(NodeState& state, NodeId sender, const Position& advertised, double now, double trust_init)
{
    if (sender == state.id)
        return;
    auto [it, inserted] = state.neighbors.try_emplace(sender);
    NeighborEntry& entry = it->second;
    if (inserted) {
        entry.id = sender;
        auto [trust_it, fresh] = state.trust.try_emplace(sender, trust_init);
        entry.trust = trust_it->second;
    }
    entry.pos = advertised;
    entry.last_heard = now;
}

void handle_beacon(NodeState& state, const Packet& beacon, double now, double trust_init)
{
    if (beacon.kind != PacketKind::Beacon)
        return;
    refresh_neighbor(state, beacon.src, beacon.piggyback_pos, now, trust_init);
}

std::size_t evict_stale_neighbors(NodeState& state, double now, double timeout)
{
    return std::erase_if(state.neighbors, [&](const auto& kv) { return now - kv.second.last_heard > timeout; });
}

std::vector<NeighborPoint> usable_neighbors(const NodeState& state, double now, const RoutingContext& ctx)
{
    std::vector<NeighborPoint> out;
    out.reserve(state.neighbors.size());
    for (const auto& [id, entry] : state.neighbors) {
        if (now - entry.last_heard > ctx.neighbor_timeout)
            continue;
        if (ctx.protocol == Protocol::Sgpsr && !is_trusted(entry.trust, ctx.trust.threshold))
            continue;
        out.push_back({id, entry.pos});
    }
    return out;
}

std::optional<NodeId> select_greedy_next_hop(const Position& self_pos, std::span<const NeighborPoint> candidates,
                                             NodeId dst, const Position& dst_pos)
{
    if (position_of(candidates, dst))
        return dst;
    const double self_distance = euclidean_distance(self_pos, dst_pos);
    std::optional<NodeId> best;
    double best_distance = self_distance;
    for (const auto& c : candidates) {
        const double d = euclidean_distance(c.pos, dst_pos);
        if (d < best_distance || (best && d == best_distance && c.id < *best)) {
            best = c.id;
            best_distance = d;
        }
    }
    return best;
}

std::optional<NodeId> select_greedy_next_hop(const NodeState& state, double now, NodeId dst,
                                             const Position& dst_pos, double neighbor_timeout)
{
    RoutingContext ctx;
    ctx.neighbor_timeout = neighbor_timeout;
    auto candidates = usable_neighbors(state, now, ctx);
    return select_greedy_next_hop(routing_position(state), candidates, dst, dst_pos);
}

std::optional<Send> enter_perimeter_mode(const Packet& packet, NodeId self, const Position& self_pos,
                                         const PlanarNeighborSet& planar)
{
    const double reference = packet.dst_pos == self_pos ? 0.0 : angle_of(self_pos, packet.dst_pos);
    auto first = next_edge_right_hand(self_pos, reference, planar);
    if (!first)
        return std::nullopt;
    Packet out = packet;
    out.mode = RoutingMode::Perimeter;
    out.lp = self_pos;
    out.lf = self_pos;
    out.e0 = Edge{self, *first};
    return Send{*first, std::move(out)};
}

RouteDecision perimeter_forward(NodeId self, const Position& self_pos, std::span<const NeighborPoint> candidates,
                                const Packet& packet, Planarization planarization)
{
    const Position& dst_pos = packet.dst_pos;
    if (!packet.lp || !packet.lf)
        return route_greedy(self, self_pos, candidates, packet, planarization);

    if (euclidean_distance(self_pos, dst_pos) < euclidean_distance(*packet.lp, dst_pos)) {
        Packet greedy = packet;
        reset_to_greedy(greedy);
        return route_greedy(self, self_pos, candidates, greedy, planarization);
    }

    auto planar = planarize(planarization, self, self_pos, candidates);
    double reference = 0.0;
    if (packet.piggyback_pos != self_pos)
        reference = angle_of(self_pos, packet.piggyback_pos);
    else if (dst_pos != self_pos)
        reference = angle_of(self_pos, dst_pos);

    Packet out = packet;
    bool face_changed = false;
    std::optional<NodeId> chosen;
    for (const auto& candidate : ccw_order(self_pos, reference, planar)) {
        auto crossing = segment_intersection(self_pos, candidate.pos, *out.lp, dst_pos);
        if (crossing && euclidean_distance(*crossing, dst_pos) < euclidean_distance(*out.lf, dst_pos)) {
            out.lf = *crossing;
            face_changed = true;
            continue;
        }
        chosen = candidate.id;
        break;
    }
    if (!chosen)
        return Drop{DropReason::NoRoute};
    const Edge edge{self, *chosen};
    if (face_changed || !out.e0)
        out.e0 = edge;
    else if (*out.e0 == edge)
        return Drop{DropReason::Unreachable};
    return Send{*chosen, std::move(out)};
}

ForwardAction forward_data(NodeState& state, const Packet& packet, double now, const RoutingContext& ctx)
{
    if (packet.dst == state.id) {
        ++state.counters.delivered;
        return DeliverLocal{};
    }
    if (packet.ttl == 0) {
        ++state.counters.dropped;
        return Drop{DropReason::TtlExpired};
    }
    const Position self_pos = routing_position(state);
    const auto candidates = usable_neighbors(state, now, ctx);
    RouteDecision decision = packet.mode == RoutingMode::Greedy
                                 ? route_greedy(state.id, self_pos, candidates, packet, ctx.planarization)
                                 : perimeter_forward(state.id, self_pos, candidates, packet, ctx.planarization);
    if (auto* drop = std::get_if<Drop>(&decision)) {
        ++state.counters.dropped;
        return *drop;
    }
    Send send = std::get<Send>(std::move(decision));
    send.packet.ttl -= 1;
    send.packet.prev_hop = state.id;
    send.packet.piggyback_pos = self_pos;
    ++state.counters.forwarded;
    return send;
}

}  // namespace sgpsr
