#include "sgpsr/trust.hpp"

#include <algorithm>

#include "sgpsr/gpsr.hpp"

namespace sgpsr {

bool is_trusted(double trust, double threshold) { return trust - threshold > kTrustTolerance; }

double update_trust(double current, double delta) { return std::clamp(current + delta, 0.0, 1.0); }

std::string_view to_string(SettlementKind kind)
{
    switch (kind) {
    case SettlementKind::Verified: return "trust_up";
    case SettlementKind::Tampered: return "trust_tampered";
    case SettlementKind::Expired: return "trust_expired";
    }
    return "trust";
}

std::optional<double> buffer_forwarded_packet(NodeState& state, const Packet& transmitted, NodeId next_hop, double now,
                                              const TrustParams& params)
{
    if (transmitted.kind != PacketKind::Data || next_hop == transmitted.dst)
        return std::nullopt;
    const double deadline = now + params.tui;
    state.pending.push_back({transmitted.seq, immutable_digest(transmitted), next_hop, deadline});
    return deadline;
}

bool verify_packet_integrity(Digest buffered_digest, const Packet& overheard)
{
    return immutable_digest(overheard) == buffered_digest;
}

double adjust_trust(NodeState& state, NodeId neighbor, double delta, double trust_init)
{
    auto [it, inserted] = state.trust.try_emplace(neighbor, trust_init);
    it->second = update_trust(it->second, delta);
    if (auto entry = state.neighbors.find(neighbor); entry != state.neighbors.end())
        entry->second.trust = it->second;
    return it->second;
}

std::optional<Settlement> on_overhear(NodeState& state, const Packet& overheard, double now,
                                      const TrustParams& params)
{
    if (overheard.kind != PacketKind::Data)
        return std::nullopt;
    auto match = std::find_if(state.pending.begin(), state.pending.end(), [&](const PendingVerification& p) {
        return p.pkt_seq == overheard.seq && p.expected_forwarder == overheard.prev_hop && now <= p.deadline;
    });
    if (match == state.pending.end())
        return std::nullopt;

    Settlement s;
    s.verifier = state.id;
    s.forwarder = match->expected_forwarder;
    s.pkt_seq = match->pkt_seq;
    const bool intact = verify_packet_integrity(match->digest, overheard);
    s.kind = intact ? SettlementKind::Verified : SettlementKind::Tampered;
    state.pending.erase(match);

    auto [it, inserted] = state.trust.try_emplace(s.forwarder, params.init);
    s.trust_before = it->second;
    s.trust_after = adjust_trust(state, s.forwarder, intact ? params.reward : -params.penalty, params.init);
    return s;
}

std::vector<Settlement> expire_pending(NodeState& state, double now, const TrustParams& params)
{
    std::vector<Settlement> settled;
    std::erase_if(state.pending, [&](const PendingVerification& p) {
        if (!(p.deadline < now))
            return false;
        Settlement s;
        s.verifier = state.id;
        s.forwarder = p.expected_forwarder;
        s.pkt_seq = p.pkt_seq;
        s.kind = SettlementKind::Expired;
        auto [it, inserted] = state.trust.try_emplace(s.forwarder, params.init);
        s.trust_before = it->second;
        s.trust_after = adjust_trust(state, s.forwarder, -params.penalty, params.init);
        settled.push_back(s);
        return true;
    });
    return settled;
}

std::optional<NodeId> select_trusted_next_hop(const NodeState& state, double now, NodeId dst, const Position& dst_pos,
                                              const TrustParams& params, double neighbor_timeout)
{
    RoutingContext ctx;
    ctx.protocol = Protocol::Sgpsr;
    ctx.trust = params;
    ctx.neighbor_timeout = neighbor_timeout;
    auto candidates = usable_neighbors(state, now, ctx);
    return select_greedy_next_hop(routing_position(state), candidates, dst, dst_pos);
}

}  // namespace sgpsr
