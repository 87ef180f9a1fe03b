#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "sgpsr/config.hpp"
#include "sgpsr/node.hpp"
#include "sgpsr/packet.hpp"

namespace sgpsr {

/// Slack absorbing floating-point residue when trust is compared to the threshold.
inline constexpr double kTrustTolerance = 1e-9;

/// A neighbor stays eligible for routing only while its trust is strictly above the threshold.
bool is_trusted(double trust, double threshold);

/// clamp(current + delta, 0, 1)
double update_trust(double current, double delta);

enum class SettlementKind { Verified, Tampered, Expired };

std::string_view to_string(SettlementKind kind);

struct Settlement {
    NodeId verifier;
    NodeId forwarder;
    std::uint64_t pkt_seq = 0;
    SettlementKind kind = SettlementKind::Verified;
    double trust_before = 0.0;
    double trust_after = 0.0;
};

/// Buffers a just-transmitted data packet for verification within the TUI.
/// Hops onto the destination are terminal and never buffered. Returns the deadline when buffered.
std::optional<double> buffer_forwarded_packet(NodeState& state, const Packet& transmitted, NodeId next_hop, double now,
                                              const TrustParams& params);

/// True iff every immutable field of the overheard frame matches the buffered digest.
bool verify_packet_integrity(Digest buffered_digest, const Packet& overheard);

/// Settles the oldest matching pending entry still inside its TUI: reward on an intact
/// forward, penalty on a modified one. Frames that match nothing are ignored.
std::optional<Settlement> on_overhear(NodeState& state, const Packet& overheard, double now,
                                      const TrustParams& params);

/// Settles every entry whose deadline has passed (deadline < now) as a failure.
std::vector<Settlement> expire_pending(NodeState& state, double now, const TrustParams& params);

/// Adds `delta` to the node's direct trust in `neighbor`, clamped, keeping the neighbor entry in sync.
double adjust_trust(NodeState& state, NodeId neighbor, double delta, double trust_init);

/// Greedy choice restricted to fresh neighbors above the trust threshold.
std::optional<NodeId> select_trusted_next_hop(const NodeState& state, double now, NodeId dst, const Position& dst_pos,
                                              const TrustParams& params, double neighbor_timeout);

}  // namespace sgpsr
