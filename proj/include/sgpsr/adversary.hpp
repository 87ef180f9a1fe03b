#pragma once

#include <cstdint>
#include <vector>

#include "sgpsr/config.hpp"
#include "sgpsr/geometry.hpp"
#include "sgpsr/packet.hpp"
#include "sgpsr/rng.hpp"

namespace sgpsr {

enum class ForwardDecision { Forward, Drop };

/// Position a sinkhole advertises: the targeted destination displaced by a
/// uniformly random offset of length at most `jitter` metres.
Position sinkhole_beacon(const Position& true_pos, const Position& dst_pos, double jitter, Rng& rng);

/// Drop with probability `drop_prob`. Always consumes exactly one draw.
ForwardDecision selective_forward_decision(const Packet& packet, double drop_prob, Rng& rng);

/// Replaces the payload digest with a different random value; every other field is kept.
Packet tamper_packet(const Packet& packet, Rng& rng);

/// Chooses `n_malicious` distinct nodes from outside `excluded`, by seeded sampling.
/// The result for k nodes is a prefix of the result for k+1 given the same rng state.
std::vector<NodeId> sample_malicious(std::uint32_t n_nodes, std::uint32_t n_malicious,
                                     const std::vector<NodeId>& excluded, Rng& rng);

}  // namespace sgpsr
