#include "sgpsr/adversary.hpp"

#include <algorithm>
#include <cmath>

namespace sgpsr {

Position sinkhole_beacon(const Position& /*true_pos*/, const Position& dst_pos, double jitter, Rng& rng)
{
    const double radius = uniform(rng, 0.0, jitter);
    const double theta = uniform(rng, 0.0, kTwoPi);
    return {dst_pos.x + radius * std::cos(theta), dst_pos.y + radius * std::sin(theta)};
}

ForwardDecision selective_forward_decision(const Packet& /*packet*/, double drop_prob, Rng& rng)
{
    const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    return u < drop_prob ? ForwardDecision::Drop : ForwardDecision::Forward;
}

Packet tamper_packet(const Packet& packet, Rng& rng)
{
    Packet out = packet;
    Digest forged = rng();
    if (forged == packet.payload_digest)
        forged ^= 1;
    out.payload_digest = forged;
    return out;
}

std::vector<NodeId> sample_malicious(std::uint32_t n_nodes, std::uint32_t n_malicious,
                                     const std::vector<NodeId>& excluded, Rng& rng)
{
    std::vector<NodeId> pool;
    for (std::uint32_t i = 0; i < n_nodes; ++i) {
        NodeId id{i};
        if (std::find(excluded.begin(), excluded.end(), id) == excluded.end())
            pool.push_back(id);
    }
    // partial Fisher-Yates: the first k picks do not depend on how many follow
    std::vector<NodeId> picked;
    for (std::uint32_t k = 0; k < n_malicious && k < pool.size(); ++k) {
        std::uniform_int_distribution<std::size_t> pick(k, pool.size() - 1);
        std::swap(pool[k], pool[pick(rng)]);
        picked.push_back(pool[k]);
    }
    return picked;
}

}  // namespace sgpsr
