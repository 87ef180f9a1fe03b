#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>

#include "sgpsr/trust.hpp"
#include "support.hpp"

using namespace sgpsr;
using namespace sgpsr::testing;

namespace {

Packet sample_packet(std::uint64_t seq, NodeId dst = NodeId{50})
{
    return data_packet(NodeId{0}, dst, {0, 0}, {100, 0}, 20, seq);
}

NodeState verifier_with(NodeId forwarder, double trust)
{
    NodeState s;
    s.id = NodeId{0};
    refresh_neighbor(s, forwarder, {10, 0}, 0.0, trust);
    return s;
}

// the forwarder's retransmission as heard by the verifier
Packet relayed(const Packet& p, NodeId forwarder)
{
    Packet out = p;
    out.ttl -= 1;
    out.prev_hop = forwarder;
    out.piggyback_pos = {42, 7};
    out.mode = RoutingMode::Perimeter;
    out.lp = Position{1, 1};
    return out;
}

}  // namespace

TEST_CASE("update_trust clamps to [0,1]")
{
    CHECK(update_trust(0.98, 0.05) == 1.0);
    CHECK(update_trust(0.50, 0.0) == 0.50);
    CHECK(update_trust(0.03, -0.10) == 0.0);
}

TEST_CASE("buffering")
{
    const TrustParams params;
    NodeState s;
    s.id = NodeId{0};
    auto deadline = buffer_forwarded_packet(s, sample_packet(1), NodeId{3}, 4.0, params);
    REQUIRE(deadline);
    CHECK(*deadline == doctest::Approx(4.5));
    CHECK_FALSE(buffer_forwarded_packet(s, sample_packet(2, NodeId{3}), NodeId{3}, 4.0, params));
    buffer_forwarded_packet(s, sample_packet(3), NodeId{4}, 4.1, params);
    REQUIRE(s.pending.size() == 2);
    CHECK(s.pending[0].pkt_seq == 1);
    CHECK(s.pending[1].expected_forwarder == NodeId{4});
}

TEST_CASE("integrity covers immutable fields only")
{
    const Packet p = sample_packet(7);
    const Digest d = immutable_digest(p);
    CHECK(verify_packet_integrity(d, relayed(p, NodeId{3})));
    Packet forged = p;
    forged.payload_digest ^= 1;
    CHECK_FALSE(verify_packet_integrity(d, forged));
    Packet moved = p;
    moved.dst_pos = {99, 0};
    CHECK_FALSE(verify_packet_integrity(d, moved));
}

TEST_CASE("overhear and expiry arithmetic")
{
    const TrustParams params;
    const NodeId f{3};

    auto s = verifier_with(f, 0.5);
    const Packet p = sample_packet(1);
    buffer_forwarded_packet(s, p, f, 1.0, params);
    auto settled = on_overhear(s, relayed(p, f), 1.2, params);
    REQUIRE(settled);
    CHECK(settled->kind == SettlementKind::Verified);
    CHECK(s.trust.at(f) == doctest::Approx(0.55));
    CHECK(s.neighbors.at(f).trust == doctest::Approx(0.55));
    CHECK(s.pending.empty());

    auto t = verifier_with(f, 0.5);
    buffer_forwarded_packet(t, p, f, 1.0, params);
    Packet bad = relayed(p, f);
    bad.payload_digest ^= 0xff;
    settled = on_overhear(t, bad, 1.2, params);
    REQUIRE(settled);
    CHECK(settled->kind == SettlementKind::Tampered);
    CHECK(t.trust.at(f) == doctest::Approx(0.40));

    auto e = verifier_with(f, 0.5);
    buffer_forwarded_packet(e, p, f, 1.0, params);
    CHECK(expire_pending(e, 1.5, params).empty());  // deadline itself is still in time
    auto expired = expire_pending(e, 1.6, params);
    REQUIRE(expired.size() == 1);
    CHECK(e.trust.at(f) == doctest::Approx(0.40));
    // the late overhear changes nothing
    CHECK_FALSE(on_overhear(e, relayed(p, f), 1.7, params));
    CHECK(e.trust.at(f) == doctest::Approx(0.40));

    auto floor = verifier_with(f, 0.05);
    buffer_forwarded_packet(floor, p, f, 1.0, params);
    expire_pending(floor, 2.0, params);
    CHECK(floor.trust.at(f) == 0.0);

    auto idle = verifier_with(f, 0.5);
    CHECK(expire_pending(idle, 100.0, params).empty());
    CHECK(idle.trust.at(f) == 0.5);

    // a frame from someone else, or for another packet, is ignored
    auto other = verifier_with(f, 0.5);
    buffer_forwarded_packet(other, p, f, 1.0, params);
    CHECK_FALSE(on_overhear(other, relayed(p, NodeId{8}), 1.1, params));
    CHECK_FALSE(on_overhear(other, relayed(sample_packet(2), f), 1.1, params));
    CHECK(other.pending.size() == 1);
}

TEST_CASE("trusted next hop")
{
    TrustParams params;
    NodeState s;
    s.id = NodeId{0};
    s.true_pos = {0, 0};
    refresh_neighbor(s, NodeId{1}, {5, 0}, 0.0, 0.6);  // A: 5 m from dst
    refresh_neighbor(s, NodeId{2}, {7, 0}, 0.0, 0.2);  // B: 3 m from dst
    CHECK(select_trusted_next_hop(s, 0.0, NodeId{9}, {10, 0}, params, 3.0) == NodeId{1});
    CHECK(select_greedy_next_hop(s, 0.0, NodeId{9}, {10, 0}, 3.0) == NodeId{2});

    s.neighbors.at(NodeId{1}).trust = 0.1;
    CHECK_FALSE(select_trusted_next_hop(s, 0.0, NodeId{9}, {10, 0}, params, 3.0));

    params.threshold = 0.0;
    NodeState u;
    u.id = NodeId{0};
    for (std::uint32_t i = 1; i < 6; ++i)
        refresh_neighbor(u, NodeId{i}, {static_cast<double>(i), static_cast<double>(i % 2)}, 0.0, params.init);
    CHECK(select_trusted_next_hop(u, 0.0, NodeId{9}, {10, 0}, params, 3.0) ==
          select_greedy_next_hop(u, 0.0, NodeId{9}, {10, 0}, 3.0));
}

TEST_CASE("a silent neighbor is excluded after two failed settlements")
{
    const TrustParams params;
    const NodeId f{3};
    auto s = verifier_with(f, params.init);
    s.true_pos = {0, 0};
    for (int k = 0; k < 2; ++k) {
        CHECK(select_trusted_next_hop(s, 0.0, NodeId{9}, {20, 0}, params, 3.0) == f);
        buffer_forwarded_packet(s, sample_packet(k + 1), f, 0.0, params);
        expire_pending(s, 1.0, params);
    }
    CHECK_FALSE(select_trusted_next_hop(s, 0.0, NodeId{9}, {20, 0}, params, 3.0));
}

TEST_CASE("argmax invariance under uniform scaling")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0, 1), pos(-50, 50), scale(0.1, 1.0);
    for (int trial = 0; trial < 500; ++trial) {
        TrustParams params;
        params.threshold = u(rng) * 0.9;
        const double c = scale(rng);
        NodeState a, b;
        a.id = b.id = NodeId{0};
        for (std::uint32_t i = 1; i <= 8; ++i) {
            const Position p{pos(rng), pos(rng)};
            const double t = u(rng);
            refresh_neighbor(a, NodeId{i}, p, 0.0, t);
            refresh_neighbor(b, NodeId{i}, p, 0.0, t * c);
        }
        TrustParams scaled = params;
        scaled.threshold *= c;
        CHECK(select_trusted_next_hop(a, 0.0, NodeId{99}, {60, 0}, params, 3.0) ==
              select_trusted_next_hop(b, 0.0, NodeId{99}, {60, 0}, scaled, 3.0));
    }
}

TEST_CASE("fuzz: trust stays bounded and every pending entry settles exactly once")
{
    std::mt19937_64 rng(2718);
    std::uniform_int_distribution<int> op(0, 3);
    std::uniform_int_distribution<std::uint32_t> who(1, 4);
    TrustParams params;
    NodeState s;
    s.id = NodeId{0};
    for (std::uint32_t i = 1; i <= 4; ++i)
        refresh_neighbor(s, NodeId{i}, {1.0 * i, 0}, 0.0, params.init);

    std::map<std::uint64_t, Packet> sent;
    std::map<std::uint64_t, NodeId> forwarder;
    std::map<std::uint64_t, int> settlements;
    double now = 0.0;
    std::uint64_t seq = 0;
    for (int step = 0; step < 20000; ++step) {
        now += 0.05;
        switch (op(rng)) {
        case 0: {
            const Packet p = sample_packet(++seq);
            const NodeId f{who(rng)};
            buffer_forwarded_packet(s, p, f, now, params);
            sent[seq] = p;
            forwarder[seq] = f;
            break;
        }
        case 1:
        case 2: {
            if (seq == 0)
                break;
            const std::uint64_t k = std::uniform_int_distribution<std::uint64_t>(1, seq)(rng);
            Packet heard = relayed(sent[k], forwarder[k]);
            if (op(rng) == 0)
                heard.payload_digest += 1;
            if (auto st = on_overhear(s, heard, now, params))
                ++settlements[st->pkt_seq];
            break;
        }
        default:
            for (const auto& st : expire_pending(s, now, params))
                ++settlements[st.pkt_seq];
        }
        for (const auto& [id, t] : s.trust) {
            CHECK(t >= 0.0);
            CHECK(t <= 1.0);
        }
    }
    for (const auto& st : expire_pending(s, now + 10.0, params))
        ++settlements[st.pkt_seq];
    CHECK(s.pending.empty());
    CHECK(settlements.size() == seq);
    for (const auto& [k, count] : settlements)
        CHECK(count == 1);
}
