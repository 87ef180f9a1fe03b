#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "sgpsr/planarization.hpp"
#include "support.hpp"

using namespace sgpsr;
using namespace sgpsr::testing;

namespace {

NeighborPoint np(std::uint32_t id, double x, double y) { return {NodeId{id}, {x, y}}; }

NeighborPoint at_bearing(std::uint32_t id, double degrees)
{
    const double r = degrees * std::numbers::pi / 180.0;
    return {NodeId{id}, {std::cos(r), std::sin(r)}};
}

bool keeps(const PlanarNeighborSet& s, std::uint32_t id)
{
    for (const auto& k : s.kept)
        if (k.id.value == id)
            return true;
    return false;
}

double rad(double degrees) { return degrees * std::numbers::pi / 180.0; }

}  // namespace

TEST_CASE("gabriel examples")
{
    const NodeId u{0};
    std::vector<NeighborPoint> one{np(1, 1, 0)};
    CHECK(keeps(gabriel_subgraph(u, {0, 0}, one), 1));

    std::vector<NeighborPoint> two{np(1, 2, 0), np(2, 1, 0.1)};
    auto g = gabriel_subgraph(u, {0, 0}, two);
    CHECK_FALSE(keeps(g, 1));
    CHECK(keeps(g, 2));

    CHECK(gabriel_subgraph(u, {0, 0}, {}).kept.empty());

    // a witness exactly on the diameter circle does not eliminate the edge
    std::vector<NeighborPoint> boundary{np(1, 2, 0), np(2, 1, 1)};
    CHECK(keeps(gabriel_subgraph(u, {0, 0}, boundary), 1));
}

TEST_CASE("rng examples")
{
    std::vector<NeighborPoint> one{np(1, 5, 5)};
    CHECK(keeps(rng_subgraph(NodeId{0}, {0, 0}, one), 1));

    // equilateral triangle with a mutual witness at the centroid
    const Position a{0, 0}, b{1, 0}, c{0.5, std::sqrt(3.0) / 2};
    const Position w{0.5, std::sqrt(3.0) / 6};
    const std::vector<Position> pts{a, b, c, w};
    for (std::uint32_t self = 0; self < 3; ++self) {
        std::vector<NeighborPoint> nbrs;
        for (std::uint32_t v = 0; v < 4; ++v)
            if (v != self)
                nbrs.push_back({NodeId{v}, pts[v]});
        auto kept = rng_subgraph(NodeId{self}, pts[self], nbrs);
        for (std::uint32_t v = 0; v < 3; ++v)
            if (v != self)
                CHECK_FALSE(keeps(kept, v));
        CHECK(keeps(kept, 3));
    }
}

TEST_CASE("twenty nodes in 100x100 at range 35 give a crossing-free gabriel graph")
{
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 20; ++trial) {
        auto pts = random_points(20, 100, 100, rng);
        CHECK(crossing_pairs(pts, planar_edges(pts, 35, Planarization::Gabriel, false)) == 0);
    }
}

TEST_CASE("planarity, symmetry, connectivity and RNG subset on 200 random unit-disk graphs")
{
    std::mt19937_64 rng(7);
    int connected_inputs = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 10 + trial % 41;
        auto pts = random_points(n, 200, 200, rng);
        const double range = 60;
        const auto gg_any = planar_edges(pts, range, Planarization::Gabriel, false);
        const auto gg_both = planar_edges(pts, range, Planarization::Gabriel, true);
        const auto rng_any = planar_edges(pts, range, Planarization::Rng, false);
        CHECK(gg_any == gg_both);  // symmetric under full information
        CHECK(crossing_pairs(pts, gg_any) == 0);
        CHECK(crossing_pairs(pts, rng_any) == 0);
        const std::set<std::pair<std::size_t, std::size_t>> gg(gg_any.begin(), gg_any.end());
        for (const auto& e : rng_any)
            CHECK(gg.count(e) == 1);
        if (connected(unit_disk(pts, range))) {
            ++connected_inputs;
            CHECK(edges_connected(n, gg_any));
            CHECK(edges_connected(n, rng_any));
        }
    }
    CHECK(connected_inputs > 20);
}

TEST_CASE("right-hand rule examples")
{
    const Position self{0, 0};
    PlanarNeighborSet three{NodeId{0}, {at_bearing(1, 90), at_bearing(2, 180), at_bearing(3, 270)}};
    CHECK(next_edge_right_hand(self, 0.0, three) == NodeId{1});

    PlanarNeighborSet single{NodeId{0}, {np(9, -3, -7)}};
    CHECK(next_edge_right_hand(self, rad(123), single) == NodeId{9});
    // the only neighbor lies on the reference bearing itself: taken after a full turn
    CHECK(next_edge_right_hand(self, angle_of(self, {-3, -7}), single) == NodeId{9});

    PlanarNeighborSet wrap{NodeId{0}, {at_bearing(1, 10), at_bearing(2, 200)}};
    CHECK(next_edge_right_hand(self, rad(350), wrap) == NodeId{1});

    CHECK_FALSE(next_edge_right_hand(self, 0.0, PlanarNeighborSet{NodeId{0}, {}}));
}

TEST_CASE("ccw_order matches an angular-sort oracle")
{
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(-50, 50);
    for (int trial = 0; trial < 200; ++trial) {
        PlanarNeighborSet set{NodeId{0}, {}};
        for (std::uint32_t i = 1; i <= 8; ++i)
            set.kept.push_back(np(i, u(rng), u(rng)));
        const double ref = std::uniform_real_distribution<double>(0, 2 * std::numbers::pi)(rng);
        auto order = ccw_order({0, 0}, ref, set);
        REQUIRE(order.size() == set.kept.size());
        auto sweep = [&](const NeighborPoint& p) {
            double a = std::atan2(p.pos.y, p.pos.x) - ref;
            while (a <= 0)
                a += 2 * std::numbers::pi;
            while (a > 2 * std::numbers::pi)
                a -= 2 * std::numbers::pi;
            return a;
        };
        for (std::size_t i = 1; i < order.size(); ++i)
            CHECK(sweep(order[i - 1]) <= sweep(order[i]) + 1e-12);
        CHECK(next_edge_right_hand({0, 0}, ref, set) == order.front().id);
    }
}

namespace {

// Walks faces of a small planar graph by repeatedly applying the right-hand rule
// with the reference set to the arrival edge; returns the number of steps to
// come back to the starting directed edge.
int face_cycle_length(const std::vector<Position>& pts, const std::vector<std::vector<std::uint32_t>>& adj,
                      std::uint32_t from, std::uint32_t to)
{
    auto planar = [&](std::uint32_t v) {
        PlanarNeighborSet s{NodeId{v}, {}};
        for (auto w : adj[v])
            s.kept.push_back({NodeId{w}, pts[w]});
        return s;
    };
    std::uint32_t a = from, b = to;
    for (int steps = 1; steps <= 64; ++steps) {
        const auto next = next_edge_right_hand(pts[b], angle_of(pts[b], pts[a]), planar(b));
        REQUIRE(next);
        a = b;
        b = next->value;
        if (a == from && b == to)
            return steps;
    }
    return -1;
}

}  // namespace

TEST_CASE("right-hand rule walks closed faces")
{
    // square 0(0,0) 1(10,0) 2(10,10) 3(0,10)
    const std::vector<Position> sq{{0, 0}, {10, 0}, {10, 10}, {0, 10}};
    const std::vector<std::vector<std::uint32_t>> sq_adj{{1, 3}, {0, 2}, {1, 3}, {0, 2}};
    CHECK(face_cycle_length(sq, sq_adj, 0, 1) == 4);
    CHECK(face_cycle_length(sq, sq_adj, 1, 0) == 4);

    const std::vector<Position> tri{{0, 0}, {4, 0}, {2, 3}};
    const std::vector<std::vector<std::uint32_t>> tri_adj{{1, 2}, {0, 2}, {0, 1}};
    CHECK(face_cycle_length(tri, tri_adj, 0, 1) == 3);
    CHECK(face_cycle_length(tri, tri_adj, 2, 1) == 3);

    // a path: the face walk traverses every edge in both directions
    const std::vector<Position> path{{0, 0}, {1, 0}, {2, 1}};
    const std::vector<std::vector<std::uint32_t>> path_adj{{1}, {0, 2}, {1}};
    CHECK(face_cycle_length(path, path_adj, 0, 1) == 4);
}
