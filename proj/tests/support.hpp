#pragma once

// Test-only oracles and fixtures. Nothing here reuses the library's geometry
// predicates, so the checks stay independent of the code under test.

#include <cmath>
#include <cstdint>
#include <optional>
#include <queue>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "sgpsr/gpsr.hpp"
#include "sgpsr/node.hpp"
#include "sgpsr/planarization.hpp"

namespace sgpsr::testing {

inline std::vector<Position> random_points(std::size_t n, double width, double height, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> ux(0.0, width), uy(0.0, height);
    std::vector<Position> out(n);
    for (auto& p : out)
        p = {ux(rng), uy(rng)};
    return out;
}

inline double dist(const Position& a, const Position& b) { return std::sqrt((a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y)); }

using Adjacency = std::vector<std::vector<std::size_t>>;

inline Adjacency unit_disk(const std::vector<Position>& pts, double range)
{
    Adjacency adj(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            if (dist(pts[i], pts[j]) <= range) {
                adj[i].push_back(j);
                adj[j].push_back(i);
            }
    return adj;
}

inline bool connected(const Adjacency& adj)
{
    if (adj.empty())
        return true;
    std::vector<bool> seen(adj.size(), false);
    std::queue<std::size_t> q;
    q.push(0);
    seen[0] = true;
    std::size_t count = 1;
    while (!q.empty()) {
        auto u = q.front();
        q.pop();
        for (auto v : adj[u])
            if (!seen[v]) {
                seen[v] = true;
                ++count;
                q.push(v);
            }
    }
    return count == adj.size();
}

// orientation sign of (a, b, c)
inline int orient(const Position& a, const Position& b, const Position& c)
{
    const long double v = static_cast<long double>(b.x - a.x) * (c.y - a.y) -
                          static_cast<long double>(b.y - a.y) * (c.x - a.x);
    return (v > 0) - (v < 0);
}

/// Brute-force proper crossing: interiors intersect at a single point.
inline bool crosses(const Position& a, const Position& b, const Position& c, const Position& d)
{
    return orient(a, b, c) * orient(a, b, d) < 0 && orient(c, d, a) * orient(c, d, b) < 0;
}

using EdgeList = std::vector<std::pair<std::size_t, std::size_t>>;

/// Edge (u,v), u < v, kept iff both endpoints keep it from full local knowledge.
inline EdgeList planar_edges(const std::vector<Position>& pts, double range, Planarization method,
                             bool require_both = true)
{
    const auto adj = unit_disk(pts, range);
    std::vector<std::vector<bool>> keeps(pts.size(), std::vector<bool>(pts.size(), false));
    for (std::size_t u = 0; u < pts.size(); ++u) {
        std::vector<NeighborPoint> nbrs;
        for (auto v : adj[u])
            nbrs.push_back({NodeId{static_cast<std::uint32_t>(v)}, pts[v]});
        auto kept = planarize(method, NodeId{static_cast<std::uint32_t>(u)}, pts[u], nbrs);
        for (const auto& k : kept.kept)
            keeps[u][k.id.value] = true;
    }
    EdgeList out;
    for (std::size_t u = 0; u < pts.size(); ++u)
        for (std::size_t v = u + 1; v < pts.size(); ++v)
            if (require_both ? (keeps[u][v] && keeps[v][u]) : (keeps[u][v] || keeps[v][u]))
                out.push_back({u, v});
    return out;
}

inline std::size_t crossing_pairs(const std::vector<Position>& pts, const EdgeList& edges)
{
    std::size_t count = 0;
    for (std::size_t i = 0; i < edges.size(); ++i)
        for (std::size_t j = i + 1; j < edges.size(); ++j) {
            const auto [a, b] = edges[i];
            const auto [c, d] = edges[j];
            if (a == c || a == d || b == c || b == d)
                continue;
            if (crosses(pts[a], pts[b], pts[c], pts[d]))
                ++count;
        }
    return count;
}

inline bool edges_connected(std::size_t n, const EdgeList& edges)
{
    Adjacency adj(n);
    for (auto [u, v] : edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    return connected(adj);
}

/// Random positions whose unit-disk graph is connected; positions are wire-precision.
inline std::vector<Position> connected_points(std::size_t n, double side, double range, std::mt19937_64& rng)
{
    for (;;) {
        auto pts = random_points(n, side, side, rng);
        for (auto& p : pts)
            p = quantize_wire(p);
        if (connected(unit_disk(pts, range)))
            return pts;
    }
}

/// Nodes with complete, fresh neighbor tables built from true positions.
inline std::vector<NodeState> static_nodes(const std::vector<Position>& pts, double range, double trust = 0.5)
{
    std::vector<NodeState> nodes(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        nodes[i].id = NodeId{static_cast<std::uint32_t>(i)};
        nodes[i].true_pos = pts[i];
    }
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = 0; j < pts.size(); ++j)
            if (i != j && dist(pts[i], pts[j]) <= range)
                refresh_neighbor(nodes[i], NodeId{static_cast<std::uint32_t>(j)}, quantize_wire(pts[j]), 0.0, trust);
    return nodes;
}

struct WalkHop {
    NodeId node;
    NodeId next;
    NodeId prev;
    RoutingMode in_mode;
    std::optional<Position> in_lp;
    std::optional<Position> in_lf;
    RoutingMode mode;  // outgoing
    std::optional<Position> lp;
    std::optional<Position> lf;
    std::optional<Edge> e0;
};

struct WalkResult {
    bool delivered = false;
    std::optional<DropReason> drop;
    std::vector<WalkHop> hops;
};

inline Packet data_packet(NodeId src, NodeId dst, const Position& src_pos, const Position& dst_pos, std::uint32_t ttl,
                          std::uint64_t seq = 1)
{
    Packet p;
    p.kind = PacketKind::Data;
    p.seq = seq;
    p.src = src;
    p.dst = dst;
    p.dst_pos = quantize_wire(dst_pos);
    p.payload_len = 512;
    p.payload_digest = payload_checksum(src, seq, 512);
    p.prev_hop = src;
    p.ttl = ttl;
    p.piggyback_pos = quantize_wire(src_pos);
    return p;
}

/// Hop-by-hop walk of one packet over static nodes with instantaneous links.
inline WalkResult walk(std::vector<NodeState>& nodes, NodeId src, NodeId dst, const RoutingContext& ctx,
                       std::uint32_t ttl = 0)
{
    if (ttl == 0)
        ttl = 2 * static_cast<std::uint32_t>(nodes.size());
    WalkResult out;
    Packet p = data_packet(src, dst, nodes[src.value].true_pos, nodes[dst.value].true_pos, ttl);
    NodeId cur = src;
    for (;;) {
        ForwardAction a = forward_data(nodes[cur.value], p, 0.0, ctx);
        if (std::holds_alternative<DeliverLocal>(a)) {
            out.delivered = true;
            return out;
        }
        if (auto* d = std::get_if<Drop>(&a)) {
            out.drop = d->reason;
            return out;
        }
        auto& s = std::get<Send>(a);
        out.hops.push_back({cur, s.next_hop, p.prev_hop, p.mode, p.lp, p.lf, s.packet.mode, s.packet.lp, s.packet.lf, s.packet.e0});
        p = s.packet;
        cur = s.next_hop;
    }
}

struct TraceRow {
    double time = 0.0;
    std::uint32_t node = 0;
    std::string event;
    std::string seq;
    std::string mode;
    std::string next_hop;
    std::string reason;
};

/// Data lines of a trace, skipping '#' headers and the column line.
inline std::vector<TraceRow> parse_trace(const std::string& text)
{
    std::vector<TraceRow> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#' || line.rfind("time,", 0) == 0)
            continue;
        std::vector<std::string> f;
        std::size_t start = 0;
        for (;;) {
            const auto comma = line.find(',', start);
            f.push_back(line.substr(start, comma - start));
            if (comma == std::string::npos)
                break;
            start = comma + 1;
        }
        if (f.size() != 7)
            continue;
        rows.push_back({std::stod(f[0]), static_cast<std::uint32_t>(std::stoul(f[1])), f[2], f[3], f[4], f[5], f[6]});
    }
    return rows;
}

}  // namespace sgpsr::testing
