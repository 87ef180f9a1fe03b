#include "sgpsr/planarization.hpp"

#include <algorithm>

namespace sgpsr {

namespace {

double squared_distance(const Position& a, const Position& b)
{
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy;
}

// w strictly inside the circle with diameter uv  <=>  angle uwv is obtuse
bool inside_diameter_disk(const Position& u, const Position& v, const Position& w)
{
    return (u.x - w.x) * (v.x - w.x) + (u.y - w.y) * (v.y - w.y) < 0.0;
}

template <typename Witness>
PlanarNeighborSet filter_edges(NodeId owner, std::span<const NeighborPoint> neighbors, Witness eliminates)
{
    PlanarNeighborSet out{owner, {}};
    for (const auto& v : neighbors) {
        const bool removed = std::any_of(neighbors.begin(), neighbors.end(), [&](const NeighborPoint& w) {
            return w.id != v.id && eliminates(v.pos, w.pos);
        });
        if (!removed)
            out.kept.push_back(v);
    }
    return out;
}

}  // namespace

PlanarNeighborSet gabriel_subgraph(NodeId owner, const Position& self_pos, std::span<const NeighborPoint> neighbors)
{
    return filter_edges(owner, neighbors, [&](const Position& v, const Position& w) {
        return inside_diameter_disk(self_pos, v, w);
    });
}

PlanarNeighborSet rng_subgraph(NodeId owner, const Position& self_pos, std::span<const NeighborPoint> neighbors)
{
    return filter_edges(owner, neighbors, [&](const Position& v, const Position& w) {
        const double uv = squared_distance(self_pos, v);
        return std::max(squared_distance(self_pos, w), squared_distance(v, w)) < uv;
    });
}

PlanarNeighborSet planarize(Planarization method, NodeId owner, const Position& self_pos,
                            std::span<const NeighborPoint> neighbors)
{
    return method == Planarization::Gabriel ? gabriel_subgraph(owner, self_pos, neighbors)
                                            : rng_subgraph(owner, self_pos, neighbors);
}

std::vector<NeighborPoint> ccw_order(const Position& self_pos, double reference, const PlanarNeighborSet& planar)
{
    struct Keyed {
        double sweep;
        NeighborPoint point;
    };
    std::vector<Keyed> keyed;
    keyed.reserve(planar.kept.size());
    for (const auto& n : planar.kept) {
        if (n.pos == self_pos)
            continue;
        keyed.push_back({ccw_sweep(reference, angle_of(self_pos, n.pos)), n});
    }
    std::sort(keyed.begin(), keyed.end(), [](const Keyed& a, const Keyed& b) {
        if (a.sweep != b.sweep)
            return a.sweep < b.sweep;
        return a.point.id < b.point.id;
    });
    std::vector<NeighborPoint> out;
    out.reserve(keyed.size());
    for (const auto& k : keyed)
        out.push_back(k.point);
    return out;
}

std::optional<NodeId> next_edge_right_hand(const Position& self_pos, double reference,
                                           const PlanarNeighborSet& planar)
{
    auto order = ccw_order(self_pos, reference, planar);
    if (order.empty())
        return std::nullopt;
    return order.front().id;
}

}  // namespace sgpsr
