#pragma once

#include <optional>
#include <span>
#include <vector>

#include "sgpsr/config.hpp"
#include "sgpsr/geometry.hpp"

namespace sgpsr {

struct NeighborPoint {
    NodeId id;
    Position pos;

    bool operator==(const NeighborPoint&) const = default;
};

/// The subset of a node's neighbors whose edges survive local planarization.
struct PlanarNeighborSet {
    NodeId owner;
    std::vector<NeighborPoint> kept;
};

/// Keeps (self, v) iff no other neighbor lies strictly inside the circle with diameter self-v.
PlanarNeighborSet gabriel_subgraph(NodeId owner, const Position& self_pos, std::span<const NeighborPoint> neighbors);

/// Keeps (self, v) iff no other neighbor w has max(d(self,w), d(v,w)) < d(self,v).
PlanarNeighborSet rng_subgraph(NodeId owner, const Position& self_pos, std::span<const NeighborPoint> neighbors);

PlanarNeighborSet planarize(Planarization method, NodeId owner, const Position& self_pos,
                            std::span<const NeighborPoint> neighbors);

/// Planar neighbors sorted by counterclockwise sweep from `reference` (radians).
/// A neighbor lying exactly on the reference bearing sorts last; ties break on the smaller id.
/// Neighbors advertising the owner's own position have no bearing and are skipped.
std::vector<NeighborPoint> ccw_order(const Position& self_pos, double reference, const PlanarNeighborSet& planar);

/// Right-hand rule: first neighbor strictly counterclockwise from `reference`, wrapping.
/// nullopt when the planar set is empty (no route).
std::optional<NodeId> next_edge_right_hand(const Position& self_pos, double reference,
                                           const PlanarNeighborSet& planar);

}  // namespace sgpsr
