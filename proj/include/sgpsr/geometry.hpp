#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>

namespace sgpsr {

struct NodeId {
    std::uint32_t value = 0;

    constexpr auto operator<=>(const NodeId&) const = default;
};

struct Position {
    double x = 0.0;
    double y = 0.0;

    constexpr bool operator==(const Position&) const = default;
};

class GeometryError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

double euclidean_distance(const Position& a, const Position& b);

/// Counterclockwise bearing of the vector from -> to, in [0, 2pi).
/// Throws GeometryError when the points coincide.
double angle_of(const Position& from, const Position& to);

/// Counterclockwise sweep from `reference` to `bearing`, in (0, 2pi].
/// A bearing equal to the reference sweeps the full circle.
double ccw_sweep(double reference, double bearing);

/// Intersection point of the closed segments [p1,p2] and [q1,q2], if any.
/// Collinear overlaps report no single crossing point.
std::optional<Position> segment_intersection(const Position& p1, const Position& p2,
                                             const Position& q1, const Position& q2);

/// Proper crossing test (shared endpoints and touching do not count).
bool segments_cross(const Position& p1, const Position& p2, const Position& q1, const Position& q2);

/// Rounds both coordinates through 32-bit IEEE-754, the header encoding for positions.
Position quantize_wire(const Position& p);

}  // namespace sgpsr

template <>
struct std::hash<sgpsr::NodeId> {
    std::size_t operator()(const sgpsr::NodeId& id) const noexcept { return std::hash<std::uint32_t>{}(id.value); }
};
