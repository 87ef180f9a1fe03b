#include "sgpsr/geometry.hpp"

#include <cmath>

namespace sgpsr {

double euclidean_distance(const Position& a, const Position& b)
{
    return std::hypot(a.x - b.x, a.y - b.y);
}

double angle_of(const Position& from, const Position& to)
{
    if (from == to)
        throw GeometryError("angle_of: coincident points have no bearing");
    double angle = std::atan2(to.y - from.y, to.x - from.x);
    if (angle < 0.0)
        angle += kTwoPi;
    // atan2 of a tiny negative y can round up to exactly 2pi
    if (angle >= kTwoPi)
        angle = 0.0;
    return angle;
}

double ccw_sweep(double reference, double bearing)
{
    double delta = std::fmod(bearing - reference, kTwoPi);
    if (delta < 0.0)
        delta += kTwoPi;
    if (delta <= 0.0)
        delta = kTwoPi;
    return delta;
}

namespace {

double cross(const Position& o, const Position& a, const Position& b)
{
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

}  // namespace

std::optional<Position> segment_intersection(const Position& p1, const Position& p2,
                                             const Position& q1, const Position& q2)
{
    const double rx = p2.x - p1.x;
    const double ry = p2.y - p1.y;
    const double sx = q2.x - q1.x;
    const double sy = q2.y - q1.y;
    const double denom = rx * sy - ry * sx;
    if (denom == 0.0)
        return std::nullopt;
    const double qpx = q1.x - p1.x;
    const double qpy = q1.y - p1.y;
    const double t = (qpx * sy - qpy * sx) / denom;
    const double u = (qpx * ry - qpy * rx) / denom;
    if (t < 0.0 || t > 1.0 || u < 0.0 || u > 1.0)
        return std::nullopt;
    return Position{p1.x + t * rx, p1.y + t * ry};
}

bool segments_cross(const Position& p1, const Position& p2, const Position& q1, const Position& q2)
{
    const double d1 = cross(q1, q2, p1);
    const double d2 = cross(q1, q2, p2);
    const double d3 = cross(p1, p2, q1);
    const double d4 = cross(p1, p2, q2);
    return ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0));
}

Position quantize_wire(const Position& p)
{
    return {static_cast<double>(static_cast<float>(p.x)), static_cast<double>(static_cast<float>(p.y))};
}

}  // namespace sgpsr
