#pragma once

#include <vector>

#include "sgpsr/config.hpp"
#include "sgpsr/geometry.hpp"
#include "sgpsr/rng.hpp"

namespace sgpsr {

/// One random-waypoint move followed by its pause.
struct WaypointLeg {
    Position start;
    Position end;
    double speed = 0.0;
    double depart = 0.0;
    double arrive = 0.0;
    double pause_until = 0.0;
};

/// Draws a uniform waypoint in `area` and a uniform speed in [speed_min, speed_max].
WaypointLeg next_leg(const Area& area, double pause_s, double speed_min, double speed_max, Rng& rng,
                     const Position& from, double now);

class Trajectory {
public:
    Trajectory(std::vector<WaypointLeg> legs, Area area, double horizon);

    /// Uniform initial placement, an initial rest of `pause_s`, then legs until `horizon`.
    static Trajectory random_waypoint(const Area& area, const MobilitySpec& spec, double horizon, Rng& rng);

    /// Throws std::out_of_range outside [0, horizon].
    Position position_at(double t) const;

    const std::vector<WaypointLeg>& legs() const { return legs_; }
    double horizon() const { return horizon_; }

private:
    std::vector<WaypointLeg> legs_;
    Area area_;
    double horizon_;
};

inline Position position_at(const Trajectory& trajectory, double t) { return trajectory.position_at(t); }

}  // namespace sgpsr
