#include "sgpsr/mobility.hpp"

#include <algorithm>
#include <stdexcept>

#include <fmt/format.h>

namespace sgpsr {

WaypointLeg next_leg(const Area& area, double pause_s, double speed_min, double speed_max, Rng& rng,
                     const Position& from, double now)
{
    WaypointLeg leg;
    leg.start = from;
    leg.end = {uniform(rng, 0.0, area.width), uniform(rng, 0.0, area.height)};
    leg.speed = uniform(rng, speed_min, speed_max);
    leg.depart = now;
    leg.arrive = now + euclidean_distance(leg.start, leg.end) / leg.speed;
    leg.pause_until = leg.arrive + pause_s;
    return leg;
}

Trajectory::Trajectory(std::vector<WaypointLeg> legs, Area area, double horizon)
    : legs_(std::move(legs)), area_(area), horizon_(horizon)
{
    if (legs_.empty())
        throw std::invalid_argument("Trajectory: at least one leg is required");
}

Trajectory Trajectory::random_waypoint(const Area& area, const MobilitySpec& spec, double horizon, Rng& rng)
{
    const Position origin{uniform(rng, 0.0, area.width), uniform(rng, 0.0, area.height)};
    std::vector<WaypointLeg> legs;
    legs.push_back({origin, origin, spec.speed_min, 0.0, 0.0, spec.pause_s});
    while (legs.back().pause_until < horizon)
        legs.push_back(next_leg(area, spec.pause_s, spec.speed_min, spec.speed_max, rng, legs.back().end,
                                legs.back().pause_until));
    return Trajectory(std::move(legs), area, horizon);
}

Position Trajectory::position_at(double t) const
{
    if (!(t >= 0.0 && t <= horizon_))
        throw std::out_of_range(fmt::format("position_at: t={} outside [0, {}]", t, horizon_));
    auto it = std::upper_bound(legs_.begin(), legs_.end(), t,
                               [](double time, const WaypointLeg& leg) { return time < leg.depart; });
    const WaypointLeg& leg = *std::prev(it == legs_.begin() ? std::next(it) : it);
    if (t >= leg.arrive)
        return leg.end;
    const double f = (t - leg.depart) / (leg.arrive - leg.depart);
    return {std::clamp(leg.start.x + f * (leg.end.x - leg.start.x), 0.0, area_.width),
            std::clamp(leg.start.y + f * (leg.end.y - leg.start.y), 0.0, area_.height)};
}

}  // namespace sgpsr
