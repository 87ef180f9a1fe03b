#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>

namespace sgpsr {

/// Raised when counters contradict each other (e.g. more deliveries than sends).
class InconsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

struct DeliveryRecord {
    std::uint32_t flow = 0;
    std::uint64_t seq = 0;
    double origin_time = 0.0;
    double delivery_time = 0.0;
    std::uint32_t hops = 0;

    double delay() const { return delivery_time - origin_time; }
};

struct RunMetrics {
    std::uint64_t sent = 0;
    std::uint64_t delivered = 0;
    std::uint64_t control_packets = 0;
    std::uint64_t dropped = 0;
    std::uint64_t in_flight = 0;
    double delivery_ratio = 0.0;
    std::optional<double> routing_overhead;  // undefined when nothing was delivered
    double avg_delay = 0.0;
    double avg_hops_delivered = 0.0;
};

/// delivered / sent, 0 when nothing was sent.
double compute_delivery_ratio(std::uint64_t sent, std::uint64_t delivered);

/// control / delivered; nullopt when nothing was delivered.
std::optional<double> compute_overhead(std::uint64_t control_packets, std::uint64_t delivered);

/// Mean end-to-end delay over delivered packets; 0 for none.
double compute_avg_delay(std::span<const DeliveryRecord> delivered);

double compute_avg_hops(std::span<const DeliveryRecord> delivered);

}  // namespace sgpsr
