#include "sgpsr/metrics.hpp"

#include <fmt/format.h>

namespace sgpsr {

double compute_delivery_ratio(std::uint64_t sent, std::uint64_t delivered)
{
    if (delivered > sent)
        throw InconsistencyError(fmt::format("delivered ({}) exceeds sent ({})", delivered, sent));
    if (sent == 0)
        return 0.0;
    return static_cast<double>(delivered) / static_cast<double>(sent);
}

std::optional<double> compute_overhead(std::uint64_t control_packets, std::uint64_t delivered)
{
    if (delivered == 0)
        return std::nullopt;
    return static_cast<double>(control_packets) / static_cast<double>(delivered);
}

double compute_avg_delay(std::span<const DeliveryRecord> delivered)
{
    if (delivered.empty())
        return 0.0;
    double sum = 0.0;
    for (const auto& r : delivered)
        sum += r.delay();
    return sum / static_cast<double>(delivered.size());
}

double compute_avg_hops(std::span<const DeliveryRecord> delivered)
{
    if (delivered.empty())
        return 0.0;
    double sum = 0.0;
    for (const auto& r : delivered)
        sum += r.hops;
    return sum / static_cast<double>(delivered.size());
}

}  // namespace sgpsr
