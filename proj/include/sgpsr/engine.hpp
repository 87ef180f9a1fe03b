#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <vector>

#include "sgpsr/config.hpp"
#include "sgpsr/gpsr.hpp"
#include "sgpsr/metrics.hpp"
#include "sgpsr/node.hpp"
#include "sgpsr/packet.hpp"
#include "sgpsr/planarization.hpp"

namespace sgpsr {

// Declaration order is the tie-break rank for simultaneous events.
enum class EventKind { BeaconDue, PacketArrival, TrafficDue, PendingExpiry, MaintenanceTick, RunEnd };

/// A transmitted frame, shared by every receiver in range.
struct Frame {
    Packet packet;
    NodeId sender;
    std::optional<NodeId> intended;  // unset for broadcasts (beacons)
};

struct Event {
    double time = 0.0;
    EventKind kind = EventKind::RunEnd;
    NodeId subject;
    std::shared_ptr<const Frame> payload;
    std::uint32_t flow = 0;  // TrafficDue only
    std::uint64_t seq = 0;   // TrafficDue only
    std::uint64_t order = 0;  // insertion order, assigned by the queue
};

/// Min-queue on (time, kind rank, subject, insertion order).
class EventQueue {
public:
    void push(Event event);
    Event pop();
    const Event& top() const { return heap_.top(); }
    bool empty() const { return heap_.empty(); }
    std::size_t size() const { return heap_.size(); }

    /// Visits every queued event in unspecified order.
    template <typename F>
    void for_each(F&& f) const
    {
        // priority_queue hides its container; copy is fine for end-of-run accounting
        auto copy = heap_;
        while (!copy.empty()) {
            f(copy.top());
            copy.pop();
        }
    }

private:
    struct Later {
        bool operator()(const Event& a, const Event& b) const;
    };
    std::priority_queue<Event, std::vector<Event>, Later> heap_;
    std::uint64_t next_order_ = 0;
};

/// Unit-disk reception: every node other than `sender` within `radio_range` (inclusive).
std::vector<NodeId> deliver_in_range(const Position& tx_pos, double radio_range, std::span<const NeighborPoint> nodes,
                                     std::optional<NodeId> sender = std::nullopt);

struct Flow {
    NodeId src;
    NodeId dst;
};

struct TrafficEmission {
    double time = 0.0;
    std::uint32_t flow = 0;
    std::uint64_t seq = 0;
};

/// Sequence numbers of flow f occupy [f << 32, (f + 1) << 32).
std::uint64_t flow_seq(std::uint32_t flow, std::uint64_t index);

/// CBR emissions for every flow from the warmup until (excluding) sim_time, ordered by time then flow.
std::vector<TrafficEmission> generate_cbr_traffic(const SimConfig& cfg);

/// Flow endpoints: 2 * flows distinct nodes drawn from the run's setup stream.
std::vector<Flow> choose_flows(const SimConfig& cfg);

/// Initial node placement for (cfg, seed), identical to what `run` uses.
std::vector<Position> initial_positions(const SimConfig& cfg);

/// One routing decision recorded for test harnesses.
struct HopRecord {
    double time = 0.0;
    std::uint64_t seq = 0;
    NodeId node;
    Position node_pos;
    NodeId next_hop;
    RoutingMode mode = RoutingMode::Greedy;  // mode of the outgoing packet
    std::optional<Position> lp;
    std::optional<Position> lf;
    std::optional<Edge> e0;
    NodeId prev_hop;
    Position dst_pos;
};

struct RunOptions {
    bool trace = false;
    bool record_hops = false;
    bool keep_nodes = false;
};

struct RunResult {
    SimConfig config;
    RunMetrics metrics;
    std::vector<Flow> flows;
    std::vector<NodeId> malicious;
    std::vector<DeliveryRecord> deliveries;
    std::map<DropReason, std::uint64_t> drops;
    std::uint64_t settlements = 0;
    std::vector<HopRecord> hops;
    std::vector<NodeState> nodes;  // final state, only with keep_nodes
    std::string trace;
    std::uint64_t trace_hash = 0;
};

/// Runs one simulation. Throws ConfigError for invalid configurations.
RunResult run(const SimConfig& cfg, const RunOptions& options = {});

}  // namespace sgpsr
