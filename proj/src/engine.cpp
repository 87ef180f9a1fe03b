#include "sgpsr/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "sgpsr/adversary.hpp"
#include "sgpsr/mobility.hpp"
#include "sgpsr/rng.hpp"
#include "sgpsr/trace.hpp"
#include "sgpsr/trust.hpp"

namespace sgpsr {

bool EventQueue::Later::operator()(const Event& a, const Event& b) const
{
    if (a.time != b.time)
        return a.time > b.time;
    if (a.kind != b.kind)
        return static_cast<int>(a.kind) > static_cast<int>(b.kind);
    if (a.subject != b.subject)
        return a.subject > b.subject;
    return a.order > b.order;
}

void EventQueue::push(Event event)
{
    event.order = next_order_++;
    heap_.push(std::move(event));
}

Event EventQueue::pop()
{
    Event e = heap_.top();
    heap_.pop();
    return e;
}

std::vector<NodeId> deliver_in_range(const Position& tx_pos, double radio_range, std::span<const NeighborPoint> nodes,
                                     std::optional<NodeId> sender)
{
    std::vector<NodeId> out;
    for (const auto& n : nodes) {
        if (sender && n.id == *sender)
            continue;
        if (euclidean_distance(tx_pos, n.pos) <= radio_range)
            out.push_back(n.id);
    }
    return out;
}

std::uint64_t flow_seq(std::uint32_t flow, std::uint64_t index) { return (std::uint64_t{flow} << 32) | index; }

std::vector<TrafficEmission> generate_cbr_traffic(const SimConfig& cfg)
{
    std::vector<TrafficEmission> out;
    const auto& t = cfg.traffic;
    if (t.flows == 0 || cfg.sim_time <= t.warmup_s)
        return out;
    // index-based times avoid accumulating rounding over hundreds of packets
    for (std::uint64_t k = 0;; ++k) {
        const double time = t.warmup_s + static_cast<double>(k) * t.interval_s;
        if (time >= cfg.sim_time)
            break;
        for (std::uint32_t f = 0; f < t.flows; ++f)
            out.push_back({time, f, flow_seq(f, k)});
    }
    return out;
}

std::vector<Flow> choose_flows(const SimConfig& cfg)
{
    Rng rng = make_stream(cfg.seed, Stream::Setup, 0);
    std::vector<std::uint32_t> ids(cfg.n_nodes);
    for (std::uint32_t i = 0; i < cfg.n_nodes; ++i)
        ids[i] = i;
    const std::uint32_t needed = std::min<std::uint32_t>(2 * cfg.traffic.flows, cfg.n_nodes);
    for (std::uint32_t k = 0; k < needed; ++k) {
        std::uniform_int_distribution<std::size_t> pick(k, ids.size() - 1);
        std::swap(ids[k], ids[pick(rng)]);
    }
    std::vector<Flow> flows;
    for (std::uint32_t f = 0; 2 * f + 1 < needed; ++f)
        flows.push_back({NodeId{ids[2 * f]}, NodeId{ids[2 * f + 1]}});
    return flows;
}

namespace {

std::vector<Trajectory> build_trajectories(const SimConfig& cfg)
{
    std::vector<Trajectory> out;
    out.reserve(cfg.n_nodes);
    for (std::uint32_t i = 0; i < cfg.n_nodes; ++i) {
        Rng rng = make_stream(cfg.seed, Stream::Mobility, i);
        out.push_back(Trajectory::random_waypoint(cfg.area, cfg.mobility, cfg.sim_time, rng));
    }
    return out;
}

class Simulator {
public:
    Simulator(const SimConfig& cfg, const RunOptions& options);

    RunResult run();

private:
    void schedule(Event e) { queue_.push(std::move(e)); }
    Position true_position(NodeId id, double t) const { return trajectories_[id.value].position_at(t); }
    NodeState& node(NodeId id) { return nodes_[id.value]; }
    void sync(NodeState& n, double now) { n.true_pos = true_position(n.id, now); }
    double latency(const Packet& p) const { return cfg_.tx_delay + p.payload_len * 8.0 / cfg_.bandwidth_bps; }

    void on_beacon_due(const Event& e);
    void on_arrival(const Event& e);
    void on_traffic(const Event& e);
    void on_expiry(const Event& e);
    void on_maintenance(const Event& e);

    void broadcast(NodeState& sender, const Packet& packet, std::optional<NodeId> intended, double now);
    void process_data(NodeState& n, Packet packet, double now);
    void route(NodeState& n, const Packet& packet, double now);
    void record_drop(NodeState& n, const Packet& packet, DropReason reason, double now);
    void record_settlement(const Settlement& s, double now);
    Position advertised_position(NodeState& n, double now);

    SimConfig cfg_;
    RunOptions options_;
    RoutingContext ctx_;
    std::vector<Trajectory> trajectories_;
    std::vector<NodeState> nodes_;
    std::vector<Flow> flows_;
    std::vector<NodeId> malicious_;
    std::vector<std::optional<NodeId>> sinkhole_target_;
    std::vector<Rng> beacon_rng_;
    std::vector<Rng> adversary_rng_;
    std::vector<Position> advertised_;
    EventQueue queue_;
    TraceLog trace_;
    RunResult result_;
    std::uint64_t live_packets_ = 0;
};

Simulator::Simulator(const SimConfig& cfg, const RunOptions& options)
    : cfg_(cfg), options_(options), trace_(options.trace)
{
    ctx_.protocol = cfg_.protocol;
    ctx_.trust = cfg_.trust;
    ctx_.planarization = cfg_.planarization;
    ctx_.neighbor_timeout = cfg_.neighbor_timeout;

    trajectories_ = build_trajectories(cfg_);
    flows_ = choose_flows(cfg_);

    std::vector<NodeId> endpoints;
    for (const auto& f : flows_) {
        endpoints.push_back(f.src);
        endpoints.push_back(f.dst);
    }
    Rng setup = make_stream(cfg_.seed, Stream::Setup, 1);
    malicious_ = sample_malicious(cfg_.n_nodes, cfg_.n_malicious, endpoints, setup);

    nodes_.resize(cfg_.n_nodes);
    sinkhole_target_.assign(cfg_.n_nodes, std::nullopt);
    advertised_.resize(cfg_.n_nodes);
    for (std::uint32_t i = 0; i < cfg_.n_nodes; ++i) {
        nodes_[i].id = NodeId{i};
        nodes_[i].true_pos = trajectories_[i].position_at(0.0);
        beacon_rng_.push_back(make_stream(cfg_.seed, Stream::Beacon, i));
        adversary_rng_.push_back(make_stream(cfg_.seed, Stream::Adversary, i));
    }
    const NodeRole malicious_role =
        cfg_.attack == AttackMode::SelectiveForward ? NodeRole::SelectiveForwarder : NodeRole::Sinkhole;
    for (std::size_t k = 0; k < malicious_.size(); ++k) {
        NodeState& m = node(malicious_[k]);
        m.role = malicious_role;
        if (malicious_role == NodeRole::Sinkhole && !flows_.empty())
            sinkhole_target_[m.id.value] = flows_[k % flows_.size()].dst;
    }

    result_.config = cfg_;
    result_.flows = flows_;
    result_.malicious = malicious_;
}

Position Simulator::advertised_position(NodeState& n, double now)
{
    if (auto target = sinkhole_target_[n.id.value]) {
        const Position dst_pos = true_position(*target, now);
        return quantize_wire(sinkhole_beacon(n.true_pos, dst_pos, cfg_.sinkhole_jitter, adversary_rng_[n.id.value]));
    }
    return routing_position(n);
}

void Simulator::broadcast(NodeState& sender, const Packet& packet, std::optional<NodeId> intended, double now)
{
    auto frame = std::make_shared<const Frame>(Frame{packet, sender.id, intended});
    const Position tx_pos = sender.true_pos;
    const double range_sq = cfg_.radio_range * cfg_.radio_range;
    const double arrival = now + latency(packet);
    for (const auto& other : nodes_) {
        if (other.id == sender.id)
            continue;
        const Position p = true_position(other.id, now);
        const double dx = p.x - tx_pos.x;
        const double dy = p.y - tx_pos.y;
        if (dx * dx + dy * dy > range_sq)
            continue;
        Event e;
        e.time = arrival;
        e.kind = EventKind::PacketArrival;
        e.subject = other.id;
        e.payload = frame;
        schedule(std::move(e));
    }
}

void Simulator::on_beacon_due(const Event& e)
{
    NodeState& n = node(e.subject);
    sync(n, e.time);
    Packet beacon = make_beacon(n, e.time);
    beacon.piggyback_pos = advertised_position(n, e.time);
    advertised_[n.id.value] = beacon.piggyback_pos;
    broadcast(n, beacon, std::nullopt, e.time);
    ++result_.metrics.control_packets;
    trace_.event(e.time, n.id, "beacon", beacon.seq);

    const double j = cfg_.beacon_jitter;
    const double next = e.time + cfg_.beacon_interval * (1.0 + uniform(beacon_rng_[n.id.value], -j, j));
    if (next <= cfg_.sim_time)
        schedule({next, EventKind::BeaconDue, n.id, nullptr});
}

void Simulator::record_drop(NodeState& n, const Packet& packet, DropReason reason, double now)
{
    ++result_.metrics.dropped;
    ++result_.drops[reason];
    --live_packets_;
    trace_.event(now, n.id, "drop", packet.seq, packet.mode, std::nullopt, to_string(reason));
}

void Simulator::record_settlement(const Settlement& s, double now)
{
    ++result_.settlements;
    trace_.event(now, s.verifier, to_string(s.kind), s.pkt_seq, std::nullopt, s.forwarder,
                 fmt::format("{:.4f}", s.trust_after));
}

void Simulator::route(NodeState& n, const Packet& packet, double now)
{
    sync(n, now);
    const Position self_true = n.true_pos;
    // Each failed link hand-off evicts one neighbor, so the loop terminates.
    for (;;) {
        ForwardAction action = forward_data(n, packet, now, ctx_);
        if (std::holds_alternative<DeliverLocal>(action)) {
            --live_packets_;
            if (packet.payload_digest != payload_checksum(packet.src, packet.seq, packet.payload_len)) {
                ++result_.metrics.dropped;
                ++result_.drops[DropReason::Corrupted];
                trace_.event(now, n.id, "drop", packet.seq, packet.mode, std::nullopt,
                             to_string(DropReason::Corrupted));
                return;
            }
            ++result_.metrics.delivered;
            DeliveryRecord rec;
            rec.flow = static_cast<std::uint32_t>(packet.seq >> 32);
            rec.seq = packet.seq;
            rec.origin_time = packet.origin_time;
            rec.delivery_time = now;
            rec.hops = cfg_.ttl - packet.ttl;
            result_.deliveries.push_back(rec);
            trace_.event(now, n.id, "deliver", packet.seq, packet.mode);
            return;
        }
        if (auto* drop = std::get_if<Drop>(&action)) {
            record_drop(n, packet, drop->reason, now);
            return;
        }
        Send& send = std::get<Send>(action);
        const Position next_pos = true_position(send.next_hop, now);
        if (euclidean_distance(self_true, next_pos) > cfg_.radio_range) {
            // link-layer failure notice: the stale neighbor is evicted and the packet rerouted
            n.neighbors.erase(send.next_hop);
            trace_.event(now, n.id, "link_fail", packet.seq, send.packet.mode, send.next_hop);
            continue;
        }
        if (n.role == NodeRole::Sinkhole)
            send.packet.piggyback_pos = advertised_[n.id.value];
        if (options_.record_hops) {
            HopRecord h;
            h.time = now;
            h.seq = packet.seq;
            h.node = n.id;
            h.node_pos = routing_position(n);
            h.next_hop = send.next_hop;
            h.mode = send.packet.mode;
            h.lp = send.packet.lp;
            h.lf = send.packet.lf;
            h.e0 = send.packet.e0;
            h.prev_hop = packet.prev_hop;
            h.dst_pos = packet.dst_pos;
            result_.hops.push_back(h);
        }
        trace_.event(now, n.id, "forward", packet.seq, send.packet.mode, send.next_hop);
        broadcast(n, send.packet, send.next_hop, now);
        if (cfg_.protocol == Protocol::Sgpsr && !n.is_malicious()) {
            if (auto deadline = buffer_forwarded_packet(n, send.packet, send.next_hop, now, cfg_.trust)) {
                Event expiry;
                expiry.time = std::nextafter(*deadline, std::numeric_limits<double>::infinity());
                expiry.kind = EventKind::PendingExpiry;
                expiry.subject = n.id;
                schedule(std::move(expiry));
            }
        }
        return;
    }
}

void Simulator::process_data(NodeState& n, Packet packet, double now)
{
    const bool drops_data = n.is_malicious() && cfg_.attack != AttackMode::Sinkhole;
    if (drops_data && packet.dst != n.id) {
        auto decision = selective_forward_decision(packet, cfg_.drop_prob, adversary_rng_[n.id.value]);
        if (decision == ForwardDecision::Drop) {
            if (cfg_.malicious_action == MaliciousAction::Drop) {
                ++n.counters.dropped;
                record_drop(n, packet, DropReason::Malicious, now);
                return;
            }
            packet = tamper_packet(packet, adversary_rng_[n.id.value]);
            trace_.event(now, n.id, "tamper", packet.seq, packet.mode);
        }
    }
    route(n, packet, now);
}

void Simulator::on_arrival(const Event& e)
{
    const Frame& frame = *e.payload;
    NodeState& n = node(e.subject);
    const Packet& packet = frame.packet;
    if (packet.kind == PacketKind::Beacon) {
        handle_beacon(n, packet, e.time, cfg_.trust.init);
        return;
    }
    // piggybacked position refreshes the sender's entry at every listener
    refresh_neighbor(n, frame.sender, packet.piggyback_pos, e.time, cfg_.trust.init);
    if (cfg_.protocol == Protocol::Sgpsr && !n.is_malicious() && !n.pending.empty()) {
        if (auto s = on_overhear(n, packet, e.time, cfg_.trust))
            record_settlement(*s, e.time);
    }
    if (frame.intended && *frame.intended == n.id)
        process_data(n, packet, e.time);
}

void Simulator::on_traffic(const Event& e)
{
    const Flow& flow = flows_[e.flow];
    NodeState& src = node(flow.src);
    sync(src, e.time);
    Packet p;
    p.kind = PacketKind::Data;
    p.seq = e.seq;
    p.src = flow.src;
    p.dst = flow.dst;
    p.dst_pos = quantize_wire(true_position(flow.dst, e.time));
    p.origin_time = e.time;
    p.payload_len = cfg_.packet_size;
    p.payload_digest = payload_checksum(p.src, p.seq, p.payload_len);
    p.prev_hop = flow.src;
    p.ttl = cfg_.ttl;
    p.piggyback_pos = routing_position(src);
    ++result_.metrics.sent;
    ++src.counters.sent;
    ++live_packets_;
    trace_.event(e.time, src.id, "send", p.seq, p.mode, p.dst);
    route(src, p, e.time);
}

void Simulator::on_expiry(const Event& e)
{
    NodeState& n = node(e.subject);
    for (const auto& s : expire_pending(n, e.time, cfg_.trust))
        record_settlement(s, e.time);
}

void Simulator::on_maintenance(const Event& e)
{
    for (auto& n : nodes_)
        evict_stale_neighbors(n, e.time, cfg_.neighbor_timeout);
    const double next = e.time + cfg_.beacon_interval;
    if (next <= cfg_.sim_time)
        schedule({next, EventKind::MaintenanceTick, NodeId{0}, nullptr});
}

RunResult Simulator::run()
{
    trace_.comment(fmt::format("protocol={} nodes={} area={}x{} malicious={} seed={}", to_string(cfg_.protocol),
                               cfg_.n_nodes, cfg_.area.width, cfg_.area.height, cfg_.n_malicious, cfg_.seed));
    {
        std::string config = serialize_config(cfg_);
        std::size_t start = 0;
        while (start < config.size()) {
            const auto nl = config.find('\n', start);
            trace_.comment("config " + config.substr(start, nl - start));
            start = nl + 1;
        }
    }
    {
        std::string ids;
        for (const auto& m : malicious_)
            ids += (ids.empty() ? "" : " ") + std::to_string(m.value);
        trace_.comment("malicious_ids " + ids);
    }
    trace_.columns();

    for (const auto& n : nodes_) {
        const double first = uniform(beacon_rng_[n.id.value], 0.0, cfg_.beacon_interval);
        if (first <= cfg_.sim_time)
            schedule({first, EventKind::BeaconDue, n.id, nullptr});
    }
    for (const auto& t : generate_cbr_traffic(cfg_)) {
        Event e{t.time, EventKind::TrafficDue, flows_[t.flow].src, nullptr};
        e.flow = t.flow;
        e.seq = t.seq;
        schedule(std::move(e));
    }
    if (cfg_.beacon_interval <= cfg_.sim_time)
        schedule({cfg_.beacon_interval, EventKind::MaintenanceTick, NodeId{0}, nullptr});
    schedule({cfg_.sim_time, EventKind::RunEnd, NodeId{0}, nullptr});

    while (!queue_.empty()) {
        Event e = queue_.pop();
        if (e.kind == EventKind::RunEnd)
            break;
        switch (e.kind) {
        case EventKind::BeaconDue: on_beacon_due(e); break;
        case EventKind::PacketArrival: on_arrival(e); break;
        case EventKind::TrafficDue: on_traffic(e); break;
        case EventKind::PendingExpiry: on_expiry(e); break;
        case EventKind::MaintenanceTick: on_maintenance(e); break;
        case EventKind::RunEnd: break;
        }
    }

    std::uint64_t in_flight = 0;
    queue_.for_each([&](const Event& e) {
        if (e.kind == EventKind::PacketArrival && e.payload->packet.kind == PacketKind::Data && e.payload->intended &&
            *e.payload->intended == e.subject)
            ++in_flight;
    });

    RunMetrics& m = result_.metrics;
    m.in_flight = in_flight;
    m.delivery_ratio = compute_delivery_ratio(m.sent, m.delivered);
    m.routing_overhead = compute_overhead(m.control_packets, m.delivered);
    m.avg_delay = compute_avg_delay(result_.deliveries);
    m.avg_hops_delivered = compute_avg_hops(result_.deliveries);
    if (m.delivered + m.dropped + m.in_flight != m.sent || live_packets_ != m.in_flight)
        throw InconsistencyError(fmt::format("packet conservation violated: sent={} delivered={} dropped={} "
                                             "in_flight={} live={}",
                                             m.sent, m.delivered, m.dropped, m.in_flight, live_packets_));

    if (cfg_.protocol == Protocol::Sgpsr) {
        for (const auto& n : nodes_) {
            if (n.is_malicious())
                continue;
            for (const auto& [neighbor, value] : n.trust)
                trace_.event(cfg_.sim_time, n.id, "trust", std::nullopt, std::nullopt, neighbor,
                             fmt::format("{:.4f}", value));
        }
    }

    if (options_.keep_nodes)
        result_.nodes = nodes_;
    result_.trace_hash = fnv1a64(trace_.text());
    result_.trace = trace_.release();
    return std::move(result_);
}

}  // namespace

std::vector<Position> initial_positions(const SimConfig& cfg)
{
    std::vector<Position> out;
    for (const auto& t : build_trajectories(cfg))
        out.push_back(t.legs().front().start);
    return out;
}

RunResult run(const SimConfig& cfg, const RunOptions& options)
{
    if (cfg.sim_time == 0.0) {
        RunResult empty;
        empty.config = cfg;
        return empty;
    }
    return Simulator(validate_config(cfg), options).run();
}

}  // namespace sgpsr
