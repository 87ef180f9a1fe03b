#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <fmt/format.h>

#include "sgpsr/config.hpp"
#include "sgpsr/engine.hpp"
#include "sgpsr/geometry.hpp"
#include "sgpsr/gpsr.hpp"
#include "sgpsr/planarization.hpp"
#include "sgpsr/sweep.hpp"
#include "sgpsr/trust.hpp"

namespace py = pybind11;
using namespace sgpsr;

namespace {

using XY = std::pair<double, double>;
using PyNeighbor = std::pair<std::uint32_t, XY>;

Position pos(const XY& p) { return {p.first, p.second}; }

std::vector<NeighborPoint> neighbors_from(const std::vector<PyNeighbor>& in)
{
    std::vector<NeighborPoint> out;
    out.reserve(in.size());
    for (const auto& [id, xy] : in)
        out.push_back({NodeId{id}, pos(xy)});
    return out;
}

std::vector<std::uint32_t> ids_of(const PlanarNeighborSet& set)
{
    std::vector<std::uint32_t> out;
    for (const auto& n : set.kept)
        out.push_back(n.id.value);
    return out;
}

py::dict metrics_dict(const RunResult& r)
{
    const RunMetrics& m = r.metrics;
    py::dict d;
    d["sent"] = m.sent;
    d["delivered"] = m.delivered;
    d["control_packets"] = m.control_packets;
    d["dropped"] = m.dropped;
    d["in_flight"] = m.in_flight;
    d["delivery_ratio"] = m.delivery_ratio;
    d["routing_overhead"] = m.routing_overhead ? py::cast(*m.routing_overhead) : py::none();
    d["avg_delay_s"] = m.avg_delay;
    d["avg_hops"] = m.avg_hops_delivered;
    std::vector<std::uint32_t> malicious;
    for (const auto& id : r.malicious)
        malicious.push_back(id.value);
    d["malicious"] = malicious;
    d["trace_hash"] = r.trace_hash;
    d["trace"] = r.trace;
    return d;
}

}  // namespace

PYBIND11_MODULE(_sgpsr, m)
{
    m.doc() = "GPSR / S-GPSR wireless sensor network simulator";

    static py::exception<ConfigError> config_error(m, "ConfigError", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p)
                std::rethrow_exception(p);
        }
        catch (const ConfigError& e) {
            PyErr_SetString(config_error.ptr(), e.what());
        }
    });

    m.attr("CSV_HEADER") = std::string(kCsvHeader);

    py::class_<SimConfig>(m, "SimConfig")
        .def(py::init<>())
        .def_static("from_text", &parse_config, py::arg("text"))
        .def("to_text", &serialize_config)
        .def("validated", &validate_config)
        .def("diagnostics", &config_diagnostics)
        .def_property(
            "protocol", [](const SimConfig& c) { return std::string(to_string(c.protocol)); },
            [](SimConfig& c, const std::string& v) { c.protocol = parse_protocol(v); })
        .def_readwrite("n_nodes", &SimConfig::n_nodes)
        .def_property(
            "area", [](const SimConfig& c) { return XY{c.area.width, c.area.height}; },
            [](SimConfig& c, const XY& v) { c.area = {v.first, v.second}; })
        .def_readwrite("n_malicious", &SimConfig::n_malicious)
        .def_readwrite("packet_size", &SimConfig::packet_size)
        .def_readwrite("radio_range", &SimConfig::radio_range)
        .def_readwrite("sim_time", &SimConfig::sim_time)
        .def_readwrite("seed", &SimConfig::seed)
        .def_readwrite("drop_prob", &SimConfig::drop_prob)
        .def_property(
            "flows", [](const SimConfig& c) { return c.traffic.flows; },
            [](SimConfig& c, std::uint32_t v) { c.traffic.flows = v; })
        .def_property(
            "pause_s", [](const SimConfig& c) { return c.mobility.pause_s; },
            [](SimConfig& c, double v) { c.mobility.pause_s = v; })
        .def_property(
            "attack", [](const SimConfig& c) { return std::string(to_string(c.attack)); },
            [](SimConfig& c, const std::string& v) { c.attack = parse_attack(v); })
        .def("__eq__", [](const SimConfig& a, const SimConfig& b) { return a == b; })
        .def("__repr__", [](const SimConfig& c) {
            return fmt::format("SimConfig(protocol={}, n_nodes={}, area={}x{}, n_malicious={}, seed={})",
                               to_string(c.protocol), c.n_nodes, c.area.width, c.area.height, c.n_malicious, c.seed);
        });

    m.def("euclidean_distance", [](const XY& a, const XY& b) { return euclidean_distance(pos(a), pos(b)); });
    m.def(
        "angle_of",
        [](const XY& from, const XY& to) {
            try {
                return angle_of(pos(from), pos(to));
            }
            catch (const GeometryError& e) {
                throw py::value_error(e.what());
            }
        },
        "Counterclockwise bearing in [0, 2pi)");

    m.def(
        "gabriel_subgraph",
        [](const XY& self, const std::vector<PyNeighbor>& nbrs) {
            return ids_of(gabriel_subgraph(NodeId{0}, pos(self), neighbors_from(nbrs)));
        },
        py::arg("self_pos"), py::arg("neighbors"));
    m.def(
        "rng_subgraph",
        [](const XY& self, const std::vector<PyNeighbor>& nbrs) {
            return ids_of(rng_subgraph(NodeId{0}, pos(self), neighbors_from(nbrs)));
        },
        py::arg("self_pos"), py::arg("neighbors"));
    m.def(
        "next_edge_right_hand",
        [](const XY& self, double reference, const std::vector<PyNeighbor>& planar) -> std::optional<std::uint32_t> {
            PlanarNeighborSet set{NodeId{0}, neighbors_from(planar)};
            if (auto next = next_edge_right_hand(pos(self), reference, set))
                return next->value;
            return std::nullopt;
        },
        py::arg("self_pos"), py::arg("reference"), py::arg("planar"));
    m.def(
        "select_greedy_next_hop",
        [](const XY& self, const std::vector<PyNeighbor>& nbrs, std::uint32_t dst,
           const XY& dst_pos) -> std::optional<std::uint32_t> {
            auto candidates = neighbors_from(nbrs);
            if (auto next = select_greedy_next_hop(pos(self), candidates, NodeId{dst}, pos(dst_pos)))
                return next->value;
            return std::nullopt;
        },
        py::arg("self_pos"), py::arg("neighbors"), py::arg("dst"), py::arg("dst_pos"));

    m.def("update_trust", &update_trust, py::arg("current"), py::arg("delta"));
    m.def("is_trusted", &is_trusted, py::arg("trust"), py::arg("threshold"));

    m.def(
        "simulate",
        [](const SimConfig& cfg, bool trace) {
            RunOptions options;
            options.trace = trace;
            RunResult r;
            {
                py::gil_scoped_release release;
                r = run(cfg, options);
            }
            return metrics_dict(r);
        },
        py::arg("config"), py::arg("trace") = false, "Run one simulation; returns its metrics as a dict");

    m.def(
        "sweep",
        [](const SimConfig& base, std::uint32_t seeds, std::uint32_t jobs, std::vector<std::string> protocols,
           std::vector<std::uint32_t> nodes, std::vector<double> areas, std::vector<std::uint32_t> malicious) {
            SweepAxes axes;
            if (!protocols.empty()) {
                axes.protocols.clear();
                for (const auto& p : protocols)
                    axes.protocols.push_back(parse_protocol(p));
            }
            if (!nodes.empty())
                axes.nodes = nodes;
            if (!areas.empty())
                axes.areas = areas;
            if (!malicious.empty())
                axes.malicious = malicious;
            SweepOptions options;
            options.seeds = seeds;
            options.jobs = jobs;
            py::gil_scoped_release release;
            return run_sweep(base, axes, options).csv;
        },
        py::arg("base"), py::arg("seeds") = 10, py::arg("jobs") = 1, py::arg("protocols") = std::vector<std::string>{},
        py::arg("nodes") = std::vector<std::uint32_t>{}, py::arg("areas") = std::vector<double>{},
        py::arg("malicious") = std::vector<std::uint32_t>{}, "Run a sweep; returns the CSV text");
}
