#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "sgpsr/geometry.hpp"
#include "sgpsr/packet.hpp"

namespace sgpsr {

inline constexpr std::string_view kTraceColumns = "time,node,event,pkt_seq,mode,next_hop,reason";

/// Per-event trace, one CSV line per action. Header lines start with '#'.
class TraceLog {
public:
    explicit TraceLog(bool enabled = false) : enabled_(enabled) {}

    bool enabled() const { return enabled_; }

    void comment(std::string_view line);
    void columns();
    void event(double time, NodeId node, std::string_view event, std::optional<std::uint64_t> seq = std::nullopt,
               std::optional<RoutingMode> mode = std::nullopt, std::optional<NodeId> next_hop = std::nullopt,
               std::string_view reason = {});

    const std::string& text() const { return text_; }
    std::string release() { return std::move(text_); }

private:
    bool enabled_;
    std::string text_;
};

/// FNV-1a 64 over the bytes of `text`.
std::uint64_t fnv1a64(std::string_view text);

}  // namespace sgpsr
