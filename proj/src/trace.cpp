#include "sgpsr/trace.hpp"

#include <fmt/format.h>

namespace sgpsr {

void TraceLog::comment(std::string_view line)
{
    if (!enabled_)
        return;
    text_ += "# ";
    text_ += line;
    text_ += '\n';
}

void TraceLog::columns()
{
    if (!enabled_)
        return;
    text_ += kTraceColumns;
    text_ += '\n';
}

void TraceLog::event(double time, NodeId node, std::string_view event, std::optional<std::uint64_t> seq,
                     std::optional<RoutingMode> mode, std::optional<NodeId> next_hop, std::string_view reason)
{
    if (!enabled_)
        return;
    auto out = std::back_inserter(text_);
    fmt::format_to(out, "{:.6f},{},{},", time, node.value, event);
    if (seq)
        fmt::format_to(out, "{}", *seq);
    text_ += ',';
    if (mode)
        text_ += to_string(*mode);
    text_ += ',';
    if (next_hop)
        fmt::format_to(out, "{}", next_hop->value);
    text_ += ',';
    text_ += reason;
    text_ += '\n';
}

std::uint64_t fnv1a64(std::string_view text)
{
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

}  // namespace sgpsr
