#include "sgpsr/packet.hpp"

#include <cstring>

namespace sgpsr {

namespace {

class Fnv1a {
public:
    template <typename T>
    Fnv1a& add(const T& value)
    {
        unsigned char bytes[sizeof(T)];
        std::memcpy(bytes, &value, sizeof(T));
        for (unsigned char b : bytes) {
            hash_ ^= b;
            hash_ *= 0x100000001b3ULL;
        }
        return *this;
    }
    std::uint64_t value() const { return hash_; }

private:
    std::uint64_t hash_ = 0xcbf29ce484222325ULL;
};

}  // namespace

std::string_view to_string(RoutingMode mode)
{
    return mode == RoutingMode::Greedy ? "greedy" : "perimeter";
}

Digest payload_checksum(NodeId src, std::uint64_t seq, std::uint32_t payload_len)
{
    return Fnv1a{}.add(src.value).add(seq).add(payload_len).add(std::uint32_t{0x5eed}).value();
}

Digest immutable_digest(const Packet& p)
{
    return Fnv1a{}
        .add(static_cast<std::uint8_t>(p.kind))
        .add(p.seq)
        .add(p.src.value)
        .add(p.dst.value)
        .add(p.dst_pos.x)
        .add(p.dst_pos.y)
        .add(p.origin_time)
        .add(p.payload_len)
        .add(p.payload_digest)
        .value();
}

void reset_to_greedy(Packet& p)
{
    p.mode = RoutingMode::Greedy;
    p.lp.reset();
    p.lf.reset();
    p.e0.reset();
}

}  // namespace sgpsr
