#pragma once

#include <cstdint>

#include "macc/sim/time.hpp"

namespace macc::sim {

enum class PacketKind : std::uint8_t { Data, Ack };

/// TCP/IP header overhead assumed on every data segment.
inline constexpr int kHeaderBytes = 40;
/// Size of a bare acknowledgment packet.
inline constexpr int kAckBytes = 60;

struct Packet {
    std::uint64_t id = 0;   // unique within a run
    int flow = 0;
    PacketKind kind = PacketKind::Data;
    std::int64_t seq = 0;   // Data: first payload byte; Ack: echo of the acked segment's seq
    int size_bytes = 0;     // payload + header
    int payload_bytes = 0;  // Data only
    SimTime sent_at;        // injection time at the endpoint
    std::int64_t ack = 0;   // Ack only: cumulative next-expected byte
    bool corrupt = false;   // marked lost by the bottleneck error model
    SimTime enqueued_at;    // set by the queue discipline for sojourn tracking
};

}  // namespace macc::sim
