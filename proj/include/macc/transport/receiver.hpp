#pragma once

#include <cstdint>
#include <map>

#include "macc/sim/event_queue.hpp"
#include "macc/sim/packet.hpp"
#include "macc/transport/sender.hpp"

namespace macc::transport {

/// Receiving endpoint. Acks every data arrival with the cumulative
/// next-expected byte (out-of-order segments are held for reassembly) and
/// counts newly delivered payload bytes for goodput.
class TcpReceiver {
public:
    TcpReceiver(int flow_id, sim::EventQueue& events, PacketOutlet& ack_outlet)
        : flow_id_(flow_id), events_(events), ack_outlet_(ack_outlet) {}

    void on_data_packet(const sim::Packet& pkt);

    /// Payload bytes first delivered during the current epoch.
    std::int64_t take_new_bytes();

    std::int64_t recv_next() const { return recv_next_; }
    std::int64_t duplicate_packets() const { return duplicate_packets_; }

private:
    int flow_id_;
    sim::EventQueue& events_;
    PacketOutlet& ack_outlet_;

    std::int64_t recv_next_ = 0;
    std::map<std::int64_t, std::int64_t> out_of_order_;  // start -> end, disjoint
    std::int64_t epoch_new_bytes_ = 0;
    std::int64_t duplicate_packets_ = 0;
};

}  // namespace macc::transport
