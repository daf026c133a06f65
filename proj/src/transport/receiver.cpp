#include "macc/transport/receiver.hpp"

#include <algorithm>

namespace macc::transport {

void TcpReceiver::on_data_packet(const sim::Packet& pkt) {
    const std::int64_t start = pkt.seq;
    const std::int64_t end = pkt.seq + pkt.payload_bytes;

    // Count bytes not already covered by [0, recv_next_) or a held block.
    std::int64_t fresh = 0;
    if (end <= recv_next_) {
        ++duplicate_packets_;
    } else {
        std::int64_t lo = std::max(start, recv_next_);
        auto it = out_of_order_.find(lo);
        // Segment boundaries are stable per flow, so a block either matches
        // exactly or is absent.
        if (it != out_of_order_.end() && it->second >= end) {
            ++duplicate_packets_;
        } else {
            fresh = end - lo;
            out_of_order_[lo] = end;
        }
    }
    epoch_new_bytes_ += fresh;

    // Advance the cumulative point through any now-contiguous blocks.
    auto it = out_of_order_.begin();
    while (it != out_of_order_.end() && it->first <= recv_next_) {
        recv_next_ = std::max(recv_next_, it->second);
        it = out_of_order_.erase(it);
    }

    sim::Packet ack;
    ack.flow = flow_id_;
    ack.kind = sim::PacketKind::Ack;
    ack.seq = pkt.seq;  // echo, used by per-segment senders
    ack.ack = recv_next_;
    ack.size_bytes = sim::kAckBytes;
    ack.sent_at = events_.now();
    ack_outlet_.send(std::move(ack), events_.now());
}

std::int64_t TcpReceiver::take_new_bytes() {
    const std::int64_t v = epoch_new_bytes_;
    epoch_new_bytes_ = 0;
    return v;
}

}  // namespace macc::transport
