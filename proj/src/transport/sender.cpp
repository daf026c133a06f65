#include "macc/transport/sender.hpp"

#include <algorithm>
#include <cmath>

namespace macc::transport {

TcpSender::TcpSender(int flow_id, const TransportParams& params, sim::EventQueue& events,
                     PacketOutlet& outlet)
    : flow_id_(flow_id),
      params_(params),
      events_(events),
      outlet_(outlet),
      machine_(params.kind == TransportKind::NewReno) {
    flow_.segment_size = params_.segment_size;
    flow_.cwnd = static_cast<std::int64_t>(params_.initial_cwnd_segments) * params_.segment_size;
    if (params_.kind == TransportKind::FixedRate) {
        // Not window-gated; keep the invariant checks trivially true.
        flow_.cwnd = std::numeric_limits<std::int64_t>::max() / 4;
    }
}

void TcpSender::start() {
    if (params_.kind == TransportKind::FixedRate) {
        fixed_rate_tick();
    } else {
        pump();
    }
}

void TcpSender::pump() {
    while (send_gate(flow_) > 0) {
        emit_segment(next_seq_, params_.segment_size, false);
        next_seq_ += params_.segment_size;
    }
}

void TcpSender::emit_segment(std::int64_t seq, std::int64_t len, bool retransmit) {
    sim::Packet pkt;
    pkt.flow = flow_id_;
    pkt.kind = sim::PacketKind::Data;
    pkt.seq = seq;
    pkt.payload_bytes = static_cast<int>(len);
    pkt.size_bytes = static_cast<int>(len) + sim::kHeaderBytes;
    pkt.sent_at = events_.now();

    if (retransmit) {
        auto it = outstanding_.find(seq);
        if (it != outstanding_.end()) {
            ++it->second.transmissions;
            it->second.sent_at = events_.now();
        }
        ++epoch_retransmits_;
    } else {
        outstanding_.emplace(seq, Segment{len, events_.now(), 1});
        flow_.bytes_in_flight += len;
    }
    if (!rto_armed_) arm_rto();
    outlet_.send(std::move(pkt), events_.now());
}

void TcpSender::retransmit_head() {
    if (outstanding_.empty()) return;
    auto& [seq, seg] = *outstanding_.begin();
    emit_segment(seq, seg.len, true);
}

void TcpSender::on_ack_packet(const sim::Packet& ack) {
    if (params_.kind == TransportKind::FixedRate) {
        // Per-segment accounting: cumulative semantics never recover the
        // holes a non-retransmitting sender leaves behind.
        auto it = outstanding_.find(ack.seq);
        if (it == outstanding_.end()) {
            ++ignored_acks_;
            return;
        }
        sample_rtt((events_.now() - it->second.sent_at).seconds());
        flow_.bytes_in_flight -= it->second.len;
        ++flow_.segments_acked_epoch;
        outstanding_.erase(it);
        return;
    }

    const std::int64_t ack_no = ack.ack;
    if (ack_no > next_seq_) {
        ++ignored_acks_;  // acks data never sent
        return;
    }
    if (ack_no > machine_.snd_una()) handle_new_ack(ack_no);

    const auto actions = machine_.on_ack(flow_, ack_no, next_seq_);
    if (actions.retransmit_head) retransmit_head();
    pump();
}

void TcpSender::handle_new_ack(std::int64_t ack_no) {
    while (!outstanding_.empty()) {
        auto it = outstanding_.begin();
        if (it->first + it->second.len > ack_no) break;
        if (it->second.transmissions == 1) {
            // Karn: never sample a retransmitted segment.
            sample_rtt((events_.now() - it->second.sent_at).seconds());
        }
        flow_.bytes_in_flight -= it->second.len;
        ++flow_.segments_acked_epoch;
        outstanding_.erase(it);
    }
    // Fresh timer for whatever is still outstanding.
    rto_armed_ = false;
    ++rto_generation_;
    if (!outstanding_.empty()) arm_rto();
}

void TcpSender::sample_rtt(double sample_s) {
    if (!flow_.rtt_valid) {
        flow_.srtt_s = sample_s;
        flow_.rttvar_s = sample_s / 2.0;
        flow_.rtt_valid = true;
    } else {
        flow_.rttvar_s = 0.75 * flow_.rttvar_s + 0.25 * std::abs(flow_.srtt_s - sample_s);
        flow_.srtt_s = 0.875 * flow_.srtt_s + 0.125 * sample_s;
    }
    rto_s_ = std::clamp(flow_.srtt_s + 4.0 * flow_.rttvar_s, params_.min_rto_s, params_.max_rto_s);

    epoch_rtt_sum_s_ += sample_s;
    if (epoch_rtt_samples_ == 0 || sample_s < epoch_rtt_min_s_) epoch_rtt_min_s_ = sample_s;
    ++epoch_rtt_samples_;
}

void TcpSender::arm_rto() {
    rto_armed_ = true;
    const std::uint64_t gen = ++rto_generation_;
    events_.schedule(events_.now() + sim::SimTime::from_seconds(rto_s_),
                     [this, gen] { on_rto_fire(gen); });
}

void TcpSender::on_rto_fire(std::uint64_t generation) {
    if (generation != rto_generation_ || !rto_armed_) return;  // superseded
    rto_armed_ = false;
    if (outstanding_.empty()) return;

    ++epoch_timeouts_;
    const auto actions = machine_.on_timeout(flow_, next_seq_);
    rto_s_ = std::min(rto_s_ * 2.0, params_.max_rto_s);  // exponential backoff
    if (actions.retransmit_head) retransmit_head();
    arm_rto();
    pump();
}

void TcpSender::fixed_rate_tick() {
    emit_segment(next_seq_, params_.segment_size, false);
    next_seq_ += params_.segment_size;

    // Prune segments that will never be acked.
    const auto horizon = events_.now() - sim::SimTime::from_seconds(params_.max_rto_s);
    while (!outstanding_.empty() && outstanding_.begin()->second.sent_at < horizon) {
        flow_.bytes_in_flight -= outstanding_.begin()->second.len;
        outstanding_.erase(outstanding_.begin());
    }

    const double packet_interval_s =
        static_cast<double>(params_.segment_size + sim::kHeaderBytes) * 8.0 /
        params_.fixed_rate_bps;
    events_.schedule(events_.now() + sim::SimTime::from_seconds(packet_interval_s),
                     [this] { fixed_rate_tick(); });
}

void TcpSender::apply_action(int action) {
    apply_tcp_action(flow_, action, params_.cwnd_mode);
    pump();
}

FlowEpochStats TcpSender::take_epoch_stats() {
    FlowEpochStats s;
    s.segments_acked = flow_.segments_acked_epoch;
    s.cwnd = flow_.cwnd;
    s.ssthresh = flow_.ssthresh;
    s.bytes_in_flight = flow_.bytes_in_flight;
    s.srtt_s = flow_.srtt_s;
    s.rtt_sum_s = epoch_rtt_sum_s_;
    s.rtt_samples = epoch_rtt_samples_;
    s.rtt_min_s = epoch_rtt_min_s_;
    s.retransmits = epoch_retransmits_;
    s.timeouts = epoch_timeouts_;

    flow_.segments_acked_epoch = 0;
    epoch_rtt_sum_s_ = 0.0;
    epoch_rtt_samples_ = 0;
    epoch_rtt_min_s_ = 0.0;
    epoch_retransmits_ = 0;
    epoch_timeouts_ = 0;
    return s;
}

}  // namespace macc::transport
