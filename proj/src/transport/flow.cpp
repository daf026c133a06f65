#include "macc/transport/flow.hpp"

#include <algorithm>
#include <string>

namespace macc::transport {

void apply_tcp_action(TcpFlowState& flow, int action, CwndIncrementMode mode) {
    if (action < 0 || action >= kTcpActionCount) {
        throw std::invalid_argument("tcp action must be in {0..3}, got " +
                                    std::to_string(action));
    }
    const std::int64_t seg = flow.segment_size;
    if (action & 1) {
        flow.cwnd += seg;
    } else if (mode == CwndIncrementMode::Literal) {
        flow.cwnd += std::max<std::int64_t>(1, seg * seg);
    } else {
        flow.cwnd += std::max<std::int64_t>(1, seg * seg / flow.cwnd);
    }
    if (action < 3) {
        flow.ssthresh = 2 * seg;
    } else {
        flow.ssthresh = flow.bytes_in_flight;
    }
}

std::int64_t send_gate(const TcpFlowState& flow) {
    if (flow.bytes_in_flight >= flow.cwnd) return 0;
    return (flow.cwnd - flow.bytes_in_flight) / flow.segment_size;
}

NewRenoMachine::Actions NewRenoMachine::on_ack(TcpFlowState& flow, std::int64_t ack_no,
                                               std::int64_t snd_nxt) {
    Actions act;
    const std::int64_t seg = flow.segment_size;
    if (ack_no < snd_una_) return act;  // stale

    if (ack_no == snd_una_) {
        if (snd_nxt == snd_una_) return act;  // nothing outstanding
        ++dup_acks_;
        if (phase_ == CcPhase::FastRecovery) {
            if (adjust_windows_) flow.cwnd += seg;  // window inflation
        } else if (dup_acks_ == 3 && snd_una_ >= recover_) {
            // The recover_ gate suppresses re-entry on the dup-acks that
            // trail a retransmission of the same window.
            if (adjust_windows_) {
                flow.ssthresh = std::max(flow.bytes_in_flight / 2, 2 * seg);
                flow.cwnd = flow.ssthresh + 3 * seg;
            }
            recover_ = snd_nxt;
            phase_ = CcPhase::FastRecovery;
            act.retransmit_head = true;
        }
        return act;
    }

    // Ack advances the window.
    const std::int64_t acked = ack_no - snd_una_;
    snd_una_ = ack_no;

    if (phase_ == CcPhase::FastRecovery) {
        if (ack_no >= recover_) {
            // Full ack: everything lost in this window has been repaired.
            if (adjust_windows_) flow.cwnd = std::max(flow.ssthresh, seg);
            phase_ = CcPhase::Open;
            dup_acks_ = 0;
        } else {
            // Partial ack: the next hole is lost too. Deflate by the
            // amount acked, add back one segment, retransmit the hole.
            if (adjust_windows_) {
                flow.cwnd = std::max(flow.cwnd - acked + seg, seg);
            }
            act.retransmit_head = true;
        }
        return act;
    }

    dup_acks_ = 0;
    if (adjust_windows_) {
        if (flow.cwnd < flow.ssthresh) {
            flow.cwnd += seg;  // slow start
        } else {
            flow.cwnd += std::max<std::int64_t>(1, seg * seg / flow.cwnd);
        }
    }
    return act;
}

NewRenoMachine::Actions NewRenoMachine::on_timeout(TcpFlowState& flow, std::int64_t snd_nxt) {
    Actions act;
    if (flow.bytes_in_flight <= 0) return act;  // nothing to recover
    const std::int64_t seg = flow.segment_size;
    if (adjust_windows_) {
        flow.ssthresh = std::max(flow.bytes_in_flight / 2, 2 * seg);
        flow.cwnd = seg;
    }
    phase_ = CcPhase::Open;
    dup_acks_ = 0;
    recover_ = snd_nxt;  // ignore dup-acks for data sent before the timeout
    act.retransmit_head = true;
    return act;
}

}  // namespace macc::transport
