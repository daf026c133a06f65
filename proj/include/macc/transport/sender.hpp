#pragma once

#include <cstdint>
#include <functional>
#include <map>

#include "macc/sim/event_queue.hpp"
#include "macc/sim/packet.hpp"
#include "macc/transport/flow.hpp"

namespace macc::transport {

struct TransportParams {
    TransportKind kind = TransportKind::NewReno;
    int segment_size = 1448;
    int initial_cwnd_segments = 10;
    CwndIncrementMode cwnd_mode = CwndIncrementMode::Corrected;
    double fixed_rate_bps = 0.0;  // FixedRate kind only
    double min_rto_s = 0.2;
    double max_rto_s = 60.0;
};

/// Where a sender's packets go (the simulation's ingress edge link).
class PacketOutlet {
public:
    virtual ~PacketOutlet() = default;
    virtual void send(sim::Packet pkt, sim::SimTime now) = 0;
};

/// Per-epoch flow statistics handed to the metrics layer.
struct FlowEpochStats {
    std::int64_t segments_acked = 0;
    std::int64_t cwnd = 0;
    std::int64_t ssthresh = 0;
    std::int64_t bytes_in_flight = 0;
    double srtt_s = 0.0;
    double rtt_sum_s = 0.0;
    std::int64_t rtt_samples = 0;
    double rtt_min_s = 0.0;  // valid when rtt_samples > 0
    std::int64_t retransmits = 0;
    std::int64_t timeouts = 0;
};

/// One sending endpoint: an infinite-backlog byte stream segmented into
/// MSS-sized packets, window-gated (NewReno / learned flows) or paced by
/// a timer (FixedRate).
class TcpSender {
public:
    TcpSender(int flow_id, const TransportParams& params, sim::EventQueue& events,
              PacketOutlet& outlet);

    void start();

    void on_ack_packet(const sim::Packet& ack);

    /// Epoch-boundary window update for learned flows.
    void apply_action(int action);

    FlowEpochStats take_epoch_stats();

    const TcpFlowState& flow() const { return flow_; }
    TransportKind kind() const { return params_.kind; }
    int flow_id() const { return flow_id_; }
    std::int64_t ignored_acks() const { return ignored_acks_; }
    double current_rto_s() const { return rto_s_; }

private:
    struct Segment {
        std::int64_t len = 0;
        sim::SimTime sent_at;
        int transmissions = 1;
    };

    void pump();
    void emit_segment(std::int64_t seq, std::int64_t len, bool retransmit);
    void retransmit_head();
    void handle_new_ack(std::int64_t ack_no);
    void sample_rtt(double sample_s);
    void arm_rto();
    void on_rto_fire(std::uint64_t generation);
    void fixed_rate_tick();

    int flow_id_;
    TransportParams params_;
    sim::EventQueue& events_;
    PacketOutlet& outlet_;

    TcpFlowState flow_;
    NewRenoMachine machine_;

    std::int64_t next_seq_ = 0;
    std::map<std::int64_t, Segment> outstanding_;  // keyed by seq

    double rto_s_ = 1.0;  // until the first sample
    std::uint64_t rto_generation_ = 0;
    bool rto_armed_ = false;

    std::int64_t ignored_acks_ = 0;

    // epoch accumulators
    double epoch_rtt_sum_s_ = 0.0;
    std::int64_t epoch_rtt_samples_ = 0;
    double epoch_rtt_min_s_ = 0.0;
    std::int64_t epoch_retransmits_ = 0;
    std::int64_t epoch_timeouts_ = 0;
};

}  // namespace macc::transport
