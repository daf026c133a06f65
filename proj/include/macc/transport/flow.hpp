#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>

namespace macc::transport {

enum class TransportKind { NewReno, FixedRate, RlAgent };

/// How an even action index grows the congestion window.
/// Literal adds max(1, segment_size^2) bytes in one step; Corrected adds
/// the classic max(1, segment_size^2 / cwnd). Corrected is the default;
/// Literal is kept selectable for faithfulness experiments.
enum class CwndIncrementMode { Literal, Corrected };

inline constexpr int kTcpActionCount = 4;

struct TcpFlowState {
    std::int64_t cwnd = 0;      // bytes
    std::int64_t ssthresh = std::numeric_limits<std::int64_t>::max() / 4;
    int segment_size = 1448;
    std::int64_t bytes_in_flight = 0;
    std::int64_t segments_acked_epoch = 0;  // sa, reset when the epoch is measured
    double srtt_s = 0.0;                    // EWMA of samples, gain 1/8
    double rttvar_s = 0.0;
    bool rtt_valid = false;
};

/// Epoch-boundary window update for learned flows:
///   odd action:  cwnd += segment_size
///   even action: cwnd += max(1, segment_size^2) (literal)
///                or max(1, segment_size^2 / cwnd) (corrected)
/// then ssthresh = 2*segment_size when action < 3, else bytes_in_flight.
/// Pure in (flow, action, mode); actions outside {0..3} throw.
void apply_tcp_action(TcpFlowState& flow, int action, CwndIncrementMode mode);

/// Number of whole segments the window permits right now.
std::int64_t send_gate(const TcpFlowState& flow);

enum class CcPhase { Open, FastRecovery };

/// NewReno loss handling over a cumulative-ack byte stream: duplicate-ack
/// counting, fast retransmit on the third duplicate, partial-ack recovery,
/// and timeout collapse. With adjust_windows=false the same machinery
/// classifies acks and requests retransmissions but leaves cwnd/ssthresh
/// alone (learned flows own their window at epoch boundaries).
class NewRenoMachine {
public:
    explicit NewRenoMachine(bool adjust_windows = true)
        : adjust_windows_(adjust_windows) {}

    struct Actions {
        bool retransmit_head = false;
    };

    /// Cumulative ack `ack_no` arrived; `snd_nxt` is the next unsent byte.
    /// bytes_in_flight in `flow` must already reflect the ack.
    Actions on_ack(TcpFlowState& flow, std::int64_t ack_no, std::int64_t snd_nxt);

    /// Retransmission timer fired with `flow.bytes_in_flight` unacked.
    Actions on_timeout(TcpFlowState& flow, std::int64_t snd_nxt);

    CcPhase phase() const { return phase_; }
    int dup_acks() const { return dup_acks_; }
    std::int64_t snd_una() const { return snd_una_; }

private:
    bool adjust_windows_;
    CcPhase phase_ = CcPhase::Open;
    int dup_acks_ = 0;
    std::int64_t snd_una_ = 0;
    std::int64_t recover_ = 0;
};

}  // namespace macc::transport
