#pragma once

namespace macc::env {

/// Divisors for the normalized reward mode. The raw reward formulas mix
/// segments, bytes, packets and seconds; with every scale at 1 the
/// normalized mode reproduces the raw formulas exactly.
struct RewardScales {
    double sa = 1.0;        // segments
    double bif = 1448.0;    // bytes -> segments
    double cwnd = 1448.0;   // bytes -> segments
    double deq = 100.0;     // packets/s
    double delay = 0.01;    // seconds
    double qlen = 385.0;    // packets
};

/// Transport reward: acked volume less in-flight backlog less window.
inline double reward1(double sa_sum, double bif_sum, double cwnd, const RewardScales& s) {
    return sa_sum / s.sa - bif_sum / s.bif - cwnd / s.cwnd;
}

/// Queue reward: drain rate less queuing delay less standing queue.
inline double reward2(double deq_rate, double queue_delay, double queue_len,
                      const RewardScales& s) {
    return deq_rate / s.deq - queue_delay / s.delay - queue_len / s.qlen;
}

inline RewardScales raw_reward_scales() { return RewardScales{1, 1, 1, 1, 1, 1}; }

}  // namespace macc::env
