#pragma once

#include <deque>

#include <Eigen/Dense>

namespace macc::env {

/// Transport-layer view: segments acked this epoch, bytes in flight at
/// the boundary, smoothed round-trip time.
struct Observation1 {
    double sa = 0.0;
    double bif = 0.0;
    double rtt_s = 0.0;

    Eigen::Vector3d vector() const { return {sa, bif, rtt_s}; }
};

/// Network-layer view: queue length, dequeue rate, queuing delay.
struct Observation2 {
    double queue_len = 0.0;
    double dequeue_rate_pps = 0.0;
    double delay_s = 0.0;

    Eigen::Vector3d vector() const { return {queue_len, dequeue_rate_pps, delay_s}; }
};

/// Fixed-length history of observation vectors, presented `lag` epochs
/// behind the present: the flattened state after pushing v_t contains
/// (v_{t-lag-k+1}, ..., v_{t-lag}), oldest first, zero-padded until
/// enough history exists.
class StateWindow {
public:
    StateWindow(int k, int lag) : k_(k), lag_(lag) {}

    void push(const Eigen::Vector3d& v) {
        history_.push_back(v);
        const std::size_t keep = static_cast<std::size_t>(k_ + lag_);
        while (history_.size() > keep) history_.pop_front();
    }

    void reset() { history_.clear(); }

    int k() const { return k_; }
    int lag() const { return lag_; }
    int flat_dim() const { return 3 * k_; }

    Eigen::VectorXd flattened() const {
        Eigen::VectorXd out = Eigen::VectorXd::Zero(flat_dim());
        // Usable entries: all but the most recent `lag_`.
        const int usable = static_cast<int>(history_.size()) - lag_;
        const int take = std::min(usable, k_);
        for (int i = 0; i < take; ++i) {
            // Slot (k_-1) holds v_{t-lag}, slot (k_-1-i) the i-th older one.
            const auto& v = history_[usable - 1 - i];
            out.segment<3>(3 * (k_ - 1 - i)) = v;
        }
        return out;
    }

private:
    int k_;
    int lag_;
    std::deque<Eigen::Vector3d> history_;
};

}  // namespace macc::env
