#include "macc/aqm/red.hpp"

#include <cmath>

namespace macc::aqm {

RedQueue::RedQueue(int capacity, RedParams params, double idle_pkt_time_s)
    : QueueDisc(capacity), params_(params), idle_pkt_time_s_(idle_pkt_time_s) {
    params_.validate(capacity);
}

double RedQueue::drop_probability(double avg, const RedParams& p) {
    if (avg < p.min_th) return 0.0;
    if (avg >= p.max_th) return 1.0;
    return p.max_p * (avg - p.min_th) / (p.max_th - p.min_th);
}

AdmitResult RedQueue::admit(const sim::Packet& pkt, sim::SimTime now, sim::Rng& rng) {
    if (idle_) {
        // Decay the average as if m small packets had been dequeued while idle.
        const double m = idle_pkt_time_s_ > 0
                             ? (now - idle_since_).seconds() / idle_pkt_time_s_
                             : 0.0;
        avg_ *= std::pow(1.0 - params_.w_q, m);
        idle_ = false;
    }
    avg_ = (1.0 - params_.w_q) * avg_ + params_.w_q * static_cast<double>(occupancy());

    if (occupancy() >= capacity()) {
        count_ = 0;
        count_drop(DropCause::Full);
        return AdmitResult::Dropped;
    }

    if (avg_ < params_.min_th) {
        count_ = -1;
    } else if (avg_ >= params_.max_th) {
        count_ = 0;
        count_drop(DropCause::RedEarly);
        return AdmitResult::Dropped;
    } else {
        ++count_;
        const double pb = drop_probability(avg_, params_);
        double pa = pb;
        if (count_ > 0 && static_cast<double>(count_) * pb < 1.0) {
            pa = pb / (1.0 - static_cast<double>(count_) * pb);
        } else if (count_ > 0) {
            pa = 1.0;
        }
        if (rng.bernoulli(pa)) {
            count_ = 0;
            count_drop(DropCause::RedEarly);
            return AdmitResult::Dropped;
        }
    }

    push(pkt, now);
    return AdmitResult::Enqueued;
}

std::optional<sim::Packet> RedQueue::dequeue(sim::SimTime now) {
    if (buffer_.empty()) return std::nullopt;
    sim::Packet p = pop(now);
    if (buffer_.empty()) {
        idle_ = true;
        idle_since_ = now;
    }
    return p;
}

}  // namespace macc::aqm
