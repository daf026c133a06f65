#include "macc/aqm/queue_disc.hpp"

namespace macc::aqm {

AdmitResult QueueDisc::admit(const sim::Packet& pkt, sim::SimTime now, sim::Rng&) {
    if (occupancy() >= capacity()) {
        count_drop(DropCause::Full);
        return AdmitResult::Dropped;
    }
    push(pkt, now);
    return AdmitResult::Enqueued;
}

std::optional<sim::Packet> QueueDisc::dequeue(sim::SimTime now) {
    if (buffer_.empty()) return std::nullopt;
    return pop(now);
}

void QueueDisc::push(const sim::Packet& pkt, sim::SimTime now) {
    sim::Packet p = pkt;
    p.enqueued_at = now;
    buffer_.push_back(p);
}

sim::Packet QueueDisc::pop(sim::SimTime now) {
    sim::Packet p = buffer_.front();
    buffer_.pop_front();
    ++epoch_dequeued_;
    epoch_sojourn_sum_s_ += (now - p.enqueued_at).seconds();
    return p;
}

void QueueDisc::count_drop(DropCause cause) {
    switch (cause) {
        case DropCause::Full: ++drops_.full; ++epoch_drops_.full; break;
        case DropCause::RedEarly: ++drops_.red_early; ++epoch_drops_.red_early; break;
        case DropCause::RlRandom: ++drops_.rl_random; ++epoch_drops_.rl_random; break;
        case DropCause::Codel: ++drops_.codel; ++epoch_drops_.codel; break;
    }
}

QueueSnapshot QueueDisc::measure(sim::SimTime window) {
    QueueSnapshot snap;
    snap.occupancy = occupancy();
    const double w = window.seconds();
    snap.dequeue_rate_pps = w > 0 ? static_cast<double>(epoch_dequeued_) / w : 0.0;
    snap.mean_sojourn_s =
        epoch_dequeued_ > 0 ? epoch_sojourn_sum_s_ / static_cast<double>(epoch_dequeued_) : 0.0;
    snap.drops = epoch_drops_;
    epoch_dequeued_ = 0;
    epoch_sojourn_sum_s_ = 0.0;
    epoch_drops_ = DropCounters{};
    return snap;
}

}  // namespace macc::aqm
