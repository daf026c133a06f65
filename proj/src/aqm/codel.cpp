#include "macc/aqm/codel.hpp"

#include <cmath>

namespace macc::aqm {

CodelQueue::CodelQueue(int capacity, CodelParams params)
    : QueueDisc(capacity), params_(params) {
    params_.validate();
}

sim::SimTime CodelQueue::control_law(sim::SimTime t) const {
    const double spacing = params_.interval_s / std::sqrt(static_cast<double>(count_));
    return t + sim::SimTime::from_seconds(spacing);
}

CodelQueue::Deq CodelQueue::do_dequeue(sim::SimTime now) {
    Deq r;
    if (buffer_.empty()) {
        first_above_ = sim::SimTime{};
        return r;
    }
    const double sojourn = (now - buffer_.front().enqueued_at).seconds();
    if (sojourn < params_.target_s || occupancy() <= 1) {
        // Out of the bad interval; a queue of one packet is not controllable.
        first_above_ = sim::SimTime{};
    } else if (first_above_ == sim::SimTime{}) {
        first_above_ = now + sim::SimTime::from_seconds(params_.interval_s);
    } else if (now >= first_above_) {
        r.ok_to_drop = true;
    }
    r.pkt = pop(now);
    return r;
}

std::optional<sim::Packet> CodelQueue::dequeue(sim::SimTime now) {
    Deq r = do_dequeue(now);
    if (!r.pkt) {
        dropping_ = false;
        return std::nullopt;
    }
    if (dropping_) {
        if (!r.ok_to_drop) {
            dropping_ = false;
        } else {
            while (dropping_ && now >= drop_next_) {
                count_drop(DropCause::Codel);
                ++count_;
                r = do_dequeue(now);
                if (!r.ok_to_drop) {
                    dropping_ = false;
                } else {
                    drop_next_ = control_law(drop_next_);
                }
            }
        }
    } else if (r.ok_to_drop) {
        count_drop(DropCause::Codel);
        r = do_dequeue(now);
        dropping_ = true;
        // Resume near the prior drop rate when the last dropping state
        // ended recently; otherwise start over.
        if ((now - drop_next_).seconds() < params_.interval_s) {
            count_ = count_ > 2 ? count_ - 2 : 1;
        } else {
            count_ = 1;
        }
        drop_next_ = control_law(now);
    }
    return r.pkt;
}

}  // namespace macc::aqm
