#include "macc/aqm/rl_queue.hpp"

namespace macc::aqm {

AqmMode aqm_mode_for_action(int action) {
    if (action & 1) return AqmMode{0.6, 0.3};
    return AqmMode{0.4, 0.7};
}

void RlQueue::apply_action(int action) {
    if (action < 0 || action >= kAqmActionCount) {
        throw std::invalid_argument("aqm action must be in {0,1}, got " +
                                    std::to_string(action));
    }
    mode_ = aqm_mode_for_action(action);
}

AdmitResult RlQueue::admit(const sim::Packet& pkt, sim::SimTime now, sim::Rng& rng) {
    if (occupancy() >= capacity()) {
        count_drop(DropCause::Full);
        return AdmitResult::Dropped;
    }
    if (pkt.kind == sim::PacketKind::Data &&
        rng.bernoulli(mode_.normalized_drop_probability())) {
        count_drop(DropCause::RlRandom);
        return AdmitResult::Dropped;
    }
    push(pkt, now);
    return AdmitResult::Enqueued;
}

}  // namespace macc::aqm
