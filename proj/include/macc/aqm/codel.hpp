#pragma once

#include <stdexcept>

#include "macc/aqm/queue_disc.hpp"

namespace macc::aqm {

struct CodelParams {
    double target_s = 0.005;
    double interval_s = 0.100;

    void validate() const {
        if (target_s <= 0 || target_s >= interval_s)
            throw std::invalid_argument("codel: need 0 < target < interval");
    }
};

/// Sojourn-time CoDel. Packets are admitted unless the buffer is full;
/// control happens at dequeue: once the minimum sojourn has stayed above
/// target for a full interval, head packets are dropped on a schedule
/// that tightens by 1/sqrt(count).
class CodelQueue : public QueueDisc {
public:
    CodelQueue(int capacity, CodelParams params);

    std::optional<sim::Packet> dequeue(sim::SimTime now) override;

    std::string name() const override { return "codel"; }

    bool dropping() const { return dropping_; }
    std::uint64_t drop_count_state() const { return count_; }

private:
    struct Deq {
        std::optional<sim::Packet> pkt;
        bool ok_to_drop = false;
    };
    Deq do_dequeue(sim::SimTime now);

    sim::SimTime control_law(sim::SimTime t) const;

    CodelParams params_;
    sim::SimTime first_above_;  // 0 = unset
    sim::SimTime drop_next_;
    std::uint64_t count_ = 0;
    bool dropping_ = false;
};

}  // namespace macc::aqm
