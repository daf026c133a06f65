#pragma once

#include <stdexcept>

#include "macc/aqm/queue_disc.hpp"

namespace macc::aqm {

/// The two operating points reachable by the learned queue policy. The
/// published pair does not sum to one, so admission uses a single
/// Bernoulli with P(drop) = p_drop / (p_drop + p_enqueue); this keeps
/// both numbers meaningful and preserves their ordering (the a&1 mode
/// drops more aggressively).
struct AqmMode {
    double p_drop = 0.4;
    double p_enqueue = 0.7;

    double normalized_drop_probability() const { return p_drop / (p_drop + p_enqueue); }
};

inline constexpr int kAqmActionCount = 2;

/// Maps an action index onto the mode pair: a&1 selects (0.6, 0.3),
/// otherwise (0.4, 0.7).
AqmMode aqm_mode_for_action(int action);

/// Queue under control of the network-layer agent. A full buffer always
/// drops; otherwise data packets are dropped at random with the current
/// mode's normalized probability. Acks are never dropped at random so the
/// congestion signal stays on the data path.
class RlQueue : public QueueDisc {
public:
    explicit RlQueue(int capacity) : QueueDisc(capacity) {}

    AdmitResult admit(const sim::Packet& pkt, sim::SimTime now, sim::Rng& rng) override;

    std::string name() const override { return "rl"; }

    void set_mode(AqmMode mode) { mode_ = mode; }
    const AqmMode& mode() const { return mode_; }

    /// Applies the agent's epoch action. Actions outside {0,1} are a
    /// configuration error.
    void apply_action(int action);

private:
    AqmMode mode_{};
};

}  // namespace macc::aqm
