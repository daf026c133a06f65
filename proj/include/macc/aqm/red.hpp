#pragma once

#include <stdexcept>

#include "macc/aqm/queue_disc.hpp"

namespace macc::aqm {

/// Classic Floyd-Jacobson parameters in packet mode. Defaults scale the
/// usual 20%/60% thresholds to a 385-packet buffer.
struct RedParams {
    int min_th = 77;
    int max_th = 231;
    double w_q = 0.002;
    double max_p = 0.1;

    void validate(int capacity) const {
        if (min_th <= 0 || min_th >= max_th || max_th > capacity)
            throw std::invalid_argument("red: need 0 < min_th < max_th <= capacity");
        if (w_q <= 0 || w_q > 1) throw std::invalid_argument("red.w_q must be in (0,1]");
        if (max_p <= 0 || max_p > 1) throw std::invalid_argument("red.max_p must be in (0,1]");
    }
};

/// Random Early Detection, packet-counting mode, with the standard
/// 1/(1 - count*p) inter-drop spreading and idle-time decay of the
/// average.
class RedQueue : public QueueDisc {
public:
    RedQueue(int capacity, RedParams params, double idle_pkt_time_s);

    AdmitResult admit(const sim::Packet& pkt, sim::SimTime now, sim::Rng& rng) override;
    std::optional<sim::Packet> dequeue(sim::SimTime now) override;

    std::string name() const override { return "red"; }

    double avg() const { return avg_; }

    /// Drop probability as a function of the EWMA average; exposed so the
    /// control law can be checked independently of queue dynamics.
    static double drop_probability(double avg, const RedParams& p);

private:
    RedParams params_;
    double idle_pkt_time_s_;  // typical transmission time used for idle decay
    double avg_ = 0.0;
    long count_ = -1;  // packets since the last drop while between thresholds
    bool idle_ = true;
    sim::SimTime idle_since_;
};

}  // namespace macc::aqm
