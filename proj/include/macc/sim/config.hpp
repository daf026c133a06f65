#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace macc::sim {

struct LinkConfig {
    double rate_bps = 20e6;
    double prop_delay_s = 0.1;
    double per = 0.0;  // per-packet corruption probability, data packets only

    void validate(const std::string& name) const {
        if (rate_bps <= 0) throw std::invalid_argument(name + ".rate_bps must be > 0");
        if (prop_delay_s < 0) throw std::invalid_argument(name + ".prop_delay_s must be >= 0");
        if (per < 0 || per > 1) throw std::invalid_argument(name + ".per must be in [0,1]");
    }
};

/// Dumbbell scenario: N senders and N receivers joined by two routers
/// sharing a single bottleneck. Defaults are the reference scenario:
/// 20 Mbps / 100 ms / 3% PER bottleneck, 385-packet queues, 0.2 s control
/// epoch, 2000 s of simulated time.
struct TopologyConfig {
    int n_flows = 4;
    LinkConfig edge_link{100e6, 0.001, 0.0};
    LinkConfig bottleneck_link{20e6, 0.1, 0.03};
    int queue_capacity = 385;
    double sim_duration_s = 2000.0;
    double epoch_s = 0.2;

    void validate() const {
        if (n_flows < 1) throw std::invalid_argument("topology.n_flows must be >= 1");
        if (queue_capacity < 1) throw std::invalid_argument("topology.queue_capacity must be >= 1");
        if (epoch_s <= 0) throw std::invalid_argument("topology.epoch_s must be > 0");
        if (sim_duration_s < epoch_s)
            throw std::invalid_argument("topology.sim_duration_s must be >= epoch_s");
        edge_link.validate("edge_link");
        bottleneck_link.validate("bottleneck_link");
    }
};

}  // namespace macc::sim
