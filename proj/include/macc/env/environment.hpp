#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "macc/aqm/rl_queue.hpp"
#include "macc/env/observation.hpp"
#include "macc/env/rewards.hpp"
#include "macc/sim/simulation.hpp"
#include "macc/transport/flow.hpp"

namespace macc::env {

/// Divisors applied to observation components before they enter the state
/// window — network inputs want O(1) magnitudes. Zero means "derive from
/// the topology" (epoch packet budget, path capacity, base RTT, queue
/// drain time). Raw values are always preserved in the step info record.
struct ObsScales {
    double sa = 0.0;
    double bif = 0.0;
    double rtt = 0.0;
    double qlen = 0.0;
    double deq = 0.0;
    double delay = 0.0;
};

struct EnvConfig {
    sim::SimulationConfig sim{};
    int window_k = 5;
    int lag_epochs = 1;
    bool normalized_rewards = true;
    RewardScales reward_scales{};
    ObsScales obs_scales{};

    void validate() const;
};

/// Raw per-epoch measurements: everything needed to recompute both
/// rewards offline and to drive the metrics layer.
struct StepInfo {
    int step = 0;
    double time_s = 0.0;
    // agent 1 inputs (aggregated over the controlled flows)
    double sa_sum = 0.0;
    double bif_sum = 0.0;
    double cwnd_sum = 0.0;
    double srtt_mean_s = 0.0;
    // agent 2 inputs (forward bottleneck queue)
    double queue_len = 0.0;
    double dequeue_rate_pps = 0.0;
    double queue_delay_s = 0.0;
    // episode bookkeeping
    double goodput_mbps = 0.0;
    double rtt_mean_s = 0.0;
    double rtt_min_s = 0.0;
    std::int64_t rtt_samples = 0;
    std::int64_t retransmits = 0;
    std::int64_t timeouts = 0;
    std::uint64_t drops_full = 0;
    std::uint64_t drops_red = 0;
    std::uint64_t drops_rl = 0;
    std::uint64_t drops_codel = 0;
    std::uint64_t corrupted = 0;
    int action1 = 0;
    int action2 = 0;
    double reward1 = 0.0;
    double reward2 = 0.0;

    struct Flow {
        int flow = 0;
        std::int64_t cwnd = 0;
        std::int64_t ssthresh = 0;
        double srtt_s = 0.0;
        std::int64_t segments_acked = 0;
        std::int64_t bytes_in_flight = 0;
        double goodput_mbps = 0.0;
    };
    std::vector<Flow> flows;
};

struct StepResult {
    Eigen::VectorXd state1;
    Eigen::VectorXd state2;
    double reward1 = 0.0;
    double reward2 = 0.0;
    bool done = false;
    StepInfo info;
};

/// Two-agent control surface over the dumbbell simulation. Actions apply
/// at epoch boundaries; the simulator advances one epoch per step; both
/// agents observe lagged history windows and receive their layer's
/// reward.
class Environment {
public:
    explicit Environment(EnvConfig cfg);

    static constexpr int kTransportActions = transport::kTcpActionCount;
    static constexpr int kAqmActions = aqm::kAqmActionCount;

    /// Builds a fresh simulation; histories are zero-filled, so both
    /// returned states are zero vectors.
    std::pair<Eigen::VectorXd, Eigen::VectorXd> reset(std::uint64_t seed);

    /// Applies actions to whichever layers are learned (others ignore
    /// their action), advances one epoch, measures, and rewards.
    StepResult step(int action1, int action2);

    bool done() const { return steps_taken_ >= total_steps_; }
    int steps_taken() const { return steps_taken_; }
    int total_steps() const { return total_steps_; }
    int state_dim() const { return 3 * cfg_.window_k; }

    bool transport_learned() const { return transport_learned_; }
    bool aqm_learned() const { return cfg_.sim.aqm.kind == aqm::AqmKind::Rl; }

    const EnvConfig& config() const { return cfg_; }
    sim::Simulation& simulation() { return *sim_; }

private:
    void derive_obs_scales();
    StepInfo measure(sim::SimTime window_start, sim::SimTime window_end);

    EnvConfig cfg_;
    ObsScales scales_;  // with zeros resolved
    std::unique_ptr<sim::Simulation> sim_;
    StateWindow window1_;
    StateWindow window2_;
    int steps_taken_ = 0;
    int total_steps_ = 0;
    bool transport_learned_ = false;
    std::vector<int> controlled_flows_;  // flows aggregated into agent-1 signals
    std::uint64_t last_corrupted_ = 0;
};

}  // namespace macc::env
