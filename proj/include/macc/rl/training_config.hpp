#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "macc/rl/exploration.hpp"

namespace macc::rl {

enum class ActionSampling { EpsilonGreedy, Boltzmann };

struct TrainingConfig {
    double gamma = 0.9;
    /// The reference table lists 0.95, which diverges instantly under
    /// plain gradient descent on an MLP; it stays reachable via config.
    double lr = 1e-3;
    int minibatch = 32;
    int episodes = 10;
    std::size_t replay_capacity = 2000;
    /// Target net refresh period in updates; 0 syncs every update.
    int target_sync = 100;
    std::vector<int> hidden_dims = {64, 64};
    ExplorationSchedule::Mode epsilon_mode = ExplorationSchedule::Mode::Decay;
    double epsilon_constant = 0.1;
    ActionSampling sampling = ActionSampling::EpsilonGreedy;
    double temperature = 1.0;
    /// Weighing parameter carried by the reference configuration; kept
    /// for experimentation, not used by the default update rule.
    double beta = 0.8;
    std::uint64_t seed = 1;
    /// Joint training on the summed team reward when both layers learn;
    /// false trains each learner independently on its own reward.
    bool vdn = true;
    /// Pin a layer's action instead of learning it (ablations).
    std::optional<int> pin_action1;
    std::optional<int> pin_action2;

    void validate() const {
        if (gamma <= 0 || gamma >= 1) throw std::invalid_argument("train.gamma must be in (0,1)");
        if (lr <= 0) throw std::invalid_argument("train.lr must be > 0");
        if (minibatch < 1) throw std::invalid_argument("train.minibatch must be >= 1");
        if (episodes < 0) throw std::invalid_argument("train.episodes must be >= 0");
        if (replay_capacity < 1) throw std::invalid_argument("train.replay_capacity must be >= 1");
        if (target_sync < 0) throw std::invalid_argument("train.target_sync must be >= 0");
        for (int h : hidden_dims)
            if (h < 1) throw std::invalid_argument("train.net_arch dims must be >= 1");
    }

    ExplorationSchedule schedule() const {
        ExplorationSchedule s;
        s.mode = epsilon_mode;
        s.constant_eps = epsilon_constant;
        return s;
    }
};

}  // namespace macc::rl
