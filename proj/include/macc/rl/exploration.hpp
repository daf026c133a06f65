#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>

#include <Eigen/Dense>

#include "macc/rl/network.hpp"
#include "macc/sim/rng.hpp"

namespace macc::rl {

/// Exploration probability as a function of how many experiences have
/// been stored. The decaying schedule is 0.99^counter with the exponent
/// clamped to its stated [0, 2000] range; the constant alternative keeps
/// a fixed rate.
struct ExplorationSchedule {
    enum class Mode { Decay, Constant };

    Mode mode = Mode::Decay;
    double constant_eps = 0.1;
    std::uint64_t counter_clamp = 2000;

    double p_exploring(std::uint64_t memory_counter) const {
        if (mode == Mode::Constant) return constant_eps;
        const auto c = std::min(memory_counter, counter_clamp);
        return std::pow(0.99, static_cast<double>(c));
    }
};

/// Lowest index among the maxima.
inline int argmax_low(const Eigen::VectorXd& q) {
    int best = 0;
    for (int i = 1; i < q.size(); ++i) {
        if (q(i) > q(best)) best = i;
    }
    return best;
}

/// Epsilon-greedy: explore uniformly with probability
/// schedule.p_exploring(memory_counter), otherwise exploit the network's
/// argmax (ties broken toward the lowest index). force_greedy skips the
/// exploration draw entirely (online evaluation).
inline int select_action(const QNetwork& net, const Eigen::VectorXd& state,
                         const ExplorationSchedule& schedule, std::uint64_t memory_counter,
                         sim::Rng& rng, bool force_greedy = false) {
    if (!force_greedy && rng.bernoulli(schedule.p_exploring(memory_counter))) {
        return static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(net.output_dim())));
    }
    return argmax_low(net.forward(state));
}

/// Boltzmann alternative: samples an action from softmax(Q / temperature).
/// Reproduces the probabilities-at-the-output reading of the policy.
inline int select_action_boltzmann(const QNetwork& net, const Eigen::VectorXd& state,
                                   double temperature, sim::Rng& rng) {
    Eigen::VectorXd q = net.forward(state) / std::max(temperature, 1e-12);
    const Eigen::VectorXd p = (q.array() - q.maxCoeff()).exp();
    const double z = p.sum();
    double u = rng.uniform01() * z;
    for (int i = 0; i < p.size(); ++i) {
        u -= p(i);
        if (u <= 0.0) return i;
    }
    return static_cast<int>(p.size()) - 1;
}

}  // namespace macc::rl
