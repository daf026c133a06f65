#pragma once

#include <span>
#include <vector>

#include "macc/rl/network.hpp"
#include "macc/rl/replay.hpp"

namespace macc::rl {

/// Sum of the agents' chosen-action values — the joint action value under
/// additive decomposition.
double vdn_joint_q(std::span<const double> per_agent_q);

/// Mean-square TD loss of `net` against targets
///   y = r + gamma * max_a' Q_target(s', a')   (y = r on terminal)
/// and its parameter gradients. Does not modify the network.
struct TdGradients {
    double loss = 0.0;
    QNetwork::Gradients grads;
};

TdGradients td_gradients(const QNetwork& net, const QNetwork& target_net,
                         std::span<const Experience> batch, double gamma);

/// One gradient-descent step on the TD loss. Returns the pre-step loss.
/// A non-finite loss throws — divergence must stop the run, not corrupt
/// the weights.
double td_update(QNetwork& net, const QNetwork& target_net, std::span<const Experience> batch,
                 double gamma, double lr);

/// Joint cooperative loss: mean over the batch of
///   (sum_i Q_i(s_i, a_i) - [r_team + gamma * sum_i max_a' Qtarget_i(s'_i, a')])^2
/// with the shared error backpropagated additively into every agent.
struct VdnGradients {
    double loss = 0.0;
    std::vector<QNetwork::Gradients> per_agent;
};

VdnGradients vdn_gradients(const QNetwork& net1, const QNetwork& net2,
                           const QNetwork& target1, const QNetwork& target2,
                           std::span<const JointExperience> batch, double gamma);

double vdn_update(QNetwork& net1, QNetwork& net2, const QNetwork& target1,
                  const QNetwork& target2, std::span<const JointExperience> batch, double gamma,
                  double lr);

}  // namespace macc::rl
