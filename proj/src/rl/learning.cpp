#include "macc/rl/learning.hpp"

#include <cmath>
#include <stdexcept>

namespace macc::rl {

double vdn_joint_q(std::span<const double> per_agent_q) {
    if (per_agent_q.empty()) {
        throw std::invalid_argument("vdn_joint_q: need at least one agent");
    }
    double sum = 0.0;
    for (double q : per_agent_q) sum += q;
    return sum;
}

TdGradients td_gradients(const QNetwork& net, const QNetwork& target_net,
                         std::span<const Experience> batch, double gamma) {
    if (batch.empty()) throw std::invalid_argument("td_gradients: empty batch");
    if (!net.same_shape(target_net)) {
        throw std::invalid_argument("td_gradients: net/target architecture mismatch");
    }

    TdGradients out;
    out.grads = net.zero_gradients();
    const double inv_n = 1.0 / static_cast<double>(batch.size());

    for (const Experience& e : batch) {
        double y = e.reward;
        if (!e.terminal) {
            y += gamma * target_net.forward(e.next_state).maxCoeff();
        }
        const auto trace = net.forward_trace(e.state);
        const double err = trace.output(e.action) - y;
        out.loss += err * err * inv_n;

        Eigen::VectorXd grad_out = Eigen::VectorXd::Zero(net.output_dim());
        grad_out(e.action) = 2.0 * err * inv_n;
        net.backward(trace, grad_out, out.grads);
    }
    return out;
}

double td_update(QNetwork& net, const QNetwork& target_net, std::span<const Experience> batch,
                 double gamma, double lr) {
    TdGradients g = td_gradients(net, target_net, batch, gamma);
    if (!std::isfinite(g.loss)) {
        throw std::runtime_error("td_update: non-finite loss, run diverged");
    }
    net.apply_gradients(g.grads, lr);
    return g.loss;
}

VdnGradients vdn_gradients(const QNetwork& net1, const QNetwork& net2,
                           const QNetwork& target1, const QNetwork& target2,
                           std::span<const JointExperience> batch, double gamma) {
    if (batch.empty()) throw std::invalid_argument("vdn_gradients: empty batch");

    VdnGradients out;
    out.per_agent.push_back(net1.zero_gradients());
    out.per_agent.push_back(net2.zero_gradients());
    const double inv_n = 1.0 / static_cast<double>(batch.size());

    for (const JointExperience& e : batch) {
        double y = e.team_reward;
        if (!e.terminal) {
            y += gamma * (target1.forward(e.next_state1).maxCoeff() +
                          target2.forward(e.next_state2).maxCoeff());
        }
        const auto trace1 = net1.forward_trace(e.state1);
        const auto trace2 = net2.forward_trace(e.state2);
        const double joint = trace1.output(e.action1) + trace2.output(e.action2);
        const double err = joint - y;
        out.loss += err * err * inv_n;

        // The summed head means both agents see the same error signal.
        Eigen::VectorXd g1 = Eigen::VectorXd::Zero(net1.output_dim());
        g1(e.action1) = 2.0 * err * inv_n;
        net1.backward(trace1, g1, out.per_agent[0]);

        Eigen::VectorXd g2 = Eigen::VectorXd::Zero(net2.output_dim());
        g2(e.action2) = 2.0 * err * inv_n;
        net2.backward(trace2, g2, out.per_agent[1]);
    }
    return out;
}

double vdn_update(QNetwork& net1, QNetwork& net2, const QNetwork& target1,
                  const QNetwork& target2, std::span<const JointExperience> batch, double gamma,
                  double lr) {
    VdnGradients g = vdn_gradients(net1, net2, target1, target2, batch, gamma);
    if (!std::isfinite(g.loss)) {
        throw std::runtime_error("vdn_update: non-finite loss, run diverged");
    }
    net1.apply_gradients(g.per_agent[0], lr);
    net2.apply_gradients(g.per_agent[1], lr);
    return g.loss;
}

}  // namespace macc::rl
