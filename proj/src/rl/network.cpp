#include "macc/rl/network.hpp"

#include <cmath>
#include <stdexcept>

namespace macc::rl {

QNetwork::QNetwork(std::vector<int> layer_dims) : layer_dims_(std::move(layer_dims)) {
    if (layer_dims_.size() < 2) {
        throw std::invalid_argument("QNetwork needs at least input and output dims");
    }
    for (std::size_t l = 0; l + 1 < layer_dims_.size(); ++l) {
        if (layer_dims_[l] <= 0 || layer_dims_[l + 1] <= 0) {
            throw std::invalid_argument("QNetwork layer dims must be positive");
        }
        weights_.emplace_back(Eigen::MatrixXd::Zero(layer_dims_[l + 1], layer_dims_[l]));
        biases_.emplace_back(Eigen::VectorXd::Zero(layer_dims_[l + 1]));
    }
}

QNetwork QNetwork::glorot(std::vector<int> layer_dims, sim::Rng& rng) {
    QNetwork net(std::move(layer_dims));
    for (std::size_t l = 0; l < net.weights_.size(); ++l) {
        const double fan_in = static_cast<double>(net.layer_dims_[l]);
        const double fan_out = static_cast<double>(net.layer_dims_[l + 1]);
        const double bound = std::sqrt(6.0 / (fan_in + fan_out));
        auto& w = net.weights_[l];
        for (Eigen::Index i = 0; i < w.rows(); ++i)
            for (Eigen::Index j = 0; j < w.cols(); ++j) w(i, j) = rng.uniform(-bound, bound);
        // Biases start at zero.
    }
    return net;
}

Eigen::VectorXd QNetwork::forward(const Eigen::VectorXd& input) const {
    if (input.size() != input_dim()) {
        throw std::invalid_argument("QNetwork::forward: input dim mismatch");
    }
    Eigen::VectorXd h = input;
    for (std::size_t l = 0; l < weights_.size(); ++l) {
        h = (weights_[l] * h + biases_[l]).eval();
        if (l + 1 < weights_.size()) h = h.cwiseMax(0.0);
    }
    return h;
}

QNetwork::Trace QNetwork::forward_trace(const Eigen::VectorXd& input) const {
    if (input.size() != input_dim()) {
        throw std::invalid_argument("QNetwork::forward_trace: input dim mismatch");
    }
    Trace t;
    t.inputs.reserve(weights_.size());
    Eigen::VectorXd h = input;
    for (std::size_t l = 0; l < weights_.size(); ++l) {
        t.inputs.push_back(h);
        h = (weights_[l] * h + biases_[l]).eval();
        if (l + 1 < weights_.size()) h = h.cwiseMax(0.0);
    }
    t.output = h;
    return t;
}

void QNetwork::Gradients::setZero() {
    for (auto& m : dw) m.setZero();
    for (auto& v : db) v.setZero();
}

QNetwork::Gradients& QNetwork::Gradients::operator+=(const Gradients& rhs) {
    for (std::size_t l = 0; l < dw.size(); ++l) {
        dw[l] += rhs.dw[l];
        db[l] += rhs.db[l];
    }
    return *this;
}

QNetwork::Gradients QNetwork::zero_gradients() const {
    Gradients g;
    for (std::size_t l = 0; l < weights_.size(); ++l) {
        g.dw.emplace_back(Eigen::MatrixXd::Zero(weights_[l].rows(), weights_[l].cols()));
        g.db.emplace_back(Eigen::VectorXd::Zero(biases_[l].size()));
    }
    return g;
}

void QNetwork::backward(const Trace& trace, const Eigen::VectorXd& grad_output,
                        Gradients& grads) const {
    // delta starts as dL/d(pre-activation) of the linear head.
    Eigen::VectorXd delta = grad_output;
    for (std::size_t l = weights_.size(); l-- > 0;) {
        grads.dw[l] += delta * trace.inputs[l].transpose();
        grads.db[l] += delta;
        if (l > 0) {
            // ReLU gate: layer l's input is layer l-1's post-activation.
            const Eigen::VectorXd gate =
                (trace.inputs[l].array() > 0.0).cast<double>().matrix();
            delta = (weights_[l].transpose() * delta).cwiseProduct(gate);
        }
    }
}

void QNetwork::apply_gradients(const Gradients& grads, double lr) {
    for (std::size_t l = 0; l < weights_.size(); ++l) {
        weights_[l] -= lr * grads.dw[l];
        biases_[l] -= lr * grads.db[l];
    }
}

bool QNetwork::same_shape(const QNetwork& other) const {
    return layer_dims_ == other.layer_dims_;
}

bool QNetwork::equal_parameters(const QNetwork& other) const {
    if (!same_shape(other)) return false;
    for (std::size_t l = 0; l < weights_.size(); ++l) {
        if (weights_[l] != other.weights_[l] || biases_[l] != other.biases_[l]) return false;
    }
    return true;
}

bool QNetwork::parameters_finite() const {
    for (const auto& w : weights_)
        if (!w.allFinite()) return false;
    for (const auto& b : biases_)
        if (!b.allFinite()) return false;
    return true;
}

}  // namespace macc::rl
