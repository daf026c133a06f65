#pragma once

#include <Eigen/Dense>
#include <vector>

#include "macc/sim/rng.hpp"

namespace macc::rl {

/// Fully connected action-value network: ReLU hidden layers, linear
/// output head. Parameters are double precision throughout so gradient
/// checks against finite differences are meaningful.
class QNetwork {
public:
    QNetwork() = default;

    /// layer_dims = [input, hidden..., output].
    explicit QNetwork(std::vector<int> layer_dims);

    /// Uniform init in +-sqrt(6 / (fan_in + fan_out)).
    static QNetwork glorot(std::vector<int> layer_dims, sim::Rng& rng);

    Eigen::VectorXd forward(const Eigen::VectorXd& input) const;

    /// Activations recorded on the forward pass, consumed by backward().
    struct Trace {
        std::vector<Eigen::VectorXd> inputs;  // inputs[l] feeds layer l
        Eigen::VectorXd output;
    };

    Trace forward_trace(const Eigen::VectorXd& input) const;

    struct Gradients {
        std::vector<Eigen::MatrixXd> dw;
        std::vector<Eigen::VectorXd> db;

        void setZero();
        Gradients& operator+=(const Gradients& rhs);
    };

    Gradients zero_gradients() const;

    /// Backpropagates dL/d(output) through the trace, accumulating into
    /// `grads`.
    void backward(const Trace& trace, const Eigen::VectorXd& grad_output,
                  Gradients& grads) const;

    /// Plain gradient-descent step: p -= lr * dp.
    void apply_gradients(const Gradients& grads, double lr);

    const std::vector<int>& layer_dims() const { return layer_dims_; }
    int input_dim() const { return layer_dims_.front(); }
    int output_dim() const { return layer_dims_.back(); }
    std::size_t layer_count() const { return weights_.size(); }

    std::vector<Eigen::MatrixXd>& weights() { return weights_; }
    std::vector<Eigen::VectorXd>& biases() { return biases_; }
    const std::vector<Eigen::MatrixXd>& weights() const { return weights_; }
    const std::vector<Eigen::VectorXd>& biases() const { return biases_; }

    bool same_shape(const QNetwork& other) const;
    bool equal_parameters(const QNetwork& other) const;
    bool parameters_finite() const;

private:
    std::vector<int> layer_dims_;
    std::vector<Eigen::MatrixXd> weights_;  // weights_[l]: dims[l+1] x dims[l]
    std::vector<Eigen::VectorXd> biases_;
};

}  // namespace macc::rl
