#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "macc/sim/rng.hpp"

namespace macc::rl {

/// One transition for a single learner.
struct Experience {
    Eigen::VectorXd state;
    int action = 0;
    double reward = 0.0;
    Eigen::VectorXd next_state;
    bool terminal = false;
};

/// Joint transition for cooperative training: both agents' views plus the
/// team reward.
struct JointExperience {
    Eigen::VectorXd state1, state2;
    int action1 = 0, action2 = 0;
    double team_reward = 0.0;
    Eigen::VectorXd next_state1, next_state2;
    bool terminal = false;
};

/// Fixed-capacity ring buffer with uniform sampling without replacement.
/// `counter()` is the total number of insertions ever made — it keeps
/// counting past capacity and drives the exploration schedule.
template <typename T>
class ReplayMemory {
public:
    explicit ReplayMemory(std::size_t capacity) : capacity_(capacity) {
        if (capacity_ == 0) throw std::invalid_argument("replay capacity must be >= 1");
        buffer_.reserve(capacity_);
    }

    void push(T item) {
        if (buffer_.size() < capacity_) {
            buffer_.push_back(std::move(item));
        } else {
            buffer_[write_pos_] = std::move(item);
        }
        write_pos_ = (write_pos_ + 1) % capacity_;
        ++counter_;
    }

    std::size_t size() const { return buffer_.size(); }
    std::size_t capacity() const { return capacity_; }
    std::uint64_t counter() const { return counter_; }
    bool ready(std::size_t minibatch) const { return buffer_.size() >= minibatch; }

    /// Draws n distinct items uniformly (partial Fisher-Yates over an
    /// index vector). Throws when fewer than n items are stored; callers
    /// treat that as "not ready" and skip the update.
    std::vector<T> sample(std::size_t n, sim::Rng& rng) const {
        if (n > buffer_.size()) {
            throw std::out_of_range("ReplayMemory::sample: not enough experiences");
        }
        std::vector<std::size_t> idx(buffer_.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        std::vector<T> out;
        out.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t j =
                i + static_cast<std::size_t>(rng.uniform_int(idx.size() - i));
            std::swap(idx[i], idx[j]);
            out.push_back(buffer_[idx[i]]);
        }
        return out;
    }

    const T& at(std::size_t i) const { return buffer_.at(i); }

private:
    std::size_t capacity_;
    std::vector<T> buffer_;
    std::size_t write_pos_ = 0;
    std::uint64_t counter_ = 0;
};

}  // namespace macc::rl
