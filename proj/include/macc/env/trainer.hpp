#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <vector>

#include "macc/env/environment.hpp"
#include "macc/metrics/recorder.hpp"
#include "macc/rl/learning.hpp"
#include "macc/rl/model_io.hpp"
#include "macc/rl/training_config.hpp"

namespace macc::env {

struct TrainSummary {
    std::vector<metrics::EpisodeMetrics> episodes;
    std::filesystem::path model1_path;  // empty when the layer is not learned
    std::filesystem::path model2_path;
};

/// Runs the joint (or independent) training loop over the environment:
/// reload-or-initialize the networks, episode loop of act/store/update,
/// models and metrics saved after every episode. Model files live in the
/// recorder's directory as agent1.qnet / agent2.qnet.
class Trainer {
public:
    /// Models are read from and written to `model_dir` (defaults to the
    /// recorder's directory when empty).
    Trainer(EnvConfig env_cfg, rl::TrainingConfig train_cfg, metrics::RunRecorder& recorder,
            std::filesystem::path model_dir = {});

    TrainSummary train();

    /// One fully greedy episode with learning and exploration off; the
    /// model files are read, never written. Episode rows are tagged with
    /// `episode_tag` in the recorder.
    metrics::EpisodeMetrics evaluate(int episode_tag, std::uint64_t sim_seed);

    /// Deterministic per-episode simulation seed derived from the master.
    static std::uint64_t episode_seed(std::uint64_t master, int episode);

    const rl::QNetwork* agent1() const { return net1_ ? &*net1_ : nullptr; }
    const rl::QNetwork* agent2() const { return net2_ ? &*net2_ : nullptr; }

private:
    bool learn1() const;  // transport layer actually learning
    bool learn2() const;
    void load_or_init_networks();
    void save_models();
    void sync_targets_if_due();
    int pick_action1(const Eigen::VectorXd& state, std::uint64_t counter, bool greedy);
    int pick_action2(const Eigen::VectorXd& state, std::uint64_t counter, bool greedy);

    EnvConfig env_cfg_;
    rl::TrainingConfig cfg_;
    metrics::RunRecorder& recorder_;
    std::filesystem::path model_dir_;
    Environment env_;

    std::optional<rl::QNetwork> net1_, target1_;
    std::optional<rl::QNetwork> net2_, target2_;

    std::optional<rl::ReplayMemory<rl::JointExperience>> joint_replay_;
    std::optional<rl::ReplayMemory<rl::Experience>> replay1_, replay2_;

    sim::Rng action_rng_;
    sim::Rng sample_rng_;
    std::int64_t updates_done_ = 0;
    bool joint_mode_ = false;
};

/// Episode of pure simulation for rule-based cells: no agents, actions
/// ignored, metrics recorded through the same pipeline.
metrics::EpisodeMetrics run_plain_episode(const EnvConfig& cfg, std::uint64_t seed,
                                          metrics::RunRecorder& recorder, int episode_tag);

}  // namespace macc::env
