#include "macc/env/trainer.hpp"

#include <stdexcept>

namespace macc::env {

namespace {
constexpr std::uint64_t kActionStream = 1;
constexpr std::uint64_t kSampleStream = 2;
constexpr std::uint64_t kInit1Stream = 3;
constexpr std::uint64_t kInit2Stream = 4;
constexpr std::uint64_t kEpisodeStream = 1000;
}  // namespace

Trainer::Trainer(EnvConfig env_cfg, rl::TrainingConfig train_cfg,
                 metrics::RunRecorder& recorder, std::filesystem::path model_dir)
    : env_cfg_(std::move(env_cfg)),
      cfg_(std::move(train_cfg)),
      recorder_(recorder),
      model_dir_(model_dir.empty() ? recorder.dir() : std::move(model_dir)),
      env_(env_cfg_),
      action_rng_(sim::split_seed(cfg_.seed, kActionStream)),
      sample_rng_(sim::split_seed(cfg_.seed, kSampleStream)) {
    cfg_.validate();
    joint_mode_ = cfg_.vdn && learn1() && learn2();
}

std::uint64_t Trainer::episode_seed(std::uint64_t master, int episode) {
    return sim::split_seed(master, kEpisodeStream + static_cast<std::uint64_t>(episode));
}

bool Trainer::learn1() const {
    return env_.transport_learned() && !cfg_.pin_action1.has_value();
}

bool Trainer::learn2() const { return env_.aqm_learned() && !cfg_.pin_action2.has_value(); }

void Trainer::load_or_init_networks() {
    const int in_dim = env_.state_dim();
    auto arch = [&](int out_dim) {
        std::vector<int> dims;
        dims.push_back(in_dim);
        for (int h : cfg_.hidden_dims) dims.push_back(h);
        dims.push_back(out_dim);
        return dims;
    };

    if (learn1() && !net1_) {
        sim::Rng init_rng(sim::split_seed(cfg_.seed, kInit1Stream));
        net1_ = rl::load_or_init((model_dir_ / "agent1.qnet").string(),
                                 arch(Environment::kTransportActions), 1, init_rng);
        target1_ = *net1_;
        replay1_.emplace(cfg_.replay_capacity);
    }
    if (learn2() && !net2_) {
        sim::Rng init_rng(sim::split_seed(cfg_.seed, kInit2Stream));
        net2_ = rl::load_or_init((model_dir_ / "agent2.qnet").string(),
                                 arch(Environment::kAqmActions), 2, init_rng);
        target2_ = *net2_;
        replay2_.emplace(cfg_.replay_capacity);
    }
    if (joint_mode_ && !joint_replay_) {
        joint_replay_.emplace(cfg_.replay_capacity);
    }
}

void Trainer::save_models() {
    if (net1_) rl::save_model(*net1_, 1, (model_dir_ / "agent1.qnet").string());
    if (net2_) rl::save_model(*net2_, 2, (model_dir_ / "agent2.qnet").string());
}

int Trainer::pick_action1(const Eigen::VectorXd& state, std::uint64_t counter, bool greedy) {
    if (cfg_.pin_action1) return *cfg_.pin_action1;
    if (!net1_) return 0;
    if (!greedy && cfg_.sampling == rl::ActionSampling::Boltzmann) {
        return rl::select_action_boltzmann(*net1_, state, cfg_.temperature, action_rng_);
    }
    return rl::select_action(*net1_, state, cfg_.schedule(), counter, action_rng_, greedy);
}

int Trainer::pick_action2(const Eigen::VectorXd& state, std::uint64_t counter, bool greedy) {
    if (cfg_.pin_action2) return *cfg_.pin_action2;
    if (!net2_) return 0;
    if (!greedy && cfg_.sampling == rl::ActionSampling::Boltzmann) {
        return rl::select_action_boltzmann(*net2_, state, cfg_.temperature, action_rng_);
    }
    return rl::select_action(*net2_, state, cfg_.schedule(), counter, action_rng_, greedy);
}

void Trainer::sync_targets_if_due() {
    const int period = cfg_.target_sync;
    if (period <= 1 || updates_done_ % period == 0) {
        if (net1_) target1_ = *net1_;
        if (net2_) target2_ = *net2_;
    }
}

TrainSummary Trainer::train() {
    load_or_init_networks();

    TrainSummary summary;
    if (net1_) summary.model1_path = model_dir_ / "agent1.qnet";
    if (net2_) summary.model2_path = model_dir_ / "agent2.qnet";

    try {
        for (int episode = 0; episode < cfg_.episodes; ++episode) {
            auto [s1, s2] = env_.reset(episode_seed(cfg_.seed, episode));
            metrics::EpisodeAccumulator acc;

            while (!env_.done()) {
                const std::uint64_t c1 =
                    joint_mode_ ? joint_replay_->counter()
                                : (replay1_ ? replay1_->counter() : 0);
                const std::uint64_t c2 =
                    joint_mode_ ? joint_replay_->counter()
                                : (replay2_ ? replay2_->counter() : 0);
                const int a1 = learn1() ? pick_action1(s1, c1, false)
                                        : (cfg_.pin_action1 ? *cfg_.pin_action1 : 0);
                const int a2 = learn2() ? pick_action2(s2, c2, false)
                                        : (cfg_.pin_action2 ? *cfg_.pin_action2 : 0);

                StepResult res = env_.step(a1, a2);

                if (joint_mode_) {
                    joint_replay_->push(rl::JointExperience{s1, s2, a1, a2,
                                                            res.reward1 + res.reward2,
                                                            res.state1, res.state2, res.done});
                    if (joint_replay_->ready(cfg_.minibatch)) {
                        const auto batch =
                            joint_replay_->sample(cfg_.minibatch, sample_rng_);
                        const double loss =
                            rl::vdn_update(*net1_, *net2_, *target1_, *target2_, batch,
                                           cfg_.gamma, cfg_.lr);
                        acc.add_loss(loss);
                        ++updates_done_;
                        sync_targets_if_due();
                    }
                } else {
                    if (learn1()) {
                        replay1_->push(
                            rl::Experience{s1, a1, res.reward1, res.state1, res.done});
                        if (replay1_->ready(cfg_.minibatch)) {
                            const auto batch =
                                replay1_->sample(cfg_.minibatch, sample_rng_);
                            acc.add_loss(rl::td_update(*net1_, *target1_, batch, cfg_.gamma,
                                                       cfg_.lr));
                            ++updates_done_;
                            sync_targets_if_due();
                        }
                    }
                    if (learn2()) {
                        replay2_->push(
                            rl::Experience{s2, a2, res.reward2, res.state2, res.done});
                        if (replay2_->ready(cfg_.minibatch)) {
                            const auto batch =
                                replay2_->sample(cfg_.minibatch, sample_rng_);
                            acc.add_loss(rl::td_update(*net2_, *target2_, batch, cfg_.gamma,
                                                       cfg_.lr));
                            ++updates_done_;
                            sync_targets_if_due();
                        }
                    }
                }

                recorder_.record_step(episode, res.info);
                acc.add(res.info);
                s1 = std::move(res.state1);
                s2 = std::move(res.state2);
            }

            const auto m = acc.finish(episode);
            recorder_.record_episode(m);
            summary.episodes.push_back(m);
            save_models();
        }
    } catch (...) {
        recorder_.flush();  // keep partial metrics on divergence
        throw;
    }

    if (cfg_.episodes == 0) save_models();
    recorder_.flush();
    return summary;
}

metrics::EpisodeMetrics Trainer::evaluate(int episode_tag, std::uint64_t sim_seed) {
    load_or_init_networks();
    auto [s1, s2] = env_.reset(sim_seed);
    metrics::EpisodeAccumulator acc;
    while (!env_.done()) {
        const int a1 = pick_action1(s1, 0, true);
        const int a2 = pick_action2(s2, 0, true);
        StepResult res = env_.step(a1, a2);
        recorder_.record_step(episode_tag, res.info);
        acc.add(res.info);
        s1 = std::move(res.state1);
        s2 = std::move(res.state2);
    }
    const auto m = acc.finish(episode_tag);
    recorder_.record_episode(m);
    recorder_.flush();
    return m;
}

metrics::EpisodeMetrics run_plain_episode(const EnvConfig& cfg, std::uint64_t seed,
                                          metrics::RunRecorder& recorder, int episode_tag) {
    Environment env(cfg);
    env.reset(seed);
    metrics::EpisodeAccumulator acc;
    while (!env.done()) {
        StepResult res = env.step(0, 0);
        recorder.record_step(episode_tag, res.info);
        acc.add(res.info);
    }
    const auto m = acc.finish(episode_tag);
    recorder.record_episode(m);
    recorder.flush();
    return m;
}

}  // namespace macc::env
