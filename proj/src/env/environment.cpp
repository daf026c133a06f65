#include "macc/env/environment.hpp"

#include <cmath>
#include <stdexcept>

namespace macc::env {

void EnvConfig::validate() const {
    sim.validate();
    if (window_k < 1) throw std::invalid_argument("env.window_k must be >= 1");
    if (lag_epochs < 0) throw std::invalid_argument("env.lag_epochs must be >= 0");
}

Environment::Environment(EnvConfig cfg)
    : cfg_(std::move(cfg)),
      window1_(cfg_.window_k, cfg_.lag_epochs),
      window2_(cfg_.window_k, cfg_.lag_epochs) {
    cfg_.validate();

    const auto& topo = cfg_.sim.topo;
    const auto epoch = sim::SimTime::from_seconds(topo.epoch_s);
    const auto duration = sim::SimTime::from_seconds(topo.sim_duration_s);
    total_steps_ = static_cast<int>((duration.ns() + epoch.ns() - 1) / epoch.ns());

    for (int i = 0; i < topo.n_flows; ++i) {
        const auto kind = cfg_.sim.flow_kinds.empty() ? cfg_.sim.transport.kind
                                                      : cfg_.sim.flow_kinds[i];
        if (kind == transport::TransportKind::RlAgent) controlled_flows_.push_back(i);
    }
    transport_learned_ = !controlled_flows_.empty();
    if (!transport_learned_) {
        // Nothing is window-controlled; aggregate every flow for logging.
        for (int i = 0; i < topo.n_flows; ++i) controlled_flows_.push_back(i);
    }

    derive_obs_scales();
    steps_taken_ = total_steps_;  // not usable until reset()
}

void Environment::derive_obs_scales() {
    const auto& topo = cfg_.sim.topo;
    const double rate = topo.bottleneck_link.rate_bps;
    const double pkt_bits = (cfg_.sim.transport.segment_size + sim::kHeaderBytes) * 8.0;
    const double base_rtt =
        2.0 * (2.0 * topo.edge_link.prop_delay_s + topo.bottleneck_link.prop_delay_s);
    const double drain_s = topo.queue_capacity * pkt_bits / rate;

    scales_ = cfg_.obs_scales;
    if (scales_.sa <= 0) scales_.sa = rate * topo.epoch_s / pkt_bits;
    if (scales_.bif <= 0) scales_.bif = rate * base_rtt / 8.0 + topo.queue_capacity * pkt_bits / 8.0;
    if (scales_.rtt <= 0) scales_.rtt = base_rtt + drain_s;
    if (scales_.qlen <= 0) scales_.qlen = topo.queue_capacity;
    if (scales_.deq <= 0) scales_.deq = rate / pkt_bits;
    if (scales_.delay <= 0) scales_.delay = drain_s;
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> Environment::reset(std::uint64_t seed) {
    sim_ = sim::build_dumbbell(cfg_.sim, seed);
    window1_.reset();
    window2_.reset();
    steps_taken_ = 0;
    last_corrupted_ = 0;
    return {window1_.flattened(), window2_.flattened()};
}

StepResult Environment::step(int action1, int action2) {
    if (!sim_) throw std::logic_error("Environment::step before reset");
    if (done()) throw std::logic_error("Environment::step called on a finished episode");

    if (transport_learned_) sim_->apply_tcp_action_all(action1);
    if (aqm_learned()) sim_->apply_aqm_action(action2);

    const auto epoch = sim::SimTime::from_seconds(cfg_.sim.topo.epoch_s);
    const auto duration = sim::SimTime::from_seconds(cfg_.sim.topo.sim_duration_s);
    const sim::SimTime window_start = sim_->now();
    sim::SimTime window_end = epoch * (steps_taken_ + 1);
    if (window_end > duration) window_end = duration;
    sim_->run_until(window_end);
    ++steps_taken_;

    StepResult result;
    result.info = measure(window_start, window_end);
    result.info.step = steps_taken_ - 1;
    result.info.action1 = action1;
    result.info.action2 = action2;

    const RewardScales scales =
        cfg_.normalized_rewards ? cfg_.reward_scales : raw_reward_scales();
    result.reward1 =
        reward1(result.info.sa_sum, result.info.bif_sum, result.info.cwnd_sum, scales);
    result.reward2 = reward2(result.info.dequeue_rate_pps, result.info.queue_delay_s,
                             result.info.queue_len, scales);
    result.info.reward1 = result.reward1;
    result.info.reward2 = result.reward2;

    Observation1 o1{result.info.sa_sum, result.info.bif_sum, result.info.srtt_mean_s};
    Observation2 o2{result.info.queue_len, result.info.dequeue_rate_pps,
                    result.info.queue_delay_s};
    window1_.push(Eigen::Vector3d(o1.sa / scales_.sa, o1.bif / scales_.bif,
                                  o1.rtt_s / scales_.rtt));
    window2_.push(Eigen::Vector3d(o2.queue_len / scales_.qlen,
                                  o2.dequeue_rate_pps / scales_.deq,
                                  o2.delay_s / scales_.delay));

    result.state1 = window1_.flattened();
    result.state2 = window2_.flattened();
    result.done = done();
    return result;
}

StepInfo Environment::measure(sim::SimTime window_start, sim::SimTime window_end) {
    StepInfo info;
    const sim::SimTime window = window_end - window_start;
    info.time_s = window_end.seconds();

    std::int64_t goodput_bytes_total = 0;
    double srtt_sum = 0.0;
    int srtt_count = 0;

    for (int i = 0; i < sim_->n_flows(); ++i) {
        const auto stats = sim_->sender(i).take_epoch_stats();
        const std::int64_t flow_bytes = sim_->receiver(i).take_new_bytes();
        goodput_bytes_total += flow_bytes;

        StepInfo::Flow f;
        f.flow = i;
        f.cwnd = stats.cwnd;
        f.ssthresh = stats.ssthresh;
        f.srtt_s = stats.srtt_s;
        f.segments_acked = stats.segments_acked;
        f.bytes_in_flight = stats.bytes_in_flight;
        f.goodput_mbps = static_cast<double>(flow_bytes) * 8.0 / window.seconds() / 1e6;
        info.flows.push_back(f);

        info.rtt_samples += stats.rtt_samples;
        if (stats.rtt_samples > 0) {
            info.rtt_mean_s += stats.rtt_sum_s;
            if (info.rtt_min_s == 0.0 || stats.rtt_min_s < info.rtt_min_s) {
                info.rtt_min_s = stats.rtt_min_s;
            }
        }
        info.retransmits += stats.retransmits;
        info.timeouts += stats.timeouts;
    }
    if (info.rtt_samples > 0) info.rtt_mean_s /= static_cast<double>(info.rtt_samples);

    for (int i : controlled_flows_) {
        const auto& f = info.flows[i];
        info.sa_sum += static_cast<double>(f.segments_acked);
        info.bif_sum += static_cast<double>(f.bytes_in_flight);
        info.cwnd_sum += static_cast<double>(f.cwnd);
        if (f.srtt_s > 0) {
            srtt_sum += f.srtt_s;
            ++srtt_count;
        }
    }
    info.srtt_mean_s = srtt_count > 0 ? srtt_sum / srtt_count : 0.0;

    const auto qsnap = sim_->bottleneck_queue().measure(window);
    info.queue_len = qsnap.occupancy;
    info.dequeue_rate_pps = qsnap.dequeue_rate_pps;
    info.queue_delay_s = qsnap.mean_sojourn_s;
    info.drops_full = qsnap.drops.full;
    info.drops_red = qsnap.drops.red_early;
    info.drops_rl = qsnap.drops.rl_random;
    info.drops_codel = qsnap.drops.codel;

    info.goodput_mbps = static_cast<double>(goodput_bytes_total) * 8.0 / window.seconds() / 1e6;

    const std::uint64_t corrupted_now = sim_->counters().corrupted;
    info.corrupted = corrupted_now - last_corrupted_;
    last_corrupted_ = corrupted_now;

    return info;
}

}  // namespace macc::env
