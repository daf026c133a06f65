#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "macc/env/environment.hpp"
#include "macc/metrics/stats.hpp"

namespace macc::metrics {

/// Shortest round-trip decimal form; parsing it back yields the exact
/// double, which is what makes aggregates recomputable from the CSVs.
std::string format_double(double v);

/// Episode-level aggregates. Every field is recomputable from the
/// emitted per-epoch series.
struct EpisodeMetrics {
    int episode = 0;
    int steps = 0;
    double mean_goodput_mbps = 0.0;
    std::optional<double> mean_rtt_s;  // absent when no samples
    std::int64_t rtt_samples = 0;
    double mad_cwnd = 0.0;
    double mad_queue_len = 0.0;
    double mean_queue_len = 0.0;
    double total_reward1 = 0.0;
    double total_reward2 = 0.0;
    std::uint64_t drops_full = 0;
    std::uint64_t drops_red = 0;
    std::uint64_t drops_rl = 0;
    std::uint64_t drops_codel = 0;
    std::uint64_t corrupted = 0;
    double mean_loss = 0.0;
    std::int64_t updates = 0;
};

/// Builds episode aggregates incrementally from step records.
class EpisodeAccumulator {
public:
    void add(const env::StepInfo& info);
    void add_loss(double loss);
    EpisodeMetrics finish(int episode) const;

    const std::vector<double>& cwnd_series() const { return cwnd_series_; }
    const std::vector<double>& queue_series() const { return queue_series_; }

private:
    int steps_ = 0;
    double goodput_sum_ = 0.0;
    double rtt_weighted_sum_ = 0.0;
    std::int64_t rtt_samples_ = 0;
    std::vector<double> cwnd_series_;
    std::vector<double> queue_series_;
    double reward1_sum_ = 0.0;
    double reward2_sum_ = 0.0;
    std::uint64_t drops_full_ = 0, drops_red_ = 0, drops_rl_ = 0, drops_codel_ = 0;
    std::uint64_t corrupted_ = 0;
    double loss_sum_ = 0.0;
    std::int64_t updates_ = 0;
};

inline constexpr const char* kEpochCsvHeader =
    "episode,step,time_s,goodput_mbps,rtt_mean_s,rtt_min_s,rtt_samples,sa_sum,bif_sum,"
    "cwnd_sum,srtt_mean_s,queue_len,dequeue_rate_pps,queue_delay_s,drops_full,drops_red,"
    "drops_rl,drops_codel,corrupted,retransmits,timeouts,action1,action2,reward1,reward2";

inline constexpr const char* kFlowCsvHeader =
    "episode,step,flow,cwnd,ssthresh,srtt_s,segments_acked,bytes_in_flight,goodput_mbps";

inline constexpr const char* kEpisodeCsvHeader =
    "episode,steps,mean_goodput_mbps,mean_rtt_s,rtt_samples,mad_cwnd,mad_queue_len,"
    "mean_queue_len,total_reward1,total_reward2,drops_full,drops_red,drops_rl,drops_codel,"
    "corrupted,mean_loss,updates";

/// Streams one run's outputs: epochs.csv, flows.csv, episodes.csv and
/// (optionally) info.jsonl with the raw step records.
class RunRecorder {
public:
    RunRecorder(const std::filesystem::path& dir, bool write_info_records);

    void record_step(int episode, const env::StepInfo& info);
    void record_episode(const EpisodeMetrics& m);
    void flush();

    const std::filesystem::path& dir() const { return dir_; }

private:
    std::filesystem::path dir_;
    std::ofstream epochs_;
    std::ofstream flows_;
    std::ofstream episodes_;
    std::ofstream info_;
    bool write_info_;
};

}  // namespace macc::metrics
