#include "macc/metrics/recorder.hpp"

#include <charconv>
#include <stdexcept>

#include <json.hpp>

namespace macc::metrics {

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{}) throw std::runtime_error("format_double failed");
    return std::string(buf, ptr);
}

void EpisodeAccumulator::add(const env::StepInfo& info) {
    ++steps_;
    goodput_sum_ += info.goodput_mbps;
    if (info.rtt_samples > 0) {
        rtt_weighted_sum_ += info.rtt_mean_s * static_cast<double>(info.rtt_samples);
        rtt_samples_ += info.rtt_samples;
    }
    cwnd_series_.push_back(info.cwnd_sum);
    queue_series_.push_back(info.queue_len);
    reward1_sum_ += info.reward1;
    reward2_sum_ += info.reward2;
    drops_full_ += info.drops_full;
    drops_red_ += info.drops_red;
    drops_rl_ += info.drops_rl;
    drops_codel_ += info.drops_codel;
    corrupted_ += info.corrupted;
}

void EpisodeAccumulator::add_loss(double loss) {
    loss_sum_ += loss;
    ++updates_;
}

EpisodeMetrics EpisodeAccumulator::finish(int episode) const {
    EpisodeMetrics m;
    m.episode = episode;
    m.steps = steps_;
    m.mean_goodput_mbps = steps_ > 0 ? goodput_sum_ / steps_ : 0.0;
    if (rtt_samples_ > 0) {
        m.mean_rtt_s = rtt_weighted_sum_ / static_cast<double>(rtt_samples_);
    }
    m.rtt_samples = rtt_samples_;
    if (steps_ > 0) {
        const auto cwnd = Eigen::Map<const Eigen::VectorXd>(cwnd_series_.data(),
                                                            static_cast<Eigen::Index>(steps_));
        const auto qlen = Eigen::Map<const Eigen::VectorXd>(queue_series_.data(),
                                                            static_cast<Eigen::Index>(steps_));
        m.mad_cwnd = mad(cwnd);
        m.mad_queue_len = mad(qlen);
        m.mean_queue_len = qlen.mean();
    }
    m.total_reward1 = reward1_sum_;
    m.total_reward2 = reward2_sum_;
    m.drops_full = drops_full_;
    m.drops_red = drops_red_;
    m.drops_rl = drops_rl_;
    m.drops_codel = drops_codel_;
    m.corrupted = corrupted_;
    m.mean_loss = updates_ > 0 ? loss_sum_ / static_cast<double>(updates_) : 0.0;
    m.updates = updates_;
    return m;
}

RunRecorder::RunRecorder(const std::filesystem::path& dir, bool write_info_records)
    : dir_(dir), write_info_(write_info_records) {
    std::filesystem::create_directories(dir_);
    epochs_.open(dir_ / "epochs.csv", std::ios::trunc);
    flows_.open(dir_ / "flows.csv", std::ios::trunc);
    episodes_.open(dir_ / "episodes.csv", std::ios::trunc);
    if (!epochs_ || !flows_ || !episodes_) {
        throw std::runtime_error("cannot open metrics CSVs under " + dir_.string());
    }
    epochs_ << kEpochCsvHeader << '\n';
    flows_ << kFlowCsvHeader << '\n';
    episodes_ << kEpisodeCsvHeader << '\n';
    if (write_info_) {
        info_.open(dir_ / "info.jsonl", std::ios::trunc);
        if (!info_) throw std::runtime_error("cannot open info.jsonl under " + dir_.string());
    }
}

void RunRecorder::record_step(int episode, const env::StepInfo& info) {
    const std::string rtt_mean = info.rtt_samples > 0 ? format_double(info.rtt_mean_s) : "";
    const std::string rtt_min = info.rtt_samples > 0 ? format_double(info.rtt_min_s) : "";
    epochs_ << episode << ',' << info.step << ',' << format_double(info.time_s) << ','
            << format_double(info.goodput_mbps) << ',' << rtt_mean << ',' << rtt_min << ','
            << info.rtt_samples << ',' << format_double(info.sa_sum) << ','
            << format_double(info.bif_sum) << ',' << format_double(info.cwnd_sum) << ','
            << format_double(info.srtt_mean_s) << ',' << format_double(info.queue_len) << ','
            << format_double(info.dequeue_rate_pps) << ','
            << format_double(info.queue_delay_s) << ',' << info.drops_full << ','
            << info.drops_red << ',' << info.drops_rl << ',' << info.drops_codel << ','
            << info.corrupted << ',' << info.retransmits << ',' << info.timeouts << ','
            << info.action1 << ',' << info.action2 << ',' << format_double(info.reward1)
            << ',' << format_double(info.reward2) << '\n';

    for (const auto& f : info.flows) {
        flows_ << episode << ',' << info.step << ',' << f.flow << ',' << f.cwnd << ','
               << f.ssthresh << ',' << format_double(f.srtt_s) << ',' << f.segments_acked
               << ',' << f.bytes_in_flight << ',' << format_double(f.goodput_mbps) << '\n';
    }

    if (write_info_) {
        nlohmann::json j{{"episode", episode},
                         {"step", info.step},
                         {"time_s", info.time_s},
                         {"sa_sum", info.sa_sum},
                         {"bif_sum", info.bif_sum},
                         {"cwnd_sum", info.cwnd_sum},
                         {"srtt_mean_s", info.srtt_mean_s},
                         {"queue_len", info.queue_len},
                         {"dequeue_rate_pps", info.dequeue_rate_pps},
                         {"queue_delay_s", info.queue_delay_s},
                         {"goodput_mbps", info.goodput_mbps},
                         {"action1", info.action1},
                         {"action2", info.action2},
                         {"reward1", info.reward1},
                         {"reward2", info.reward2}};
        info_ << j.dump() << '\n';
    }
}

void RunRecorder::record_episode(const EpisodeMetrics& m) {
    episodes_ << m.episode << ',' << m.steps << ',' << format_double(m.mean_goodput_mbps)
              << ',' << (m.mean_rtt_s ? format_double(*m.mean_rtt_s) : std::string{}) << ','
              << m.rtt_samples << ',' << format_double(m.mad_cwnd) << ','
              << format_double(m.mad_queue_len) << ',' << format_double(m.mean_queue_len)
              << ',' << format_double(m.total_reward1) << ','
              << format_double(m.total_reward2) << ',' << m.drops_full << ',' << m.drops_red
              << ',' << m.drops_rl << ',' << m.drops_codel << ',' << m.corrupted << ','
              << format_double(m.mean_loss) << ',' << m.updates << '\n';
}

void RunRecorder::flush() {
    epochs_.flush();
    flows_.flush();
    episodes_.flush();
    if (write_info_) info_.flush();
}

}  // namespace macc::metrics
