// Command-line front end: train / evaluate / compare / inspect-model.
// Every verb takes a key=value config file plus --set overrides; each run
// writes its resolved configuration next to its outputs.

#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "macc/env/trainer.hpp"
#include "macc/harness/config.hpp"
#include "macc/metrics/experiment.hpp"
#include "macc/rl/model_io.hpp"

namespace {

macc::harness::HarnessConfig load_config(const std::string& config_path,
                                         const std::vector<std::string>& overrides) {
    macc::harness::ConfigMap map;
    if (!config_path.empty()) map = macc::harness::load_config_file(config_path);
    for (const auto& o : overrides) macc::harness::apply_override(map, o);
    return macc::harness::HarnessConfig::from_map(map);
}

void add_config_options(CLI::App* cmd, std::string& config_path,
                        std::vector<std::string>& overrides) {
    cmd->add_option("-c,--config", config_path, "key=value config file");
    cmd->add_option("-s,--set", overrides, "override a config key (key=value)");
}

int cmd_train(const macc::harness::HarnessConfig& cfg) {
    std::filesystem::create_directories(cfg.outdir);
    macc::harness::write_config_file(cfg.to_map(), cfg.outdir + "/resolved.config");
    macc::metrics::RunRecorder recorder(cfg.outdir, cfg.info_records);
    macc::env::Trainer trainer(cfg.env, cfg.train, recorder);
    const auto summary = trainer.train();
    for (const auto& m : summary.episodes) {
        std::cout << "episode " << m.episode << ": mean goodput "
                  << macc::metrics::format_double(m.mean_goodput_mbps) << " Mbps, reward1 "
                  << macc::metrics::format_double(m.total_reward1) << ", reward2 "
                  << macc::metrics::format_double(m.total_reward2) << ", mean loss "
                  << macc::metrics::format_double(m.mean_loss) << "\n";
    }
    std::cout << "outputs in " << cfg.outdir << "\n";
    return 0;
}

int cmd_evaluate(const macc::harness::HarnessConfig& cfg, const std::string& models_arg) {
    const std::string models = models_arg.empty() ? cfg.outdir : models_arg;
    const bool needs1 = cfg.env.sim.transport.kind == macc::transport::TransportKind::RlAgent;
    const bool needs2 = cfg.env.sim.aqm.kind == macc::aqm::AqmKind::Rl;
    if (needs1 && !std::filesystem::exists(models + "/agent1.qnet")) {
        throw std::runtime_error("no agent1.qnet under " + models + " (train first?)");
    }
    if (needs2 && !std::filesystem::exists(models + "/agent2.qnet")) {
        throw std::runtime_error("no agent2.qnet under " + models + " (train first?)");
    }

    const std::string outdir = models + "/eval";
    std::filesystem::create_directories(outdir);
    macc::harness::write_config_file(cfg.to_map(), outdir + "/resolved.config");
    macc::metrics::RunRecorder recorder(outdir, cfg.info_records);
    macc::env::Trainer trainer(cfg.env, cfg.train, recorder, models);
    const auto m = trainer.evaluate(0, cfg.train.seed);
    std::cout << "evaluation: mean goodput "
              << macc::metrics::format_double(m.mean_goodput_mbps) << " Mbps";
    if (m.mean_rtt_s) {
        std::cout << ", mean RTT " << macc::metrics::format_double(*m.mean_rtt_s) << " s";
    }
    std::cout << ", MAD(cwnd) " << macc::metrics::format_double(m.mad_cwnd) << ", MAD(queue) "
              << macc::metrics::format_double(m.mad_queue_len) << "\n";
    std::cout << "outputs in " << outdir << "\n";
    return 0;
}

int cmd_compare(const macc::harness::HarnessConfig& cfg) {
    const auto outcome = macc::metrics::run_experiment(cfg);
    int shown = 0;
    for (const auto& r : outcome.rows) {
        if (r.failed) {
            std::cout << r.cell << " seed " << r.seed << ": FAILED (" << r.error << ")\n";
        } else if (r.phase != "train") {
            std::cout << r.cell << " seed " << r.seed << " [" << r.phase << "]: goodput "
                      << macc::metrics::format_double(r.metrics.mean_goodput_mbps) << " Mbps";
            if (r.metrics.mean_rtt_s) {
                std::cout << ", RTT "
                          << macc::metrics::format_double(*r.metrics.mean_rtt_s) << " s";
            }
            std::cout << "\n";
            ++shown;
        }
    }
    std::cout << shown << " result rows, " << outcome.failed_cells << " failures; outputs in "
              << cfg.outdir << "\n";
    return outcome.failed_cells > 0 ? 1 : 0;
}

int cmd_inspect(const std::string& path) {
    const auto m = macc::rl::load_model(path);
    std::cout << "agent id: " << m.agent_id << "\nlayer dims:";
    for (int d : m.net.layer_dims()) std::cout << ' ' << d;
    std::size_t params = 0;
    double min = 0, max = 0, sum = 0;
    bool first = true;
    for (std::size_t l = 0; l < m.net.layer_count(); ++l) {
        const auto& w = m.net.weights()[l];
        const auto& b = m.net.biases()[l];
        params += static_cast<std::size_t>(w.size() + b.size());
        for (const auto* mat : {&w}) {
            const double lo = mat->minCoeff(), hi = mat->maxCoeff();
            min = first ? lo : std::min(min, lo);
            max = first ? hi : std::max(max, hi);
            sum += mat->sum();
            first = false;
        }
        min = std::min(min, b.minCoeff());
        max = std::max(max, b.maxCoeff());
        sum += b.sum();
    }
    std::cout << "\nparameters: " << params << "\nmin " << min << ", max " << max << ", mean "
              << sum / static_cast<double>(params) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cross-layer congestion-control simulator and trainer"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::string> overrides;
    std::string models_dir;
    std::string model_path;

    auto* train = app.add_subcommand("train", "train the configured learned layers");
    add_config_options(train, config_path, overrides);

    auto* evaluate = app.add_subcommand("evaluate", "run one greedy episode from saved models");
    add_config_options(evaluate, config_path, overrides);
    evaluate->add_option("-m,--models", models_dir, "directory holding agent*.qnet");

    auto* compare = app.add_subcommand("compare", "run the comparison matrix");
    add_config_options(compare, config_path, overrides);

    auto* inspect = app.add_subcommand("inspect-model", "print a model file's header and stats");
    inspect->add_option("model", model_path, "model file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (inspect->parsed()) return cmd_inspect(model_path);
        const auto cfg = load_config(config_path, overrides);
        if (train->parsed()) return cmd_train(cfg);
        if (evaluate->parsed()) return cmd_evaluate(cfg, models_dir);
        if (compare->parsed()) return cmd_compare(cfg);
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
