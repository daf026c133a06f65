#include "macc/metrics/experiment.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <stdexcept>

#include "macc/env/trainer.hpp"

namespace macc::metrics {

namespace {

aqm::AqmKind parse_aqm(const std::string& cell, const std::string& s) {
    if (s == "droptail") return aqm::AqmKind::DropTail;
    if (s == "red") return aqm::AqmKind::Red;
    if (s == "codel") return aqm::AqmKind::Codel;
    if (s == "rl") return aqm::AqmKind::Rl;
    throw std::invalid_argument("cell '" + cell + "': unknown aqm '" + s + "'");
}

transport::TransportKind parse_transport(const std::string& cell, const std::string& s) {
    if (s == "newreno") return transport::TransportKind::NewReno;
    if (s == "fixedrate") return transport::TransportKind::FixedRate;
    if (s == "rl") return transport::TransportKind::RlAgent;
    throw std::invalid_argument("cell '" + cell + "': unknown transport '" + s + "'");
}

constexpr const char* kAggregateHeader =
    "cell,aqm,transport,seed,phase,episode,mean_goodput_mbps,mean_rtt_s,mad_cwnd,"
    "mad_queue_len,mean_queue_len,total_reward1,total_reward2";

constexpr const char* kSummaryHeader =
    "cell,runs,goodput_mean_mbps,goodput_std_mbps,rtt_mean_s,rtt_std_s,mad_cwnd_mean,"
    "mad_queue_len_mean";

std::string aqm_name(aqm::AqmKind k) {
    switch (k) {
        case aqm::AqmKind::DropTail: return "droptail";
        case aqm::AqmKind::Red: return "red";
        case aqm::AqmKind::Codel: return "codel";
        case aqm::AqmKind::Rl: return "rl";
    }
    return "?";
}

std::string transport_name(transport::TransportKind k) {
    switch (k) {
        case transport::TransportKind::NewReno: return "newreno";
        case transport::TransportKind::FixedRate: return "fixedrate";
        case transport::TransportKind::RlAgent: return "rl";
    }
    return "?";
}

void write_aggregate_row(std::ofstream& out, const Cell& cell, const CellResult& r) {
    out << r.cell << ',' << aqm_name(cell.aqm) << ',' << transport_name(cell.transport) << ','
        << r.seed << ',' << r.phase << ',' << r.metrics.episode << ','
        << format_double(r.metrics.mean_goodput_mbps) << ','
        << (r.metrics.mean_rtt_s ? format_double(*r.metrics.mean_rtt_s) : std::string{}) << ','
        << format_double(r.metrics.mad_cwnd) << ',' << format_double(r.metrics.mad_queue_len)
        << ',' << format_double(r.metrics.mean_queue_len) << ','
        << format_double(r.metrics.total_reward1) << ','
        << format_double(r.metrics.total_reward2) << '\n';
}

}  // namespace

Cell parse_cell(const std::string& name) {
    Cell c;
    c.name = name;
    if (name == "macc") {
        c.aqm = aqm::AqmKind::Rl;
        c.transport = transport::TransportKind::RlAgent;
        c.joint = true;
        return c;
    }
    const auto plus = name.find('+');
    if (plus == std::string::npos) {
        throw std::invalid_argument("cell '" + name + "': expected 'macc' or '<aqm>+<transport>'");
    }
    c.aqm = parse_aqm(name, name.substr(0, plus));
    c.transport = parse_transport(name, name.substr(plus + 1));
    c.joint = false;  // explicit pairs train independently (the ablation)
    return c;
}

std::vector<Cell> full_matrix() {
    std::vector<Cell> cells;
    for (const char* a : {"red", "codel", "rl"}) {
        for (const char* t : {"newreno", "fixedrate", "rl"}) {
            cells.push_back(parse_cell(std::string(a) + "+" + t));
        }
    }
    cells.push_back(parse_cell("macc"));
    return cells;
}

ExperimentOutcome run_experiment(const harness::HarnessConfig& cfg) {
    ExperimentOutcome outcome;

    std::vector<Cell> cells;
    if (cfg.cells.empty()) {
        cells = full_matrix();
    } else {
        for (const auto& name : cfg.cells) cells.push_back(parse_cell(name));
    }

    const std::filesystem::path outdir(cfg.outdir);
    std::filesystem::create_directories(outdir);
    std::ofstream aggregate(outdir / "aggregate.csv", std::ios::trunc);
    if (!aggregate) throw std::runtime_error("cannot open aggregate.csv in " + cfg.outdir);
    aggregate << kAggregateHeader << '\n';
    std::ofstream failures;

    // Per-cell evaluation-phase series for the summary table.
    std::map<std::string, std::vector<EpisodeMetrics>> eval_rows;
    std::vector<std::string> cell_order;

    for (const auto& cell : cells) {
        cell_order.push_back(cell.name);
        for (const std::uint64_t seed : cfg.seeds) {
            const auto dir = outdir / cell.name / ("seed" + std::to_string(seed));
            try {
                harness::HarnessConfig run_cfg = cfg;
                run_cfg.env.sim.aqm.kind = cell.aqm;
                run_cfg.env.sim.transport.kind = cell.transport;
                run_cfg.env.sim.flow_kinds.clear();
                run_cfg.train.seed = seed;
                run_cfg.train.vdn = cell.joint;
                run_cfg.outdir = dir.string();

                std::filesystem::create_directories(dir);
                harness::write_config_file(run_cfg.to_map(), (dir / "resolved.config").string());

                RunRecorder recorder(dir, cfg.info_records);
                if (cell.learned()) {
                    env::Trainer trainer(run_cfg.env, run_cfg.train, recorder);
                    const auto summary = trainer.train();
                    for (const auto& em : summary.episodes) {
                        CellResult r{cell.name, seed, "train", em, false, ""};
                        outcome.rows.push_back(r);
                        write_aggregate_row(aggregate, cell, r);
                    }
                    const auto eval = trainer.evaluate(
                        run_cfg.train.episodes,
                        env::Trainer::episode_seed(seed, run_cfg.train.episodes));
                    CellResult r{cell.name, seed, "eval", eval, false, ""};
                    outcome.rows.push_back(r);
                    write_aggregate_row(aggregate, cell, r);
                    eval_rows[cell.name].push_back(eval);
                } else {
                    const auto em = env::run_plain_episode(run_cfg.env, seed, recorder, 0);
                    CellResult r{cell.name, seed, "sim", em, false, ""};
                    outcome.rows.push_back(r);
                    write_aggregate_row(aggregate, cell, r);
                    eval_rows[cell.name].push_back(em);
                }
            } catch (const std::exception& e) {
                ++outcome.failed_cells;
                CellResult r;
                r.cell = cell.name;
                r.seed = seed;
                r.failed = true;
                r.error = e.what();
                outcome.rows.push_back(r);
                if (!failures.is_open()) {
                    failures.open(outdir / "failures.log", std::ios::trunc);
                }
                failures << cell.name << " seed " << seed << ": " << e.what() << '\n';
            }
        }
    }

    // Plot-ready comparison: mean and stddev across seeds of the
    // evaluation (or plain-simulation) episode.
    std::ofstream summary(outdir / "summary.csv", std::ios::trunc);
    summary << kSummaryHeader << '\n';
    for (const auto& name : cell_order) {
        const auto it = eval_rows.find(name);
        if (it == eval_rows.end() || it->second.empty()) continue;
        const auto& rows = it->second;
        const double n = static_cast<double>(rows.size());
        double gp_mean = 0, rtt_mean = 0, madc_mean = 0, madq_mean = 0;
        int rtt_count = 0;
        for (const auto& m : rows) {
            gp_mean += m.mean_goodput_mbps;
            if (m.mean_rtt_s) {
                rtt_mean += *m.mean_rtt_s;
                ++rtt_count;
            }
            madc_mean += m.mad_cwnd;
            madq_mean += m.mad_queue_len;
        }
        gp_mean /= n;
        rtt_mean = rtt_count > 0 ? rtt_mean / rtt_count : 0.0;
        madc_mean /= n;
        madq_mean /= n;
        double gp_var = 0, rtt_var = 0;
        for (const auto& m : rows) {
            gp_var += (m.mean_goodput_mbps - gp_mean) * (m.mean_goodput_mbps - gp_mean);
            if (m.mean_rtt_s) rtt_var += (*m.mean_rtt_s - rtt_mean) * (*m.mean_rtt_s - rtt_mean);
        }
        gp_var /= n;
        rtt_var = rtt_count > 0 ? rtt_var / rtt_count : 0.0;
        summary << name << ',' << rows.size() << ',' << format_double(gp_mean) << ','
                << format_double(std::sqrt(gp_var)) << ',' << format_double(rtt_mean) << ','
                << format_double(std::sqrt(rtt_var)) << ',' << format_double(madc_mean) << ','
                << format_double(madq_mean) << '\n';
    }

    return outcome;
}

}  // namespace macc::metrics
