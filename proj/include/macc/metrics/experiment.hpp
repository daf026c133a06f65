#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "macc/harness/config.hpp"
#include "macc/metrics/recorder.hpp"

namespace macc::metrics {

/// One comparison-matrix entry: a queue discipline paired with a
/// transport, plus how any learned layers train. "macc" is the joint
/// cell (both layers learned, trained together on the team reward);
/// "rl+rl" is the independent ablation.
struct Cell {
    std::string name;
    aqm::AqmKind aqm = aqm::AqmKind::DropTail;
    transport::TransportKind transport = transport::TransportKind::NewReno;
    bool joint = false;

    bool learned() const {
        return aqm == aqm::AqmKind::Rl || transport == transport::TransportKind::RlAgent;
    }
};

/// Accepts "macc" or "<aqm>+<transport>" with aqm in
/// droptail|red|codel|rl and transport in newreno|fixedrate|rl.
Cell parse_cell(const std::string& name);

/// The nine Table-style combinations plus the joint cell.
std::vector<Cell> full_matrix();

struct CellResult {
    std::string cell;
    std::uint64_t seed = 0;
    std::string phase;  // "sim", "train" or "eval"
    EpisodeMetrics metrics;
    bool failed = false;
    std::string error;
};

struct ExperimentOutcome {
    std::vector<CellResult> rows;
    int failed_cells = 0;
};

/// Runs every (cell, seed) combination: learned cells train and then run
/// one greedy evaluation episode; rule cells run one plain episode. Each
/// combination writes its CSVs, models and resolved config under
/// outdir/<cell>/seed<k>/; aggregate.csv and summary.csv land in outdir.
/// A failing cell is recorded and the remaining cells continue.
ExperimentOutcome run_experiment(const harness::HarnessConfig& cfg);

}  // namespace macc::metrics
