#include "macc/harness/config.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "macc/metrics/recorder.hpp"

namespace macc::harness {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void bad_key(const std::string& key, const std::string& why) {
    throw std::invalid_argument("config key '" + key + "': " + why);
}

/// Typed access with consumption tracking, so leftovers can be rejected.
class Fields {
public:
    explicit Fields(const ConfigMap& map) : map_(map) {}

    bool has(const std::string& key) const { return map_.count(key) > 0; }

    std::string str(const std::string& key, const std::string& fallback) {
        auto it = map_.find(key);
        if (it == map_.end()) return fallback;
        used_.insert(key);
        return it->second;
    }

    double num(const std::string& key, double fallback) {
        auto it = map_.find(key);
        if (it == map_.end()) return fallback;
        used_.insert(key);
        try {
            std::size_t pos = 0;
            const double v = std::stod(it->second, &pos);
            if (pos != it->second.size()) throw std::invalid_argument("");
            return v;
        } catch (...) {
            bad_key(key, "expected a number, got '" + it->second + "'");
        }
    }

    std::int64_t integer(const std::string& key, std::int64_t fallback) {
        auto it = map_.find(key);
        if (it == map_.end()) return fallback;
        used_.insert(key);
        try {
            std::size_t pos = 0;
            const long long v = std::stoll(it->second, &pos);
            if (pos != it->second.size()) throw std::invalid_argument("");
            return v;
        } catch (...) {
            bad_key(key, "expected an integer, got '" + it->second + "'");
        }
    }

    bool boolean(const std::string& key, bool fallback) {
        auto it = map_.find(key);
        if (it == map_.end()) return fallback;
        used_.insert(key);
        if (it->second == "true" || it->second == "1" || it->second == "on") return true;
        if (it->second == "false" || it->second == "0" || it->second == "off") return false;
        bad_key(key, "expected true/false, got '" + it->second + "'");
    }

    void mark_used(const std::string& key) { used_.insert(key); }

    void reject_unknown() const {
        for (const auto& [k, v] : map_) {
            if (!used_.count(k)) {
                throw std::invalid_argument("unknown config key '" + k + "'");
            }
        }
    }

    const ConfigMap& map() const { return map_; }

private:
    const ConfigMap& map_;
    std::set<std::string> used_;
};

transport::TransportKind parse_transport_kind(const std::string& key, const std::string& v) {
    if (v == "newreno") return transport::TransportKind::NewReno;
    if (v == "fixedrate") return transport::TransportKind::FixedRate;
    if (v == "rl") return transport::TransportKind::RlAgent;
    bad_key(key, "expected newreno|fixedrate|rl, got '" + v + "'");
}

aqm::AqmKind parse_aqm_kind(const std::string& key, const std::string& v) {
    if (v == "droptail") return aqm::AqmKind::DropTail;
    if (v == "red") return aqm::AqmKind::Red;
    if (v == "codel") return aqm::AqmKind::Codel;
    if (v == "rl") return aqm::AqmKind::Rl;
    bad_key(key, "expected droptail|red|codel|rl, got '" + v + "'");
}

std::string transport_kind_name(transport::TransportKind k) {
    switch (k) {
        case transport::TransportKind::NewReno: return "newreno";
        case transport::TransportKind::FixedRate: return "fixedrate";
        case transport::TransportKind::RlAgent: return "rl";
    }
    return "?";
}

std::string aqm_kind_name(aqm::AqmKind k) {
    switch (k) {
        case aqm::AqmKind::DropTail: return "droptail";
        case aqm::AqmKind::Red: return "red";
        case aqm::AqmKind::Codel: return "codel";
        case aqm::AqmKind::Rl: return "rl";
    }
    return "?";
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

}  // namespace

ConfigMap parse_config_text(const std::string& text, const std::string& origin) {
    ConfigMap map;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument(origin + ":" + std::to_string(lineno) +
                                        ": expected 'key = value', got '" + line + "'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            throw std::invalid_argument(origin + ":" + std::to_string(lineno) + ": empty key");
        }
        map[key] = value;
    }
    return map;
}

ConfigMap load_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open config file: " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config_text(ss.str(), path);
}

void apply_override(ConfigMap& map, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0) {
        throw std::invalid_argument("override must look like key=value, got '" + assignment +
                                    "'");
    }
    map[trim(assignment.substr(0, eq))] = trim(assignment.substr(eq + 1));
}

HarnessConfig HarnessConfig::from_map(const ConfigMap& map) {
    Fields f(map);
    HarnessConfig cfg;

    auto& topo = cfg.env.sim.topo;
    topo.n_flows = static_cast<int>(f.integer("topology.n_flows", topo.n_flows));
    topo.queue_capacity =
        static_cast<int>(f.integer("topology.queue_capacity", topo.queue_capacity));
    topo.sim_duration_s = f.num("topology.sim_duration_s", topo.sim_duration_s);
    topo.epoch_s = f.num("topology.epoch_s", topo.epoch_s);
    topo.edge_link.rate_bps = f.num("edge.rate_bps", topo.edge_link.rate_bps);
    topo.edge_link.prop_delay_s = f.num("edge.delay_s", topo.edge_link.prop_delay_s);
    topo.edge_link.per = f.num("edge.per", topo.edge_link.per);
    topo.bottleneck_link.rate_bps = f.num("bottleneck.rate_bps", topo.bottleneck_link.rate_bps);
    topo.bottleneck_link.prop_delay_s =
        f.num("bottleneck.delay_s", topo.bottleneck_link.prop_delay_s);
    topo.bottleneck_link.per = f.num("bottleneck.per", topo.bottleneck_link.per);

    auto& tr = cfg.env.sim.transport;
    tr.kind = parse_transport_kind("transport.kind", f.str("transport.kind", "newreno"));
    tr.segment_size = static_cast<int>(f.integer("transport.segment_size", tr.segment_size));
    tr.initial_cwnd_segments = static_cast<int>(
        f.integer("transport.initial_cwnd_segments", tr.initial_cwnd_segments));
    {
        const std::string mode = f.str("transport.cwnd_increment", "corrected");
        if (mode == "corrected") {
            tr.cwnd_mode = transport::CwndIncrementMode::Corrected;
        } else if (mode == "literal") {
            tr.cwnd_mode = transport::CwndIncrementMode::Literal;
        } else {
            bad_key("transport.cwnd_increment", "expected corrected|literal, got '" + mode + "'");
        }
    }
    tr.fixed_rate_bps = f.num("transport.fixed_rate_bps", tr.fixed_rate_bps);
    tr.min_rto_s = f.num("transport.min_rto_s", tr.min_rto_s);
    tr.max_rto_s = f.num("transport.max_rto_s", tr.max_rto_s);

    // Per-flow kind overrides: transport.kind.<i>
    cfg.env.sim.flow_kinds.clear();
    bool any_per_flow = false;
    for (int i = 0; i < topo.n_flows; ++i) {
        if (f.has("transport.kind." + std::to_string(i))) any_per_flow = true;
    }
    if (any_per_flow) {
        for (int i = 0; i < topo.n_flows; ++i) {
            const std::string key = "transport.kind." + std::to_string(i);
            const std::string v = f.str(key, transport_kind_name(tr.kind));
            cfg.env.sim.flow_kinds.push_back(parse_transport_kind(key, v));
        }
    }

    auto& aq = cfg.env.sim.aqm;
    aq.kind = parse_aqm_kind("aqm.kind", f.str("aqm.kind", "droptail"));
    aq.red.min_th = static_cast<int>(f.integer("red.min_th", aq.red.min_th));
    aq.red.max_th = static_cast<int>(f.integer("red.max_th", aq.red.max_th));
    aq.red.w_q = f.num("red.w_q", aq.red.w_q);
    aq.red.max_p = f.num("red.max_p", aq.red.max_p);
    aq.codel.target_s = f.num("codel.target_s", aq.codel.target_s);
    aq.codel.interval_s = f.num("codel.interval_s", aq.codel.interval_s);

    cfg.env.window_k = static_cast<int>(f.integer("env.window_k", cfg.env.window_k));
    cfg.env.lag_epochs = static_cast<int>(f.integer("env.lag_epochs", cfg.env.lag_epochs));
    {
        const std::string mode = f.str("env.reward_mode", "normalized");
        if (mode == "normalized") {
            cfg.env.normalized_rewards = true;
        } else if (mode == "raw") {
            cfg.env.normalized_rewards = false;
        } else {
            bad_key("env.reward_mode", "expected normalized|raw, got '" + mode + "'");
        }
    }
    auto& rs = cfg.env.reward_scales;
    rs.sa = f.num("reward_scale.sa", rs.sa);
    rs.bif = f.num("reward_scale.bif", static_cast<double>(tr.segment_size));
    rs.cwnd = f.num("reward_scale.cwnd", static_cast<double>(tr.segment_size));
    rs.deq = f.num("reward_scale.deq", rs.deq);
    rs.delay = f.num("reward_scale.delay", rs.delay);
    rs.qlen = f.num("reward_scale.qlen", static_cast<double>(topo.queue_capacity));
    auto& os = cfg.env.obs_scales;
    os.sa = f.num("obs_scale.sa", os.sa);
    os.bif = f.num("obs_scale.bif", os.bif);
    os.rtt = f.num("obs_scale.rtt", os.rtt);
    os.qlen = f.num("obs_scale.qlen", os.qlen);
    os.deq = f.num("obs_scale.deq", os.deq);
    os.delay = f.num("obs_scale.delay", os.delay);

    auto& t = cfg.train;
    t.gamma = f.num("train.gamma", t.gamma);
    t.lr = f.num("train.lr", t.lr);
    t.minibatch = static_cast<int>(f.integer("train.minibatch", t.minibatch));
    t.episodes = static_cast<int>(f.integer("train.episodes", t.episodes));
    t.replay_capacity = static_cast<std::size_t>(
        f.integer("train.replay_capacity", static_cast<std::int64_t>(t.replay_capacity)));
    t.target_sync = static_cast<int>(f.integer("train.target_sync", t.target_sync));
    {
        const std::string arch = f.str("train.net_arch", "64,64");
        t.hidden_dims.clear();
        for (const auto& d : split_list(arch)) {
            try {
                t.hidden_dims.push_back(std::stoi(d));
            } catch (...) {
                bad_key("train.net_arch", "expected comma-separated dims, got '" + arch + "'");
            }
        }
        if (t.hidden_dims.empty()) bad_key("train.net_arch", "needs at least one hidden dim");
    }
    {
        const std::string mode = f.str("train.epsilon_mode", "decay");
        if (mode == "decay") {
            t.epsilon_mode = rl::ExplorationSchedule::Mode::Decay;
        } else if (mode == "constant") {
            t.epsilon_mode = rl::ExplorationSchedule::Mode::Constant;
        } else {
            bad_key("train.epsilon_mode", "expected decay|constant, got '" + mode + "'");
        }
    }
    t.epsilon_constant = f.num("train.epsilon_constant", t.epsilon_constant);
    {
        const std::string s = f.str("train.action_sampling", "greedy");
        if (s == "greedy") {
            t.sampling = rl::ActionSampling::EpsilonGreedy;
        } else if (s == "boltzmann") {
            t.sampling = rl::ActionSampling::Boltzmann;
        } else {
            bad_key("train.action_sampling", "expected greedy|boltzmann, got '" + s + "'");
        }
    }
    t.temperature = f.num("train.temperature", t.temperature);
    t.beta = f.num("train.beta", t.beta);
    t.seed = static_cast<std::uint64_t>(f.integer("train.seed", static_cast<std::int64_t>(t.seed)));
    t.vdn = f.boolean("train.vdn", t.vdn);
    {
        const std::int64_t pin1 = f.integer("train.pin_action1", -1);
        if (pin1 >= 0) t.pin_action1 = static_cast<int>(pin1);
        const std::int64_t pin2 = f.integer("train.pin_action2", -1);
        if (pin2 >= 0) t.pin_action2 = static_cast<int>(pin2);
    }

    cfg.outdir = f.str("run.outdir", cfg.outdir);
    cfg.info_records = f.boolean("run.info_records", cfg.info_records);

    cfg.cells = split_list(f.str("experiment.cells", ""));
    {
        const auto seed_list = split_list(f.str("experiment.seeds", "1"));
        cfg.seeds.clear();
        for (const auto& s : seed_list) {
            try {
                cfg.seeds.push_back(std::stoull(s));
            } catch (...) {
                bad_key("experiment.seeds", "expected comma-separated integers");
            }
        }
        if (cfg.seeds.empty()) bad_key("experiment.seeds", "needs at least one seed");
    }

    f.reject_unknown();
    cfg.env.validate();
    cfg.train.validate();
    return cfg;
}

ConfigMap HarnessConfig::to_map() const {
    ConfigMap m;
    const auto& topo = env.sim.topo;
    m["topology.n_flows"] = std::to_string(topo.n_flows);
    m["topology.queue_capacity"] = std::to_string(topo.queue_capacity);
    m["topology.sim_duration_s"] = metrics::format_double(topo.sim_duration_s);
    m["topology.epoch_s"] = metrics::format_double(topo.epoch_s);
    m["edge.rate_bps"] = metrics::format_double(topo.edge_link.rate_bps);
    m["edge.delay_s"] = metrics::format_double(topo.edge_link.prop_delay_s);
    m["edge.per"] = metrics::format_double(topo.edge_link.per);
    m["bottleneck.rate_bps"] = metrics::format_double(topo.bottleneck_link.rate_bps);
    m["bottleneck.delay_s"] = metrics::format_double(topo.bottleneck_link.prop_delay_s);
    m["bottleneck.per"] = metrics::format_double(topo.bottleneck_link.per);

    const auto& tr = env.sim.transport;
    m["transport.kind"] = transport_kind_name(tr.kind);
    for (std::size_t i = 0; i < env.sim.flow_kinds.size(); ++i) {
        m["transport.kind." + std::to_string(i)] = transport_kind_name(env.sim.flow_kinds[i]);
    }
    m["transport.segment_size"] = std::to_string(tr.segment_size);
    m["transport.initial_cwnd_segments"] = std::to_string(tr.initial_cwnd_segments);
    m["transport.cwnd_increment"] =
        tr.cwnd_mode == transport::CwndIncrementMode::Corrected ? "corrected" : "literal";
    m["transport.fixed_rate_bps"] = metrics::format_double(tr.fixed_rate_bps);
    m["transport.min_rto_s"] = metrics::format_double(tr.min_rto_s);
    m["transport.max_rto_s"] = metrics::format_double(tr.max_rto_s);

    m["aqm.kind"] = aqm_kind_name(env.sim.aqm.kind);
    m["red.min_th"] = std::to_string(env.sim.aqm.red.min_th);
    m["red.max_th"] = std::to_string(env.sim.aqm.red.max_th);
    m["red.w_q"] = metrics::format_double(env.sim.aqm.red.w_q);
    m["red.max_p"] = metrics::format_double(env.sim.aqm.red.max_p);
    m["codel.target_s"] = metrics::format_double(env.sim.aqm.codel.target_s);
    m["codel.interval_s"] = metrics::format_double(env.sim.aqm.codel.interval_s);

    m["env.window_k"] = std::to_string(env.window_k);
    m["env.lag_epochs"] = std::to_string(env.lag_epochs);
    m["env.reward_mode"] = env.normalized_rewards ? "normalized" : "raw";
    m["reward_scale.sa"] = metrics::format_double(env.reward_scales.sa);
    m["reward_scale.bif"] = metrics::format_double(env.reward_scales.bif);
    m["reward_scale.cwnd"] = metrics::format_double(env.reward_scales.cwnd);
    m["reward_scale.deq"] = metrics::format_double(env.reward_scales.deq);
    m["reward_scale.delay"] = metrics::format_double(env.reward_scales.delay);
    m["reward_scale.qlen"] = metrics::format_double(env.reward_scales.qlen);
    m["obs_scale.sa"] = metrics::format_double(env.obs_scales.sa);
    m["obs_scale.bif"] = metrics::format_double(env.obs_scales.bif);
    m["obs_scale.rtt"] = metrics::format_double(env.obs_scales.rtt);
    m["obs_scale.qlen"] = metrics::format_double(env.obs_scales.qlen);
    m["obs_scale.deq"] = metrics::format_double(env.obs_scales.deq);
    m["obs_scale.delay"] = metrics::format_double(env.obs_scales.delay);

    m["train.gamma"] = metrics::format_double(train.gamma);
    m["train.lr"] = metrics::format_double(train.lr);
    m["train.minibatch"] = std::to_string(train.minibatch);
    m["train.episodes"] = std::to_string(train.episodes);
    m["train.replay_capacity"] = std::to_string(train.replay_capacity);
    m["train.target_sync"] = std::to_string(train.target_sync);
    {
        std::string arch;
        for (std::size_t i = 0; i < train.hidden_dims.size(); ++i) {
            if (i) arch += ',';
            arch += std::to_string(train.hidden_dims[i]);
        }
        m["train.net_arch"] = arch;
    }
    m["train.epsilon_mode"] =
        train.epsilon_mode == rl::ExplorationSchedule::Mode::Decay ? "decay" : "constant";
    m["train.epsilon_constant"] = metrics::format_double(train.epsilon_constant);
    m["train.action_sampling"] =
        train.sampling == rl::ActionSampling::EpsilonGreedy ? "greedy" : "boltzmann";
    m["train.temperature"] = metrics::format_double(train.temperature);
    m["train.beta"] = metrics::format_double(train.beta);
    m["train.seed"] = std::to_string(train.seed);
    m["train.vdn"] = train.vdn ? "true" : "false";
    m["train.pin_action1"] = std::to_string(train.pin_action1 ? *train.pin_action1 : -1);
    m["train.pin_action2"] = std::to_string(train.pin_action2 ? *train.pin_action2 : -1);

    m["run.outdir"] = outdir;
    m["run.info_records"] = info_records ? "true" : "false";

    {
        std::string cs;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) cs += ',';
            cs += cells[i];
        }
        m["experiment.cells"] = cs;
        std::string ss;
        for (std::size_t i = 0; i < seeds.size(); ++i) {
            if (i) ss += ',';
            ss += std::to_string(seeds[i]);
        }
        m["experiment.seeds"] = ss;
    }
    return m;
}

void write_config_file(const ConfigMap& map, const std::string& path) {
    std::ofstream f(path, std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write config file: " + path);
    for (const auto& [k, v] : map) f << k << " = " << v << '\n';
}

}  // namespace macc::harness
