#pragma once

#include <memory>

#include "macc/aqm/codel.hpp"
#include "macc/aqm/queue_disc.hpp"
#include "macc/aqm/red.hpp"
#include "macc/aqm/rl_queue.hpp"

namespace macc::aqm {

enum class AqmKind { DropTail, Red, Codel, Rl };

struct AqmConfig {
    AqmKind kind = AqmKind::DropTail;
    RedParams red{};
    CodelParams codel{};
};

/// `idle_pkt_time_s` is the typical per-packet transmission time of the
/// fronted link, used by RED's idle decay.
inline std::unique_ptr<QueueDisc> make_queue(const AqmConfig& cfg, int capacity,
                                             double idle_pkt_time_s) {
    switch (cfg.kind) {
        case AqmKind::Red: return std::make_unique<RedQueue>(capacity, cfg.red, idle_pkt_time_s);
        case AqmKind::Codel: return std::make_unique<CodelQueue>(capacity, cfg.codel);
        case AqmKind::Rl: return std::make_unique<RlQueue>(capacity);
        case AqmKind::DropTail: break;
    }
    return std::make_unique<QueueDisc>(capacity);
}

}  // namespace macc::aqm
