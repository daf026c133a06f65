#pragma once

#include <cstdint>
#include <deque>
#include <memory>
#include <optional>
#include <string>

#include "macc/sim/packet.hpp"
#include "macc/sim/rng.hpp"
#include "macc/sim/time.hpp"

namespace macc::aqm {

enum class AdmitResult { Enqueued, Dropped };

enum class DropCause { Full, RedEarly, RlRandom, Codel };

struct DropCounters {
    std::uint64_t full = 0;
    std::uint64_t red_early = 0;
    std::uint64_t rl_random = 0;
    std::uint64_t codel = 0;

    std::uint64_t total() const { return full + red_early + rl_random + codel; }
};

/// Per-epoch queue observation: occupancy at the boundary, dequeue rate
/// over the window, mean per-packet sojourn of packets dequeued during
/// the window (0 when none left the queue), and the window's drops.
struct QueueSnapshot {
    int occupancy = 0;
    double dequeue_rate_pps = 0.0;
    double mean_sojourn_s = 0.0;
    DropCounters drops{};
};

/// FIFO queue with a pluggable admission/dequeue policy. The base class
/// is DropTail: drop only when the buffer holds `capacity` packets.
class QueueDisc {
public:
    explicit QueueDisc(int capacity) : capacity_(capacity) {}
    virtual ~QueueDisc() = default;

    virtual AdmitResult admit(const sim::Packet& pkt, sim::SimTime now, sim::Rng& rng);

    /// Next packet to put on the wire, or nullopt if the queue is empty.
    /// Disciplines that drop at dequeue time (CoDel) do so here.
    virtual std::optional<sim::Packet> dequeue(sim::SimTime now);

    virtual std::string name() const { return "droptail"; }

    int occupancy() const { return static_cast<int>(buffer_.size()); }
    int capacity() const { return capacity_; }

    const DropCounters& drops() const { return drops_; }

    /// Drop counts accumulated since the last epoch snapshot.
    const DropCounters& epoch_drops() const { return epoch_drops_; }

    /// Closes the current measurement window: returns the snapshot and
    /// restarts the per-epoch counters.
    QueueSnapshot measure(sim::SimTime window);

protected:
    void push(const sim::Packet& pkt, sim::SimTime now);
    sim::Packet pop(sim::SimTime now);
    void count_drop(DropCause cause);

    std::deque<sim::Packet> buffer_;

private:
    int capacity_;
    DropCounters drops_;
    DropCounters epoch_drops_;
    std::uint64_t epoch_dequeued_ = 0;
    double epoch_sojourn_sum_s_ = 0.0;
};

}  // namespace macc::aqm
