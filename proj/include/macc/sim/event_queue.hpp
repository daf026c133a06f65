#pragma once

#include <cstdint>
#include <functional>
#include <queue>
#include <vector>

#include "macc/sim/time.hpp"

namespace macc::sim {

/// Pending-event set ordered by (time, insertion counter).
///
/// The insertion counter breaks ties, so events scheduled for the same
/// instant run in the order they were scheduled. Scheduling into the past
/// is a programming error and throws.
class EventQueue {
public:
    using Handler = std::function<void()>;

    SimTime now() const { return now_; }

    void schedule(SimTime at, Handler fn);

    bool empty() const { return heap_.empty(); }
    std::size_t pending() const { return heap_.size(); }

    /// Earliest pending event time; only valid when !empty().
    SimTime next_at() const { return heap_.top().at; }

    /// Processes every event with at <= t_end, then advances the clock to
    /// exactly t_end.
    void run_until(SimTime t_end);

    /// Processes the single earliest event. Returns false when none pend.
    bool step();

private:
    struct Entry {
        SimTime at;
        std::uint64_t seqno;
        mutable Handler fn;  // moved out when the entry is popped

        bool operator>(const Entry& rhs) const {
            if (at != rhs.at) return at > rhs.at;
            return seqno > rhs.seqno;
        }
    };

    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap_;
    SimTime now_;
    std::uint64_t next_seqno_ = 0;
};

}  // namespace macc::sim
