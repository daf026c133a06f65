#include "macc/sim/event_queue.hpp"

#include <stdexcept>
#include <string>

namespace macc::sim {

void EventQueue::schedule(SimTime at, Handler fn) {
    if (at < now_) {
        throw std::logic_error("EventQueue::schedule: event at " +
                               std::to_string(at.ns()) + "ns is before clock " +
                               std::to_string(now_.ns()) + "ns");
    }
    heap_.push(Entry{at, next_seqno_++, std::move(fn)});
}

bool EventQueue::step() {
    if (heap_.empty()) return false;
    const Entry& top = heap_.top();
    now_ = top.at;
    Handler fn = std::move(top.fn);
    heap_.pop();
    fn();
    return true;
}

void EventQueue::run_until(SimTime t_end) {
    if (t_end < now_) {
        throw std::logic_error("EventQueue::run_until: target precedes clock");
    }
    while (!heap_.empty() && heap_.top().at <= t_end) {
        step();
    }
    now_ = t_end;
}

}  // namespace macc::sim
