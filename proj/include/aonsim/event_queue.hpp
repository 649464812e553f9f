// Event kernel. A binary heap ordered by (time, insertion sequence) so
// simultaneous events run in the order they were scheduled; together with
// seeded randomness this makes whole runs reproducible event for event.
#pragma once

#include "aonsim/errors.hpp"
#include "aonsim/graph.hpp"
#include "aonsim/message.hpp"
#include "aonsim/sim_time.hpp"

#include <cstdint>
#include <optional>
#include <queue>
#include <vector>

namespace aonsim {

enum class EventKind : std::uint8_t {
    MessageArrival,   // msg reaches the far end of link
    ProcessingDone,   // converter on link finishes the packet at its queue head
    TransmissionSlotFree, // a source transmit slot opens up (see SlotAction)
    WorkloadInjection,    // request materializes in a source's injection buffer
};

enum class SlotAction : std::uint8_t {
    None,
    IssueToken,   // pipelined pacing: stream far enough along to admit the next setup
    StreamEnd,    // transmitter idle: release the first-hop channel, await the ack
    DelayedStart, // fixed-delay operation: begin streaming without a reply
};

struct Event {
    SimTime time;
    std::uint64_t seq = 0;
    EventKind kind = EventKind::WorkloadInjection;
    LinkId link = 0;
    NodeId node = 0;
    RequestId request = 0;
    SlotAction action = SlotAction::None;
    Message msg;
};

class EventQueue {
  public:
    SimTime now() const { return now_; }
    std::size_t size() const { return heap_.size(); }
    bool empty() const { return heap_.empty(); }

    void schedule(Event ev) {
        if (ev.time < now_)
            throw SimError(SimError::Kind::TimeTravel,
                           "event scheduled " + std::to_string((now_ - ev.time).to_us()) + " us in the past");
        ev.seq = next_seq_++;
        heap_.push(ev);
    }

    std::optional<Event> pop() {
        if (heap_.empty())
            return std::nullopt;
        Event ev = heap_.top();
        heap_.pop();
        now_ = ev.time;
        return ev;
    }

  private:
    struct Later {
        bool operator()(const Event& a, const Event& b) const {
            if (a.time != b.time)
                return b.time < a.time;
            return b.seq < a.seq;
        }
    };

    std::priority_queue<Event, std::vector<Event>, Later> heap_;
    SimTime now_;
    std::uint64_t next_seq_ = 0;
};

} // namespace aonsim
