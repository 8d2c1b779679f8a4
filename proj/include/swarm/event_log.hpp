#pragma once

#include <iosfwd>
#include <vector>

namespace swarm {

enum class Ev {
    Deliver,
    // street
    StInject,
    StAccept,
    StTerminus,
    StOk,
    StComplete,
    StPayloadSend,
    StPayloadRelay,
    StPayloadArrive,
    StNavPing,
    // feedback
    FbRequestSent,
    FbRequestRelay,
    FbFeedbackSent,
    FbFeedbackRelay,
    FbFeedbackRecv,
    FbEngageSent,
    FbEngageRelay,
    FbEngaged,
    FbDrop,
    FbResumed,
    FbWaiting,
    FbTeamed,
};

// Flat record; `a`, `b`, `x` are event-specific (counter, peer id,
// distance...).  Kept trivially copyable so logs of long runs stay cheap.
struct Event {
    long tick = 0;
    int robot = -1;
    Ev kind = Ev::Deliver;
    int a = 0;
    int b = 0;
    double x = 0.0;
};

class EventLog {
public:
    void push(const Event& e) { events_.push_back(e); }
    void push(long tick, int robot, Ev kind, int a = 0, int b = 0,
              double x = 0.0) {
        events_.push_back({tick, robot, kind, a, b, x});
    }

    const std::vector<Event>& events() const { return events_; }
    std::size_t size() const { return events_.size(); }
    void clear() { events_.clear(); }

    std::size_t count(Ev kind) const;
    // First event of `kind`, or nullptr.
    const Event* first(Ev kind) const;

private:
    std::vector<Event> events_;
};

// Serializes the log as comma-separated rows.  Row shape depends on the
// event family:
//   street:    tick,robot,<event>,counter
//   feedback:  tick,robot,<role>,<event>,scout_id
//   delivery:  tick,robot,deliver,sender,distance
void write_events(std::ostream& os, const EventLog& log);

const char* event_name(Ev kind);

}  // namespace swarm
