#include "swarm/event_log.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>

namespace swarm {

std::size_t EventLog::count(Ev kind) const {
    return static_cast<std::size_t>(
        std::count_if(events_.begin(), events_.end(),
                      [kind](const Event& e) { return e.kind == kind; }));
}

const Event* EventLog::first(Ev kind) const {
    for (const Event& e : events_)
        if (e.kind == kind) return &e;
    return nullptr;
}

const char* event_name(Ev kind) {
    switch (kind) {
        case Ev::Deliver: return "deliver";
        case Ev::StInject: return "inject";
        case Ev::StAccept: return "accept";
        case Ev::StTerminus: return "terminus";
        case Ev::StOk: return "ok";
        case Ev::StComplete: return "complete";
        case Ev::StPayloadSend: return "payload_send";
        case Ev::StPayloadRelay: return "payload_relay";
        case Ev::StPayloadArrive: return "payload_arrive";
        case Ev::StNavPing: return "nav_ping";
        case Ev::FbRequestSent: return "request_sent";
        case Ev::FbRequestRelay: return "request_relay";
        case Ev::FbFeedbackSent: return "feedback_sent";
        case Ev::FbFeedbackRelay: return "feedback_relay";
        case Ev::FbFeedbackRecv: return "feedback_recv";
        case Ev::FbEngageSent: return "engage_sent";
        case Ev::FbEngageRelay: return "engage_relay";
        case Ev::FbEngaged: return "engaged";
        case Ev::FbDrop: return "drop";
        case Ev::FbResumed: return "resumed";
        case Ev::FbWaiting: return "waiting";
        case Ev::FbTeamed: return "teamed";
    }
    return "?";
}

namespace {

// Role column for feedback rows is implied by the event kind.
const char* feedback_role(Ev kind) {
    switch (kind) {
        case Ev::FbRequestSent:
        case Ev::FbFeedbackRecv:
        case Ev::FbEngageSent:
        case Ev::FbResumed:
        case Ev::FbWaiting:
        case Ev::FbTeamed: return "scout";
        case Ev::FbFeedbackSent:
        case Ev::FbEngaged: return "responder";
        default: return "relay";
    }
}

bool is_feedback(Ev kind) {
    return kind >= Ev::FbRequestSent && kind <= Ev::FbTeamed;
}

}  // namespace

void write_events(std::ostream& os, const EventLog& log) {
    char buf[32];
    for (const Event& e : log.events()) {
        if (e.kind == Ev::Deliver) {
            std::snprintf(buf, sizeof buf, "%.6f", e.x);
            os << e.tick << ',' << e.robot << ",deliver," << e.a << ',' << buf
               << '\n';
        } else if (is_feedback(e.kind)) {
            os << e.tick << ',' << e.robot << ',' << feedback_role(e.kind)
               << ',' << event_name(e.kind) << ',' << e.a << '\n';
        } else {
            os << e.tick << ',' << e.robot << ',' << event_name(e.kind) << ','
               << e.a << '\n';
        }
    }
}

}  // namespace swarm
