#pragma once

#include <map>
#include <set>
#include <string>

#include "swarm/codec.hpp"
#include "swarm/proto.hpp"

namespace swarm {

struct FeedbackParams {
    int min_responders = 2;       // "at least two" — strict
    long request_timeout = 30;    // ticks the scout collects feedback
    std::string capability = "color_sensor";  // what the scout asks for
    double turn_prob = 0.15;      // search wander
    double turn_angle_range = 1.5707963267948966;
};

// Scout/responder regime: a scout that finds the resource floods a
// capability request; relays record the neighbor the request arrived from,
// so feedback can be unicast back hop by hop; capable robots answer once.
// If enough answers arrive before the deadline the scout calls them in and
// waits, otherwise it resumes searching.
struct FeedbackState {
    enum class Mode {
        // scout
        Searching,
        Requesting,
        Waiting,
        Teamed,
        // everyone else
        Idle,
        Engaged,
    };
    Mode mode = Mode::Idle;
    bool is_scout = false;

    // scout side
    long deadline = -1;
    std::set<int> responders;     // confirmed for the current request
    bool requested_here = false;  // cleared when the scout leaves the spot

    // relay / responder side
    codec::RoutingLedger seen{128};  // flood duplicate suppression
    std::map<int, int> reverse_hop;  // scout id -> neighbor toward the scout
    std::set<int> fed_back;          // scouts we already answered
    int engaged_scout = -1;
    int drops = 0;    // feedback frames with no reverse path
    int dropped = 0;  // frames this protocol does not speak
};

// The three roles, exposed separately for direct testing.  `capabilities`
// is the owning robot's tag set.
MotionCommand scout_step(FeedbackState& st, const FeedbackParams& p,
                         bool found_object, const StepContext& ctx);
void relay_step(FeedbackState& st, const StepContext& ctx);
MotionCommand responder_step(FeedbackState& st,
                             const std::set<std::string>& capabilities,
                             const StepContext& ctx);

// Arena entry point: scouts scout; everyone else responds and relays.
MotionCommand feedback_step(FeedbackState& st, const FeedbackParams& p,
                            const std::set<std::string>& capabilities,
                            const StepContext& ctx);

}  // namespace swarm
