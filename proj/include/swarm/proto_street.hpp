#pragma once

#include <stdexcept>

#include "swarm/proto.hpp"

namespace swarm {

struct StreetParams {
    int n_threshold = 15;     // counters past this finish the street
    int resend_ticks = 4;     // acknowledged-send retry interval
    long build_timeout = 40;  // give up on finding a downstream robot
    int nav_ping_period = 8;
    int confirm_cycles = 1;   // payload round trips run by the street head
    bool invert_gradient = false;  // navigate toward the head instead
};

// Hop-counter street building.  A street starts when a frame with counter 0
// is injected near a landmark; the robot that picks it up becomes the head
// (counter 1, no upstream robot) and the flood grows one hop per tick:
// receive N, join with N+1, send N+1.  A robot finishes the street — becomes
// the terminus — when it sits next to a landmark, touches a different
// street, or the counter runs past the threshold; the terminus answers OK,
// which members relay back along their upstream links until the head learns
// the chain is standing and pushes a payload down it.
struct StreetState {
    enum class Role { Free, Member, Terminus };
    Role role = Role::Free;
    int counter = 0;        // >= 1 once part of a street
    int origin = -1;        // street identity stamped on every frame
    int upstream = -1;      // who we accepted from; < 0 at the head
    int downstream = -1;    // who accepted ours (overheard counter + 1)
    bool acked = false;
    bool complete = false;  // head only: OK made it back
    long accepted_tick = -1;
    long last_send = -1;
    int cycles_done = 0;
    int dropped = 0;        // frames this protocol does not speak
};

// One tick.  Street robots hold position; the command is always zero.
MotionCommand street_step(StreetState& st, const StreetParams& p,
                          const StepContext& ctx);

// A received navigation ping, paired with where it came from.
struct NavPingSample {
    int n = 0;
    int sender = -1;
    Vec2 sender_pos;
};

struct InsufficientGradient : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Heading toward the street's far end: the sender of the highest-counter
// ping (ties to the smallest sender id), or the lowest-counter one when
// inverted.  Throws InsufficientGradient given fewer than two pings or a
// flat counter field.
double navigation_direction(std::span<const NavPingSample> pings,
                            Vec2 my_position, bool invert = false);

struct IncompleteRun : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct StreetMetrics {
    long build_rounds = 0;        // injection pickup -> terminus formed
    long ok_rounds = -1;          // terminus formed -> head confirmed
    long propagation_rounds = -1; // payload send -> payload arrival
    int street_length = 0;        // robots recruited, terminus included
};

// Reads the metrics off a run's event log.  Throws IncompleteRun when no
// terminus ever formed.  Rounds that did not happen stay -1.
StreetMetrics street_metrics(const EventLog& log);

}  // namespace swarm
