#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "swarm/event_log.hpp"
#include "swarm/messages.hpp"
#include "swarm/rng.hpp"
#include "swarm/vec2.hpp"

namespace swarm {

// What a protocol asks the kinematics to do this tick.  `turn` is applied
// first (with rotation noise), then the robot drives `forward` * speed * dt
// (with distance noise).
struct MotionCommand {
    double forward = 0.0;  // throttle in [0, 1]
    double turn = 0.0;     // radians
};

// Read-only view of the world a single robot gets for one tick.  Everything
// here is computed from the start-of-tick snapshot; the inbox holds frames
// delivered at the end of the previous tick.  Poses of all robots are
// exposed for navigation — a stand-in for signal-direction sensing.
struct StepContext {
    long tick = 0;
    int self = -1;
    Pose pose;
    double light = 0.0;
    double prox_radius = 0.0;
    std::uint64_t prox_mask = 0;  // neighbors within proximity radius
    std::uint64_t comm_mask = 0;  // neighbors within communication radius
    bool near_landmark = false;   // a landmark within proximity radius
    bool found_object = false;    // the resource within proximity radius
    std::span<const Pose> poses;
    // Street identities held by communication-range neighbors; used to stop
    // one growing street when it touches another.
    std::span<const int> neighbor_street_origins;
    std::span<const Message> inbox;
    RandomStream* rng = nullptr;
    EventLog* log = nullptr;
    std::vector<Message>* outbox = nullptr;
};

}  // namespace swarm
