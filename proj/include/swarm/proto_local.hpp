#pragma once

#include "swarm/proto.hpp"

namespace swarm {

struct LocalParams {
    double wait_gain = 500.0;     // ticks per unit light intensity
    long base_wait = 0;           // ticks
    int avoid_ticks = 8;
    double turn_prob = 0.15;      // chance of a random turn per wandering tick
    double turn_angle_range = 1.5707963267948966;  // width of the turn window
};

// Stigmergy aggregation: wander, stop on meeting another robot, wait longer
// where the light is brighter, then turn away and move on.  Emits no
// messages, ever.
struct LocalState {
    enum class Mode { Wandering, Waiting, Avoiding };
    Mode mode = Mode::Wandering;
    long wait_remaining = 0;
    int avoid_remaining = 0;
};

// How long a robot holds still after an encounter under `intensity`.
long wait_time(const LocalParams& p, double intensity);

// One tick of the state machine.  `encounter` = at least one robot inside
// the proximity radius.  Uses ctx.rng for the wander/avoid turns.
MotionCommand local_step(LocalState& st, const LocalParams& p, bool encounter,
                         double intensity, const StepContext& ctx);

}  // namespace swarm
