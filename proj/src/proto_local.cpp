#include "swarm/proto_local.hpp"

#include <algorithm>
#include <cmath>

namespace swarm {

long wait_time(const LocalParams& p, double intensity) {
    return p.base_wait + std::lround(p.wait_gain * intensity);
}

namespace {

// About-face with a seeded wobble so rings of mutually waiting robots break
// up instead of re-colliding head on.
MotionCommand enter_avoiding(LocalState& st, const LocalParams& p,
                             RandomStream& rng) {
    st.mode = LocalState::Mode::Avoiding;
    st.avoid_remaining = std::max(1, p.avoid_ticks);
    const double half = p.turn_angle_range * 0.5;
    MotionCommand cmd;
    cmd.turn = 3.141592653589793 + rng.uniform(-half, half);
    cmd.forward = 1.0;
    return cmd;
}

}  // namespace

MotionCommand local_step(LocalState& st, const LocalParams& p, bool encounter,
                         double intensity, const StepContext& ctx) {
    switch (st.mode) {
        case LocalState::Mode::Waiting:
            if (--st.wait_remaining <= 0)
                return enter_avoiding(st, p, *ctx.rng);
            return {};  // hold still
        case LocalState::Mode::Avoiding: {
            MotionCommand cmd;
            cmd.forward = 1.0;
            if (--st.avoid_remaining <= 0)
                st.mode = LocalState::Mode::Wandering;
            return cmd;
        }
        case LocalState::Mode::Wandering:
            break;
    }
    if (encounter) {
        const long wait = wait_time(p, intensity);
        if (wait > 0) {
            st.mode = LocalState::Mode::Waiting;
            st.wait_remaining = wait;
            return {};
        }
        // Nothing to wait for in the dark; just turn away.
        return enter_avoiding(st, p, *ctx.rng);
    }
    // Random walk: straight with occasional turns.  Both draws always
    // happen so the consumed stream shape does not depend on turn_prob.
    MotionCommand cmd;
    cmd.forward = 1.0;
    const double roll = ctx.rng->u01();
    const double half = p.turn_angle_range * 0.5;
    const double angle = ctx.rng->uniform(-half, half);
    if (roll < p.turn_prob) cmd.turn = angle;
    return cmd;
}

}  // namespace swarm
