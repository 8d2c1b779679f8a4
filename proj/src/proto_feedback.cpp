#include "swarm/proto_feedback.hpp"

namespace swarm {

namespace {

// Ledger keys: requests and engages are per-scout floods.
constexpr std::uint16_t kRequestKey = 0;
constexpr std::uint16_t kEngageKey = 1;

MotionCommand wander(const FeedbackParams& p, RandomStream& rng) {
    MotionCommand cmd;
    cmd.forward = 1.0;
    const double roll = rng.u01();
    const double half = p.turn_angle_range * 0.5;
    const double angle = rng.uniform(-half, half);
    if (roll < p.turn_prob) cmd.turn = angle;
    return cmd;
}

MotionCommand steer_to(Vec2 target, const StepContext& ctx) {
    MotionCommand cmd;
    cmd.forward = 1.0;
    cmd.turn = angle_diff(heading_of(target - ctx.pose.position),
                          ctx.pose.heading);
    return cmd;
}

}  // namespace

MotionCommand scout_step(FeedbackState& st, const FeedbackParams& p,
                         bool found_object, const StepContext& ctx) {
    const long t = ctx.tick;
    for (const Message& m : ctx.inbox) {
        const FeedbackMsg* f = std::get_if<FeedbackMsg>(&m.body);
        if (!f) {
            ++st.dropped;
            continue;
        }
        // Only feedback addressed to this scout matters; its own request and
        // engage floods echo back and are ignored.
        if (f->kind == FeedbackMsg::Kind::Feedback && m.to == ctx.self &&
            f->scout == ctx.self && st.mode == FeedbackState::Mode::Requesting) {
            if (st.responders.insert(f->responder).second)
                ctx.log->push(t, ctx.self, Ev::FbFeedbackRecv, ctx.self,
                              f->responder);
        }
    }

    switch (st.mode) {
        case FeedbackState::Mode::Searching:
            if (!found_object) {
                st.requested_here = false;
                return wander(p, *ctx.rng);
            }
            if (st.requested_here) return wander(p, *ctx.rng);
            st.mode = FeedbackState::Mode::Requesting;
            st.deadline = t + p.request_timeout;
            st.responders.clear();
            st.requested_here = true;
            ctx.outbox->push_back(
                {ctx.self, -1,
                 FeedbackMsg{FeedbackMsg::Kind::Request, p.capability,
                             ctx.self, 0, -1}});
            ctx.log->push(t, ctx.self, Ev::FbRequestSent, ctx.self);
            return {};  // halt so the reverse path stays valid
        case FeedbackState::Mode::Requesting:
            if (t >= st.deadline) {
                if (static_cast<int>(st.responders.size()) >=
                    p.min_responders) {
                    st.mode = FeedbackState::Mode::Waiting;
                    ctx.log->push(t, ctx.self, Ev::FbWaiting, ctx.self,
                                  static_cast<int>(st.responders.size()));
                    ctx.outbox->push_back(
                        {ctx.self, -1,
                         FeedbackMsg{FeedbackMsg::Kind::Engage, p.capability,
                                     ctx.self, 0, -1}});
                    ctx.log->push(t, ctx.self, Ev::FbEngageSent, ctx.self);
                } else {
                    st.mode = FeedbackState::Mode::Searching;
                    ctx.log->push(t, ctx.self, Ev::FbResumed, ctx.self,
                                  static_cast<int>(st.responders.size()));
                }
            }
            return {};
        case FeedbackState::Mode::Waiting: {
            bool all_here = !st.responders.empty();
            for (int r : st.responders)
                if (!(ctx.prox_mask >> r & 1)) all_here = false;
            if (all_here) {
                st.mode = FeedbackState::Mode::Teamed;
                ctx.log->push(t, ctx.self, Ev::FbTeamed, ctx.self,
                              static_cast<int>(st.responders.size()));
            }
            return {};
        }
        default:
            return {};
    }
}

void relay_step(FeedbackState& st, const StepContext& ctx) {
    const long t = ctx.tick;
    for (const Message& m : ctx.inbox) {
        const FeedbackMsg* f = std::get_if<FeedbackMsg>(&m.body);
        if (!f) {
            ++st.dropped;
            continue;
        }
        switch (f->kind) {
            case FeedbackMsg::Kind::Request:
                if (st.seen.insert(kRequestKey,
                                   static_cast<std::uint8_t>(f->scout))) {
                    // First acceptance fixes the reverse path.
                    st.reverse_hop.emplace(f->scout, m.from);
                    FeedbackMsg fwd = *f;
                    ++fwd.hop;
                    ctx.outbox->push_back({ctx.self, -1, std::move(fwd)});
                    ctx.log->push(t, ctx.self, Ev::FbRequestRelay, f->scout);
                }
                break;
            case FeedbackMsg::Kind::Feedback: {
                if (m.to != ctx.self) break;
                auto hop = st.reverse_hop.find(f->scout);
                if (hop == st.reverse_hop.end()) {
                    ++st.drops;
                    ctx.log->push(t, ctx.self, Ev::FbDrop, f->scout);
                    break;
                }
                ctx.outbox->push_back({ctx.self, hop->second, *f});
                ctx.log->push(t, ctx.self, Ev::FbFeedbackRelay, f->scout);
                break;
            }
            case FeedbackMsg::Kind::Engage:
                if (st.seen.insert(kEngageKey,
                                   static_cast<std::uint8_t>(f->scout))) {
                    ctx.outbox->push_back({ctx.self, -1, *f});
                    ctx.log->push(t, ctx.self, Ev::FbEngageRelay, f->scout);
                }
                break;
        }
    }
}

MotionCommand responder_step(FeedbackState& st,
                             const std::set<std::string>& capabilities,
                             const StepContext& ctx) {
    const long t = ctx.tick;
    for (const Message& m : ctx.inbox) {
        const FeedbackMsg* f = std::get_if<FeedbackMsg>(&m.body);
        if (!f) continue;  // relay_step counts these
        if (f->kind == FeedbackMsg::Kind::Request && f->scout != ctx.self &&
            capabilities.count(f->capability) &&
            !st.fed_back.count(f->scout)) {
            st.fed_back.insert(f->scout);
            // Answer once, back the way the request came.
            ctx.outbox->push_back(
                {ctx.self, m.from,
                 FeedbackMsg{FeedbackMsg::Kind::Feedback, f->capability,
                             f->scout, 0, ctx.self}});
            ctx.log->push(t, ctx.self, Ev::FbFeedbackSent, f->scout);
        }
        if (f->kind == FeedbackMsg::Kind::Engage &&
            st.fed_back.count(f->scout) &&
            st.mode != FeedbackState::Mode::Engaged) {
            st.mode = FeedbackState::Mode::Engaged;
            st.engaged_scout = f->scout;
            ctx.log->push(t, ctx.self, Ev::FbEngaged, f->scout);
        }
    }

    if (st.mode != FeedbackState::Mode::Engaged) return {};
    const int scout = st.engaged_scout;
    if (ctx.prox_mask >> scout & 1) return {};  // arrived, hold position
    if (ctx.comm_mask >> scout & 1)
        return steer_to(ctx.poses[static_cast<std::size_t>(scout)].position,
                        ctx);
    // Out of range of the scout: head for the neighbor the request came
    // from; the chain of reverse hops leads there.
    auto hop = st.reverse_hop.find(scout);
    const int via = hop == st.reverse_hop.end() ? scout : hop->second;
    return steer_to(ctx.poses[static_cast<std::size_t>(via)].position, ctx);
}

MotionCommand feedback_step(FeedbackState& st, const FeedbackParams& p,
                            const std::set<std::string>& capabilities,
                            const StepContext& ctx) {
    if (st.is_scout) return scout_step(st, p, ctx.found_object, ctx);
    MotionCommand cmd = responder_step(st, capabilities, ctx);
    relay_step(st, ctx);
    return cmd;
}

}  // namespace swarm
