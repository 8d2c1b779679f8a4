#include "swarm/proto_street.hpp"

#include <algorithm>

namespace swarm {

namespace {

void become_terminus(StreetState& st, const StepContext& ctx) {
    st.role = StreetState::Role::Terminus;
    st.acked = true;
    ctx.log->push(ctx.tick, ctx.self, Ev::StTerminus, st.counter);
    if (st.upstream >= 0) {
        ctx.outbox->push_back(
            {ctx.self, st.upstream,
             StreetMsg{StreetMsg::Kind::Ok, st.counter, st.origin, 0}});
        ctx.log->push(ctx.tick, ctx.self, Ev::StOk, st.counter);
    }
}

void send_payload(StreetState& st, const StepContext& ctx) {
    ctx.outbox->push_back(
        {ctx.self, st.downstream,
         StreetMsg{StreetMsg::Kind::Data, st.counter, st.origin, st.counter}});
    ctx.log->push(ctx.tick, ctx.self, Ev::StPayloadSend, st.counter);
}

void free_step(StreetState& st, const StreetParams& p, const StepContext& ctx) {
    // Several offers can land in one tick; take the shortest street,
    // breaking ties by sender id, so acceptance is deterministic.
    const Message* best = nullptr;
    const StreetMsg* offer = nullptr;
    for (const Message& m : ctx.inbox) {
        const StreetMsg* s = std::get_if<StreetMsg>(&m.body);
        if (!s) {
            ++st.dropped;
            continue;
        }
        if (s->kind != StreetMsg::Kind::BuildStreet) continue;
        if (!offer || s->n < offer->n ||
            (s->n == offer->n && m.from < best->from)) {
            best = &m;
            offer = s;
        }
    }
    if (!offer) return;

    st.counter = offer->n + 1;
    st.origin = offer->origin;
    st.upstream = best->from;
    st.accepted_tick = ctx.tick;
    if (st.upstream < 0)  // picked straight off a landmark injection
        ctx.log->push(ctx.tick, ctx.self, Ev::StInject, st.counter);
    ctx.log->push(ctx.tick, ctx.self, Ev::StAccept, st.counter);

    bool near_other_street = false;
    for (int o : ctx.neighbor_street_origins)
        if (o != st.origin) near_other_street = true;

    if (ctx.near_landmark || near_other_street || st.counter > p.n_threshold) {
        become_terminus(st, ctx);
        return;
    }
    st.role = StreetState::Role::Member;
    ctx.outbox->push_back(
        {ctx.self, -1,
         StreetMsg{StreetMsg::Kind::BuildStreet, st.counter, st.origin, 0}});
    st.last_send = ctx.tick;
}

void member_step(StreetState& st, const StreetParams& p,
                 const StepContext& ctx) {
    const long t = ctx.tick;
    for (const Message& m : ctx.inbox) {
        const StreetMsg* s = std::get_if<StreetMsg>(&m.body);
        if (!s) {
            ++st.dropped;
            continue;
        }
        if (s->origin != st.origin) continue;  // another street's traffic
        switch (s->kind) {
            case StreetMsg::Kind::BuildStreet:
                // A neighbor rebroadcasting counter+1 is our downstream
                // accepting; that is the acknowledgement we resend for.
                if (st.role == StreetState::Role::Member &&
                    st.downstream < 0 && s->n == st.counter + 1)
                    st.downstream = m.from;
                break;  // duplicates are ignored at non-Free robots
            case StreetMsg::Kind::Ok:
                if (m.to != ctx.self || st.role != StreetState::Role::Member)
                    break;
                st.acked = true;
                // An Ok always arrives from the next robot toward the
                // terminus, which a member bordering the terminus never
                // learned from a counter rebroadcast.
                if (st.downstream < 0) st.downstream = m.from;
                if (st.upstream >= 0) {
                    ctx.outbox->push_back(
                        {ctx.self, st.upstream,
                         StreetMsg{StreetMsg::Kind::Ok, s->n, st.origin, 0}});
                    ctx.log->push(t, ctx.self, Ev::StOk, st.counter);
                } else if (!st.complete) {
                    // Head of the street: the chain stands end to end.
                    st.complete = true;
                    ctx.log->push(t, ctx.self, Ev::StComplete, st.counter);
                    if (p.confirm_cycles > 0 && st.downstream >= 0)
                        send_payload(st, ctx);
                } else {
                    // A payload round trip came back.
                    if (++st.cycles_done < p.confirm_cycles &&
                        st.downstream >= 0)
                        send_payload(st, ctx);
                }
                break;
            case StreetMsg::Kind::Data:
                if (m.to != ctx.self) break;
                if (st.role == StreetState::Role::Terminus) {
                    ctx.log->push(t, ctx.self, Ev::StPayloadArrive, st.counter,
                                  s->payload);
                    if (st.upstream >= 0) {
                        ctx.outbox->push_back(
                            {ctx.self, st.upstream,
                             StreetMsg{StreetMsg::Kind::Ok, st.counter,
                                       st.origin, 0}});
                        ctx.log->push(t, ctx.self, Ev::StOk, st.counter);
                    }
                } else if (st.downstream >= 0) {
                    ctx.outbox->push_back(
                        {ctx.self, st.downstream,
                         StreetMsg{StreetMsg::Kind::Data, st.counter,
                                   st.origin, s->payload}});
                    ctx.log->push(t, ctx.self, Ev::StPayloadRelay, st.counter);
                } else {
                    ++st.dropped;  // payload hit a dead end
                }
                break;
            case StreetMsg::Kind::NavPing:
                break;  // consumed by navigating robots, not street members
        }
    }

    if (st.role == StreetState::Role::Member && st.downstream < 0 &&
        !st.acked) {
        if (t - st.accepted_tick >= p.build_timeout) {
            // Nobody out there to grow the street; close it here.
            become_terminus(st, ctx);
        } else if (t - st.last_send >= p.resend_ticks) {
            ctx.outbox->push_back(
                {ctx.self, -1,
                 StreetMsg{StreetMsg::Kind::BuildStreet, st.counter, st.origin,
                           0}});
            st.last_send = t;
        }
    }

    if (p.nav_ping_period > 0 && t > st.accepted_tick &&
        (t - st.accepted_tick) % p.nav_ping_period == 0) {
        ctx.outbox->push_back(
            {ctx.self, -1,
             StreetMsg{StreetMsg::Kind::NavPing, st.counter, st.origin, 0}});
        ctx.log->push(t, ctx.self, Ev::StNavPing, st.counter);
    }
}

}  // namespace

MotionCommand street_step(StreetState& st, const StreetParams& p,
                          const StepContext& ctx) {
    if (st.role == StreetState::Role::Free)
        free_step(st, p, ctx);
    else
        member_step(st, p, ctx);
    return {};  // street robots hold position
}

double navigation_direction(std::span<const NavPingSample> pings,
                            Vec2 my_position, bool invert) {
    if (pings.size() < 2)
        throw InsufficientGradient("need at least two pings");
    const NavPingSample* target = nullptr;
    bool flat = true;
    for (const NavPingSample& ping : pings) {
        if (ping.n != pings.front().n) flat = false;
        const bool better =
            !target ||
            (invert ? ping.n < target->n : ping.n > target->n) ||
            (ping.n == target->n && ping.sender < target->sender);
        if (better) target = &ping;
    }
    if (flat) throw InsufficientGradient("flat counter field");
    return heading_of(target->sender_pos - my_position);
}

StreetMetrics street_metrics(const EventLog& log) {
    const Event* terminus = log.first(Ev::StTerminus);
    if (!terminus) throw IncompleteRun("no terminus formed");
    const Event* inject = log.first(Ev::StInject);
    const Event* accept = log.first(Ev::StAccept);
    const long start = inject ? inject->tick
                              : (accept ? accept->tick : terminus->tick);

    StreetMetrics m;
    m.build_rounds = terminus->tick - start;
    m.street_length = static_cast<int>(log.count(Ev::StAccept));
    if (const Event* complete = log.first(Ev::StComplete))
        m.ok_rounds = complete->tick - terminus->tick;
    const Event* send = log.first(Ev::StPayloadSend);
    const Event* arrive = log.first(Ev::StPayloadArrive);
    if (send && arrive) m.propagation_rounds = arrive->tick - send->tick;
    return m;
}

}  // namespace swarm
