#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "swarm/arena.hpp"
#include "swarm/graph.hpp"
#include "swarm/proto_street.hpp"

using namespace swarm;

namespace {

ArenaConfig quiet_arena() {
    ArenaConfig cfg;
    cfg.dist_noise_frac = 0.0;
    cfg.rot_noise_frac = 0.0;
    return cfg;
}

// Chain along y=1 with 0.3 m pitch: comm (0.5) reaches one hop, never two.
World make_chain(int n, const StreetParams& p) {
    ArenaConfig cfg = quiet_arena();
    cfg.width = std::max(2.0, 0.5 + 0.3 * n);
    World w(cfg, n);
    for (int i = 0; i < n; ++i)
        w.set_pose(i, {{0.25 + 0.3 * i, 1.0}, 0.0});
    w.use_street(p);
    return w;
}

void seed_street(World& w, Vec2 at, int origin) {
    Message m;
    m.to = -1;
    m.body = StreetMsg{StreetMsg::Kind::BuildStreet, 0, origin, 0};
    w.inject(at, m);
}

}  // namespace

TEST_CASE("six-robot chain builds, confirms, and carries a payload") {
    World w = make_chain(6, StreetParams{});
    w.add_landmark({0.25 + 0.3 * 5, 1.0});  // goal sits on the far robot
    seed_street(w, {-0.2, 1.0}, 0);         // beacon reaches robot 0 only
    w.run(30);

    // counters 1..5 along the members, 6 on the terminus
    for (int i = 0; i < 5; ++i) {
        const StreetState& st = w.street_state(i);
        CHECK(st.role == StreetState::Role::Member);
        CHECK(st.counter == i + 1);
        CHECK(st.origin == 0);
        CHECK(st.upstream == i - 1);
        CHECK(st.downstream == i + 1);
        CHECK(st.acked);
    }
    const StreetState& term = w.street_state(5);
    CHECK(term.role == StreetState::Role::Terminus);
    CHECK(term.counter == 6);
    CHECK(w.street_state(0).complete);

    // timeline: inject/accept at t1, one hop per tick
    const Event* inj = w.log().first(Ev::StInject);
    REQUIRE(inj != nullptr);
    CHECK(inj->tick == 1);
    CHECK(inj->robot == 0);
    CHECK(w.log().count(Ev::StAccept) == 6);
    const Event* term_ev = w.log().first(Ev::StTerminus);
    REQUIRE(term_ev != nullptr);
    CHECK(term_ev->tick == 6);
    CHECK(term_ev->robot == 5);

    const StreetMetrics m = street_metrics(w.log());
    CHECK(m.build_rounds == 5);
    CHECK(m.ok_rounds == 5);
    CHECK(m.propagation_rounds == 5);
    CHECK(m.street_length == 6);

    // the build time equals the hop distance between the street's ends
    const auto g = w.comm_graph();
    CHECK(graph::bfs_distances(g, 0)[5] == 5);
    CHECK(m.build_rounds == graph::bfs_distances(g, 0)[5]);
}

TEST_CASE("chains up to fifteen robots complete") {
    for (int n : {10, 15}) {
        World w = make_chain(n, StreetParams{});
        w.add_landmark({0.25 + 0.3 * (n - 1), 1.0});
        seed_street(w, {-0.2, 1.0}, 0);
        w.run(4 * n + 20);
        const StreetMetrics m = street_metrics(w.log());
        CHECK(m.street_length == n);
        CHECK(m.build_rounds == n - 1);
        CHECK(m.ok_rounds == n - 1);
        CHECK(w.street_state(0).complete);
    }
}

TEST_CASE("a counter beyond the threshold terminates the street") {
    StreetParams p;
    p.n_threshold = 2;
    World w = make_chain(4, p);  // no landmark anywhere
    seed_street(w, {-0.2, 1.0}, 0);
    w.run(20);
    CHECK(w.street_state(0).role == StreetState::Role::Member);
    CHECK(w.street_state(1).role == StreetState::Role::Member);
    // counter 3 > threshold 2: the third robot closes the street
    CHECK(w.street_state(2).role == StreetState::Role::Terminus);
    CHECK(w.street_state(3).role == StreetState::Role::Free);
    CHECK(street_metrics(w.log()).street_length == 3);
    CHECK(w.street_state(0).complete);
}

TEST_CASE("a dead end times out into a terminus") {
    StreetParams p;
    p.build_timeout = 12;
    World w = make_chain(1, p);
    seed_street(w, {-0.2, 1.0}, 0);
    w.run(20);
    const StreetState& st = w.street_state(0);
    CHECK(st.role == StreetState::Role::Terminus);
    // head and terminus collapsed into one: no Ok can ever close the loop
    CHECK_FALSE(st.complete);
    const StreetMetrics m = street_metrics(w.log());
    CHECK(m.street_length == 1);
    CHECK(m.ok_rounds == -1);
    CHECK(m.propagation_rounds == -1);
}

TEST_CASE("two streets meeting end each other") {
    // right street floods first; a late left street hits its flank
    World w = make_chain(5, StreetParams{});
    seed_street(w, {0.25 + 0.3 * 4 + 0.45, 1.0}, 1);  // reaches robot 4 only
    w.step();
    w.step();
    seed_street(w, {-0.2, 1.0}, 0);  // reaches robot 0 only
    w.run(20);

    CHECK(w.log().count(Ev::StInject) == 2);
    // robot 1 accepts after robot 0 already joined street 0 while robot 2
    // belongs to street 1: whichever claim wins, the neighbor conflict makes
    // robot 1 a terminus.
    CHECK(w.street_state(1).role == StreetState::Role::Terminus);
    bool saw_terminus_1 = false;
    for (const Event& e : w.log().events())
        if (e.kind == Ev::StTerminus && e.robot == 1) saw_terminus_1 = true;
    CHECK(saw_terminus_1);
}

TEST_CASE("repeated floods do not re-claim members") {
    StreetParams p;
    p.resend_ticks = 2;
    World w = make_chain(3, p);
    w.add_landmark({0.25 + 0.3 * 2, 1.0});
    seed_street(w, {-0.2, 1.0}, 0);
    // a second identical injection a few ticks later must change nothing
    w.run(3);
    seed_street(w, {-0.2, 1.0}, 0);
    w.run(17);
    CHECK(w.log().count(Ev::StAccept) == 3);
    CHECK(w.log().count(Ev::StTerminus) == 1);
    CHECK(w.street_state(0).counter == 1);
    CHECK(w.street_state(1).counter == 2);
}

TEST_CASE("payload cycles repeat for extra confirmation rounds") {
    StreetParams p;
    p.confirm_cycles = 2;
    World w = make_chain(6, p);
    w.add_landmark({0.25 + 0.3 * 5, 1.0});
    seed_street(w, {-0.2, 1.0}, 0);
    w.run(50);
    CHECK(w.log().count(Ev::StPayloadArrive) == 2);
    CHECK(w.street_state(0).cycles_done == 2);
}

TEST_CASE("street members report navigation pings on schedule") {
    World w = make_chain(2, StreetParams{});
    w.add_landmark({0.55, 1.0});
    seed_street(w, {-0.2, 1.0}, 0);
    w.run(30);
    // robot 0 accepted at t1 with period 8: pings at 9, 17, 25
    long pings = 0;
    for (const Event& e : w.log().events())
        if (e.kind == Ev::StNavPing && e.robot == 0) {
            ++pings;
            CHECK((e.tick - 1) % 8 == 0);
        }
    CHECK(pings == 3);
}

TEST_CASE("gradient following picks the strongest counter") {
    const Vec2 me{0.0, 0.0};
    const Vec2 east{1.0, 0.0}, north{0.0, 1.0}, west{-1.0, 0.0};

    SUBCASE("exhaustive over small ping sets") {
        // positions and sender ids fixed; counters range over 1..5
        const Vec2 pos[3] = {east, north, west};
        const int ids[3] = {4, 2, 7};
        for (int k = 2; k <= 3; ++k) {
            std::vector<int> c(static_cast<std::size_t>(k), 1);
            while (true) {
                std::vector<NavPingSample> pings;
                for (int i = 0; i < k; ++i)
                    pings.push_back({c[static_cast<std::size_t>(i)],
                                     ids[i], pos[i]});
                // oracle: best counter, ties to the smallest sender id
                int best = 0;
                bool flat = true;
                for (int i = 1; i < k; ++i) {
                    if (c[static_cast<std::size_t>(i)] !=
                        c[0])
                        flat = false;
                    const bool better =
                        c[static_cast<std::size_t>(i)] >
                            c[static_cast<std::size_t>(best)] ||
                        (c[static_cast<std::size_t>(i)] ==
                             c[static_cast<std::size_t>(best)] &&
                         ids[i] < ids[best]);
                    if (better) best = i;
                }
                if (flat) {
                    CHECK_THROWS_AS(navigation_direction(pings, me),
                                    InsufficientGradient);
                } else {
                    const double got = navigation_direction(pings, me);
                    CHECK(got == heading_of(pos[best] - me));
                }
                // next counter tuple
                int i = k - 1;
                while (i >= 0 && c[static_cast<std::size_t>(i)] == 5) {
                    c[static_cast<std::size_t>(i)] = 1;
                    --i;
                }
                if (i < 0) break;
                ++c[static_cast<std::size_t>(i)];
            }
        }
    }

    SUBCASE("too little information") {
        std::vector<NavPingSample> none;
        CHECK_THROWS_AS(navigation_direction(none, me), InsufficientGradient);
        std::vector<NavPingSample> one = {{3, 1, east}};
        CHECK_THROWS_AS(navigation_direction(one, me), InsufficientGradient);
    }

    SUBCASE("inverted gradient walks toward the head") {
        std::vector<NavPingSample> pings = {{1, 1, east}, {4, 2, north}};
        CHECK(navigation_direction(pings, me) == heading_of(north));
        CHECK(navigation_direction(pings, me, true) == heading_of(east));
    }
}

TEST_CASE("metrics demand a finished street") {
    EventLog log;
    CHECK_THROWS_AS(street_metrics(log), IncompleteRun);
    log.push(3, 0, Ev::StAccept, 1);
    CHECK_THROWS_AS(street_metrics(log), IncompleteRun);
}
