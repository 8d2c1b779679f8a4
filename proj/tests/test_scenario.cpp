#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <sstream>
#include <string>

#include "swarm/scenario.hpp"

using namespace swarm;
using namespace swarm::scenario;

namespace {

Scenario parse_str(const std::string& text) {
    std::istringstream in(text);
    return parse_config(in);
}

std::string resolved(const Scenario& s) {
    std::ostringstream os;
    write_resolved(os, s);
    return os.str();
}

template <typename F>
std::string config_msg(F&& f) {
    try {
        f();
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "<no ConfigError>";
}

const std::string kStreetIni =
    "[arena]\n"
    "width = 4\n"
    "height = 2\n"
    "comm_radius = 0.5\n"
    "dist_noise = 0\n"
    "rot_noise = 0\n"
    "seed = 9\n"
    "[robots]\n"
    "count = 6\n"
    "placement = chain\n"
    "spacing = 0.3\n"
    "[landmarks]\n"
    "landmark = 0.95 1\n"
    "landmark = 2.75 1\n"
    "[protocol]\n"
    "name = street\n"
    "inject_landmark = 0\n"
    "[run]\n"
    "ticks = 120\n";

const std::string kFeedbackIni =
    "[arena]\n"
    "width = 4\n"
    "height = 2\n"
    "dist_noise = 0\n"
    "rot_noise = 0\n"
    "seed = 9\n"
    "[robots]\n"
    "count = 6\n"
    "placement = chain\n"
    "capable_fraction = 0.4\n"
    "[protocol]\n"
    "name = feedback\n"
    "scout = 0\n"
    "resource = 1.25 1\n"
    "turn_prob = 0\n"
    "[run]\n"
    "ticks = 60\n";

const std::string kLocalIni =
    "[arena]\n"
    "seed = 5\n"
    "[robots]\n"
    "count = 3\n"
    "placement = random\n"
    "[lights]\n"
    "light = 1 1 1 0.8\n"
    "[protocol]\n"
    "name = local\n"
    "[run]\n"
    "ticks = 200\n";

}  // namespace

TEST_CASE("defaults are resolved at parse time") {
    const Scenario s = parse_str(
        "# a comment\n"
        "[robots]\n"
        "count = 3\n"
        "; another comment style\n"
        "[protocol]\n"
        "name = local\n"
        "[run]\n"
        "ticks   =   10\n");
    CHECK(s.count == 3);
    CHECK(s.ticks == 10);
    CHECK(s.placement == Placement::Random);
    CHECK(s.proto == Proto::Local);
    CHECK(s.arena.width == 2.0);
    CHECK(s.arena.comm_radius == 0.5);
    CHECK(s.arena.seed == 1);
    CHECK(s.spacing == doctest::Approx(0.3));  // 0.6 * comm_radius
    CHECK(s.sample_every == 10);
    CHECK(s.cluster_every == 0);
    CHECK_FALSE(s.anchor.has_value());
    CHECK(s.metrics.empty());
}

TEST_CASE("lights repeat and the first one anchors the cluster metric") {
    const Scenario s = parse_str(
        "[robots]\n"
        "count = 4\n"
        "[lights]\n"
        "light = 0.5 0.5 2 0.8\n"
        "light = 1.5 1.5 1 0.4\n"
        "[protocol]\n"
        "name = local\n"
        "wait_gain = 0.002\n"
        "[run]\n"
        "ticks = 50\n");
    REQUIRE(s.lights.size() == 2);
    CHECK(s.lights[0].peak_intensity == 2.0);
    CHECK(s.lights[1].falloff_radius == 0.4);
    REQUIRE(s.anchor.has_value());
    CHECK(s.anchor->x == 0.5);
    CHECK(s.anchor->y == 0.5);
    CHECK(s.local.wait_gain == 0.002);
}

TEST_CASE("explicit capable list parses") {
    const Scenario s = parse_str(
        "[robots]\n"
        "count = 6\n"
        "capable = 1,3\n"
        "[protocol]\n"
        "name = feedback\n"
        "resource = 1 1\n"
        "[run]\n"
        "ticks = 20\n");
    CHECK(s.capable == std::vector<int>{1, 3});
    CHECK(s.resource.has_value());
}

TEST_CASE("resolved output is a fixed point of parse") {
    for (const std::string* ini : {&kStreetIni, &kFeedbackIni, &kLocalIni}) {
        const std::string once = resolved(parse_str(*ini));
        const std::string twice = resolved(parse_str(once));
        CHECK(once == twice);
        CHECK(once.find("[arena]") != std::string::npos);
        CHECK(once.find("[protocol]") != std::string::npos);
    }
}

TEST_CASE("lexical errors carry line numbers") {
    CHECK(config_msg([] { parse_str("[arena\n"); }) ==
          "line 1: malformed section header");
    CHECK(config_msg([] { parse_str("width = 2\n"); }) ==
          "line 1: key before any section");
    CHECK(config_msg([] { parse_str("[arena]\njunk\n"); }) ==
          "line 2: expected key = value");
    CHECK(config_msg([] { parse_str("[]\n"); }) == "line 1: empty section name");
    CHECK(config_msg([] {
              parse_str("[protocol]\nname = local\n[junk]\nx = 1\n");
          }) == "line 3: unknown section [junk]");
}

TEST_CASE("a protocol name is mandatory and checked early") {
    CHECK(config_msg([] { parse_str(""); }) == "[protocol] name is required");
    CHECK(config_msg([] { parse_str("[protocol]\nname = psychic\n"); }) ==
          "line 2: unknown protocol 'psychic'");
    CHECK(config_msg([] {
              parse_str("[protocol]\nname = local\nname = street\n");
          }) == "line 3: duplicate key 'name'");
}

TEST_CASE("field-level validation messages") {
    auto with_skeleton = [](const std::string& robots_extra) {
        return "[robots]\ncount = 3\n" + robots_extra +
               "[protocol]\nname = local\n[run]\nticks = 10\n";
    };
    CHECK(config_msg([&] { parse_str(with_skeleton("count = 4\n")); }) ==
          "line 3: duplicate key 'count'");
    CHECK(config_msg([] {
              parse_str("[arena]\nwidth = abc\n[robots]\ncount = 3\n"
                        "[protocol]\nname = local\n[run]\nticks = 10\n");
          }) == "line 2: bad number 'abc' for width");
    CHECK(config_msg([] {
              parse_str("[robots]\ncount = 2.5\n"
                        "[protocol]\nname = local\n[run]\nticks = 10\n");
          }) == "line 2: bad integer '2.5' for count");
    CHECK(config_msg([] {
              parse_str("[arena]\nseed = -3\n[robots]\ncount = 3\n"
                        "[protocol]\nname = local\n[run]\nticks = 10\n");
          }) == "line 2: bad seed '-3'");
    CHECK(config_msg([] {
              parse_str("[robots]\ncount = 65\n"
                        "[protocol]\nname = local\n[run]\nticks = 10\n");
          }) == "line 2: count must be in 1..64");
    CHECK(config_msg([] {
              parse_str("[robots]\ncount = 3\nplacement = ring\n"
                        "[protocol]\nname = local\n[run]\nticks = 10\n");
          }) == "line 3: placement must be random, chain, or grid");
    CHECK(config_msg([] {
              parse_str("[arena]\nwidht = 2\n[robots]\ncount = 3\n"
                        "[protocol]\nname = local\n[run]\nticks = 10\n");
          }) == "line 2: unknown key 'widht' in [arena]");
    CHECK(config_msg([] {
              parse_str("[robots]\ncount = 3\n[protocol]\nname = local\n"
                        "n_threshold = 5\n[run]\nticks = 10\n");
          }) == "line 5: key 'n_threshold' is not valid for this protocol");
    CHECK(config_msg([] {
              parse_str("[robots]\ncount = 3\n[protocol]\nname = street\n"
                        "invert_gradient = maybe\n[landmarks]\n"
                        "landmark = 1 1\n[run]\nticks = 10\n");
          }) == "line 5: bad boolean 'maybe' for invert_gradient");
}

TEST_CASE("cross-field validation messages") {
    CHECK(config_msg([] {
              parse_str("[robots]\ncount = 5\ncapable = 1,2\n"
                        "capable_fraction = 0.5\n"
                        "[protocol]\nname = feedback\nresource = 1 1\n"
                        "[run]\nticks = 10\n");
          }) == "capable and capable_fraction are exclusive");
    CHECK(config_msg([] {
              parse_str("[robots]\ncount = 3\n[protocol]\nname = street\n"
                        "[run]\nticks = 10\n");
          }) == "street protocol needs at least one landmark");
    CHECK(config_msg([] {
              parse_str("[robots]\ncount = 3\n[landmarks]\nlandmark = 1 1\n"
                        "[protocol]\nname = street\ninject_landmark = 3\n"
                        "[run]\nticks = 10\n");
          }) == "inject_landmark out of range");
    CHECK(config_msg([] {
              parse_str("[robots]\ncount = 3\n[landmarks]\nlandmark = 1 1\n"
                        "[protocol]\nname = street\ninject_tick = 10\n"
                        "[run]\nticks = 10\n");
          }) == "inject_tick must be before the run ends");
    CHECK(config_msg([] {
              parse_str("[robots]\ncount = 3\n[protocol]\nname = feedback\n"
                        "[run]\nticks = 10\n");
          }) == "feedback protocol needs a resource position");
    CHECK(config_msg([] {
              parse_str("[robots]\ncount = 3\n[protocol]\nname = local\n"
                        "[run]\nticks = 10\nmetrics = completed\n");
          }) == "unknown metric 'completed' for this protocol");
    CHECK(config_msg([] {
              parse_str("[arena]\nwidth = -1\n[robots]\ncount = 3\n"
                        "[protocol]\nname = local\n[run]\nticks = 10\n");
          }) == "arena config: width must be > 0");
    CHECK(config_msg([] {
              parse_str("[protocol]\nname = local\n[run]\nticks = 10\n");
          }) == "[robots] count is required");
    CHECK(config_msg([] {
              parse_str("[robots]\ncount = 3\n[protocol]\nname = local\n");
          }) == "[run] ticks is required");
    const std::string missing =
        config_msg([] { parse_config_file("/nonexistent/swarm.ini"); });
    CHECK(missing.rfind("cannot read config file: ", 0) == 0);
}

TEST_CASE("count-dependent validation happens when the world is built") {
    Scenario chain = parse_str(kStreetIni);
    chain.count = 20;  // 19 * 0.3 no longer fits a width-4 arena
    CHECK(config_msg([&] { build_world(chain); }) ==
          "chain span exceeds arena width");

    Scenario cap = parse_str(
        "[robots]\ncount = 3\ncapable = 5\n"
        "[protocol]\nname = feedback\nresource = 1 1\n[run]\nticks = 10\n");
    CHECK(config_msg([&] { build_world(cap); }) == "capable id out of range");

    Scenario scout = parse_str(
        "[robots]\ncount = 3\n[protocol]\nname = feedback\nscout = 7\n"
        "resource = 1 1\n[run]\nticks = 10\n");
    CHECK(config_msg([&] { build_world(scout); }) == "scout id out of range");
}

TEST_CASE("chain placement is centered with default spacing") {
    const Scenario s = parse_str(
        "[arena]\nwidth = 4\nheight = 2\n"
        "[robots]\ncount = 6\nplacement = chain\n"
        "[protocol]\nname = local\n[run]\nticks = 10\n");
    World w = build_world(s);
    for (int i = 0; i < 6; ++i) {
        CHECK(w.pose(i).position.x == doctest::Approx(1.25 + 0.3 * i));
        CHECK(w.pose(i).position.y == doctest::Approx(1.0));
        CHECK(w.pose(i).heading == 0.0);
    }
}

TEST_CASE("grid placement fills cell centers row-major") {
    const Scenario s = parse_str(
        "[arena]\nwidth = 3\nheight = 2\n"
        "[robots]\ncount = 6\nplacement = grid\n"
        "[protocol]\nname = local\n[run]\nticks = 10\n");
    World w = build_world(s);
    const Vec2 expect[6] = {{0.5, 0.5}, {1.5, 0.5}, {2.5, 0.5},
                            {0.5, 1.5}, {1.5, 1.5}, {2.5, 1.5}};
    for (int i = 0; i < 6; ++i) {
        CHECK(w.pose(i).position.x == doctest::Approx(expect[i].x));
        CHECK(w.pose(i).position.y == doctest::Approx(expect[i].y));
    }
}

TEST_CASE("random placement is a pure function of the seed") {
    const Scenario s = parse_str(kLocalIni);
    World a = build_world(s);
    World b = build_world(s);
    Scenario other = s;
    other.arena.seed = 6;
    World c = build_world(other);
    bool any_diff = false;
    for (int i = 0; i < s.count; ++i) {
        CHECK(a.pose(i).position.x == b.pose(i).position.x);
        CHECK(a.pose(i).position.y == b.pose(i).position.y);
        CHECK(a.pose(i).heading == b.pose(i).heading);
        any_diff = any_diff || a.pose(i).position.x != c.pose(i).position.x;
    }
    CHECK(any_diff);
}

TEST_CASE("capable_fraction grants the highest non-scout ids") {
    const Scenario s = parse_str(kFeedbackIni);
    World w = build_world(s);  // ceil(0.4 * 5) = 2 -> robots 4 and 5
    CHECK(w.robot(5).capabilities.count("color_sensor") == 1);
    CHECK(w.robot(4).capabilities.count("color_sensor") == 1);
    CHECK(w.robot(3).capabilities.empty());
    CHECK(w.robot(0).capabilities.empty());
}

TEST_CASE("a street scenario runs to completion with chain metrics") {
    const Scenario s = parse_str(kStreetIni);
    World w = build_world(s);
    const RunResult r = execute(s, w, nullptr);
    CHECK(r.complete);
    CHECK(r.metrics.at("completed") == 1.0);
    CHECK(r.metrics.at("street_length") == 6.0);
    CHECK(r.metrics.at("build_rounds") == 5.0);
    CHECK(r.metrics.at("ok_rounds") == 5.0);
    CHECK(r.metrics.at("propagation_rounds") == 5.0);
    CHECK(r.metrics.at("bfs_distance") == 5.0);
}

TEST_CASE("the metrics list filters the output table") {
    Scenario s = parse_str(kStreetIni);
    s.metrics = {"completed", "street_length"};  // kept sorted by the parser
    World w = build_world(s);
    const RunResult r = execute(s, w, nullptr);
    CHECK(r.metrics.size() == 2);
    CHECK(r.metrics.count("completed") == 1);
    CHECK(r.metrics.count("street_length") == 1);
}

TEST_CASE("a feedback scenario confirms its responders") {
    const Scenario s = parse_str(kFeedbackIni);
    World w = build_world(s);
    const RunResult r = execute(s, w, nullptr);
    CHECK(r.complete);
    CHECK(r.metrics.at("responders_confirmed") == 2.0);
    CHECK(r.metrics.at("resumed") == 0.0);
}

TEST_CASE("cluster rows follow the requested cadence") {
    Scenario s = parse_str(kLocalIni);
    s.ticks = 10;
    s.cluster_every = 5;
    World w = build_world(s);
    std::ostringstream cl;
    execute(s, w, &cl);
    std::istringstream in(cl.str());
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line == "tick,component_index,size,label");
    int rows = 0;
    while (std::getline(in, line)) {
        const std::string tick = line.substr(0, line.find(','));
        CHECK((tick == "0" || tick == "5" || tick == "10"));
        ++rows;
    }
    CHECK(rows >= 3);
}

TEST_CASE("sweeps label cells and replay identically") {
    const Scenario base = parse_str(kLocalIni);
    const auto a = scenario::sweep(base, {3, 5}, {1, 2});
    const auto b = scenario::sweep(base, {3, 5}, {1, 2});
    REQUIRE(a.rows.size() == 4);
    REQUIRE(b.rows.size() == 4);
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        CHECK(a.rows[i].scenario == "aggregation");
        CHECK(a.rows[i].metric == "cluster_fraction");
        CHECK(a.rows[i].n == b.rows[i].n);
        CHECK(a.rows[i].seed == b.rows[i].seed);
        CHECK(a.rows[i].value == b.rows[i].value);
    }
    CHECK(a.rows[0].n == 3);
    CHECK(a.rows[0].seed == 1);
    CHECK(a.rows[3].n == 5);
    CHECK(a.rows[3].seed == 2);
}

TEST_CASE("a sweep cell that cannot build its world fails alone") {
    const Scenario base = parse_str(kStreetIni);
    const auto r = scenario::sweep(base, {6, 20}, {1});
    int complete_rows = 0, failure_rows = 0;
    for (const auto& row : r.rows) {
        CHECK(row.scenario == "street");
        if (row.metric == "incomplete_run") {
            CHECK(row.n == 20);
            CHECK(row.value == 1.0);
            ++failure_rows;
        } else {
            CHECK(row.n == 6);
            ++complete_rows;
        }
    }
    CHECK(failure_rows == 1);
    CHECK(complete_rows == 6);
    CHECK_THROWS_AS(scenario::sweep(base, {}, {1}), ConfigError);
    CHECK_THROWS_AS(scenario::sweep(base, {6}, {}), ConfigError);
}
