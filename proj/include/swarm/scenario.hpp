#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "swarm/arena.hpp"
#include "swarm/experiments.hpp"

namespace swarm::scenario {

// Anything wrong with a config file: unknown section/key, bad value, missing
// required key, inconsistent geometry.  Message includes the line number when
// one applies.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Placement { Random, Chain, Grid };
enum class Proto { Local, Street, Feedback };

// A fully-resolved scenario: every field has its final value, so serializing
// and re-parsing it reproduces the run bit for bit.
struct Scenario {
    ArenaConfig arena;

    int count = 0;
    Placement placement = Placement::Random;
    double spacing = 0.0;  // chain pitch; 0 means 0.6 * comm_radius
    std::vector<int> capable;
    double capable_fraction = 0.0;

    std::vector<LightSource> lights;
    std::optional<Vec2> anchor;  // cluster metric reference; default: light 0
    std::vector<Vec2> landmarks;

    Proto proto = Proto::Local;
    LocalParams local;
    StreetParams street;
    int inject_landmark = 0;  // landmark that emits the seed frame
    long inject_tick = 0;
    FeedbackParams feedback;
    int scout = 0;
    std::optional<Vec2> resource;

    long ticks = 0;
    long cluster_every = 0;  // clusters.csv cadence; 0 disables the file
    long sample_every = 10;  // cluster_fraction sampling stride
    std::vector<std::string> metrics;  // restrict metrics.csv; empty = all
};

// Parse + validate.  Unknown sections or keys, duplicate scalar keys, and
// values that fail validation all throw ConfigError.
Scenario parse_config(std::istream& in);
Scenario parse_config_file(const std::string& path);

// Canonical INI form of a resolved scenario.  Round-trips through
// parse_config to an identical Scenario.
void write_resolved(std::ostream& os, const Scenario& s);

// Construct the world: placement, lights, landmarks, resource, capabilities,
// protocol.  Does not step.
World build_world(const Scenario& s);

struct RunResult {
    bool complete = true;                   // protocol reached its milestone
    std::map<std::string, double> metrics;  // name -> value, sorted
};

// Step the world through the whole scenario.  `clusters`, when non-null,
// receives the clusters.csv body (header included).
RunResult execute(const Scenario& s, World& w, std::ostream* clusters);

// Full file-writing run: events.csv, metrics.csv, clusters.csv (when
// enabled), resolved.ini under out_dir.  Creates out_dir if missing.
RunResult run_scenario(const Scenario& s, const std::string& out_dir);

// One row per (n, seed, metric); failed cells get a single `incomplete_run`
// row instead of their metrics.
experiments::ExperimentResult sweep(const Scenario& base,
                                    const std::vector<int>& n_values,
                                    const std::vector<std::uint64_t>& seeds);

}  // namespace swarm::scenario
