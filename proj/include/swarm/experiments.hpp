#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "swarm/arena.hpp"

namespace swarm::experiments {

// ln(n)/n — the qualitative swarm-capability curve.  Zero at n=1, integer
// peak at n=3, strictly decreasing from there.  Throws for n < 1.
double capability_model(int n);
int capability_argmax(int max_n);  // argmax over integers [1, max_n]

struct ResultRow {
    std::string scenario;
    int n = 0;
    std::uint64_t seed = 0;
    std::string metric;
    double value = 0.0;
};

// Sweep output: one row per (n, seed, metric), assembled in deterministic
// (scenario, n, seed, metric) order.
struct ExperimentResult {
    std::vector<ResultRow> rows;
    void add(std::string scenario, int n, std::uint64_t seed,
             std::string metric, double value);
    void sort();
    void append(const ExperimentResult& other);
};

// CSV with header: scenario,n,seed,metric,value.
void write_results_csv(std::ostream& os, const ExperimentResult& result);

struct SampleStats {
    int count = 0;
    double mean = 0.0;
    double var = 0.0;  // sample variance (n-1)
};

SampleStats metric_stats(const ExperimentResult& result,
                         const std::string& scenario, int n,
                         const std::string& metric);

// Two-sample pooled standard error of the difference of means.
double pooled_se(const SampleStats& a, const SampleStats& b);

// Scatter robots uniformly with random headings.  Draws from a stream
// salted away from the world's motion stream, which starts at the same seed.
void place_random(World& w, std::uint64_t seed);

// ---------------------------------------------------------------- aggregation

struct AggregationSpec {
    std::string scenario = "aggregation";
    ArenaConfig arena;
    LocalParams local;
    LightSource light;    // its position anchors the cluster metric
    bool light_on = true; // false = control run, anchor kept
    bool relocate = false;
    Vec2 relocate_to;
    long relocate_tick = 0;
    std::vector<int> n_values;
    std::vector<std::uint64_t> seeds;
    long ticks = 2500;
    int sample_every = 10;  // metric sampling cadence in the final quarter
};

// Fraction of the swarm inside the proximity-radius component that contains
// `anchor` (the anchor joins the graph as a virtual node), at this instant.
double anchored_cluster_fraction(const World& w, Vec2 anchor);

// One cell: random placement, full run, metric averaged over the final
// quarter.  Relocation moves the light — and the metric anchor — mid-run.
double run_aggregation(const AggregationSpec& spec, int n, std::uint64_t seed);

// Metric rows: cluster_fraction.
ExperimentResult run_aggregation_sweep(const AggregationSpec& spec);

// --------------------------------------------------------------------- street

struct StreetSpec {
    std::string scenario = "street";
    ArenaConfig arena;  // width grows as needed to fit the chain
    StreetParams street;
    std::vector<int> n_values;
    std::vector<std::uint64_t> seeds;
    long ticks = 200;
    double spacing_frac = 0.6;  // chain spacing as a fraction of comm radius
};

// Chain placement, counter-0 frame injected off one end, landmark at the
// other.  Metric rows per completed cell: build_rounds, ok_rounds,
// propagation_rounds, street_length, bfs_distance, completed=1.  A cell
// whose street never finishes yields the failure row incomplete_run=1.
ExperimentResult run_street_benchmark(const StreetSpec& spec);

// ------------------------------------------------------------------- feedback

struct FeedbackSpec {
    std::string scenario = "feedback";
    ArenaConfig arena;  // width grows as needed to fit the chain
    FeedbackParams feedback;
    std::vector<int> n_values;
    std::vector<std::uint64_t> seeds;
    long ticks = 200;
    double spacing_frac = 0.6;
    std::vector<int> capable_ids;   // explicit capable set, or:
    double capable_fraction = 0.0;  // last ceil(f*(n-1)) non-scouts
    int detached_count = 0;  // robots at the far end cut off from the rest
};

struct FeedbackOutcome {
    int responders_confirmed = 0;
    bool teamed = false;
    bool resumed = false;
    long latency_rounds = -1;  // first request -> first feedback received
};

// One cell on a chain: scout is robot 0, sitting on the resource.
FeedbackOutcome run_feedback_chain(const FeedbackSpec& spec, int n,
                                   std::uint64_t seed);

// Metric rows: responders_confirmed, outcome_teamed, feedback_latency_rounds.
ExperimentResult run_feedback_scenario(const FeedbackSpec& spec);

// ---------------------------------------------------------------------- shape

// True iff the per-n seed means of `metric` rise from the smallest n to an
// interior maximum and do not rise again past it beyond one pooled standard
// error.  Throws std::invalid_argument on fewer than 4 distinct n values or
// fewer than 20 seeds for any of them.
bool unimodality_check(const ExperimentResult& result,
                       const std::string& metric);

}  // namespace swarm::experiments
