#include "swarm/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <stdexcept>

namespace swarm::experiments {

double capability_model(int n) {
    if (n < 1) throw std::invalid_argument("capability_model: n must be >= 1");
    return std::log(static_cast<double>(n)) / n;
}

int capability_argmax(int max_n) {
    int best = 1;
    for (int n = 2; n <= max_n; ++n)
        if (capability_model(n) > capability_model(best)) best = n;
    return best;
}

void ExperimentResult::add(std::string scenario, int n, std::uint64_t seed,
                           std::string metric, double value) {
    rows.push_back({std::move(scenario), n, seed, std::move(metric), value});
}

void ExperimentResult::sort() {
    std::stable_sort(rows.begin(), rows.end(),
                     [](const ResultRow& a, const ResultRow& b) {
                         return std::tie(a.scenario, a.n, a.seed, a.metric) <
                                std::tie(b.scenario, b.n, b.seed, b.metric);
                     });
}

void ExperimentResult::append(const ExperimentResult& other) {
    rows.insert(rows.end(), other.rows.begin(), other.rows.end());
}

void write_results_csv(std::ostream& os, const ExperimentResult& result) {
    os << "scenario,n,seed,metric,value\n";
    char buf[40];
    for (const ResultRow& r : result.rows) {
        std::snprintf(buf, sizeof buf, "%.10g", r.value);
        os << r.scenario << ',' << r.n << ',' << r.seed << ',' << r.metric
           << ',' << buf << '\n';
    }
}

SampleStats metric_stats(const ExperimentResult& result,
                         const std::string& scenario, int n,
                         const std::string& metric) {
    double sum = 0.0;
    int count = 0;
    for (const ResultRow& r : result.rows)
        if (r.scenario == scenario && r.n == n && r.metric == metric) {
            sum += r.value;
            ++count;
        }
    SampleStats s;
    s.count = count;
    if (count == 0) return s;
    s.mean = sum / count;
    double ss = 0.0;
    for (const ResultRow& r : result.rows)
        if (r.scenario == scenario && r.n == n && r.metric == metric) {
            const double d = r.value - s.mean;
            ss += d * d;
        }
    s.var = count > 1 ? ss / (count - 1) : 0.0;
    return s;
}

double pooled_se(const SampleStats& a, const SampleStats& b) {
    if (a.count < 2 || b.count < 2)
        throw std::invalid_argument("pooled_se: need at least 2 samples each");
    const double sp2 = ((a.count - 1) * a.var + (b.count - 1) * b.var) /
                       (a.count + b.count - 2);
    return std::sqrt(sp2 * (1.0 / a.count + 1.0 / b.count));
}

// Placement draws come from a stream decorrelated from the world's motion
// stream (which starts at the same seed).
static constexpr std::uint64_t kPlacementSalt = 0x9e3779b97f4a7c15ull;

void place_random(World& w, std::uint64_t seed) {
    RandomStream rng(seed ^ kPlacementSalt);
    const ArenaConfig& cfg = w.config();
    for (int i = 0; i < w.robot_count(); ++i) {
        Pose p;
        p.position = {rng.uniform(0.0, cfg.width),
                      rng.uniform(0.0, cfg.height)};
        p.heading = rng.uniform(0.0, two_pi);
        w.set_pose(i, p);
    }
}

namespace {

// Chain along the arena's horizontal midline.  Robot 0 sits `lead` in from
// the left edge; `gap_after` (id -> extra gap) makes split topologies.
double chain_x0(const ArenaConfig& cfg) { return 0.1 + 0.9 * cfg.comm_radius; }

void place_chain(World& w, double spacing, double extra_gap_before_tail,
                 int tail_count) {
    const ArenaConfig& cfg = w.config();
    const double y = cfg.height / 2.0;
    double x = chain_x0(cfg);
    const int n = w.robot_count();
    for (int i = 0; i < n; ++i) {
        if (tail_count > 0 && i == n - tail_count) x += extra_gap_before_tail;
        w.set_pose(i, {{x, y}, 0.0});
        x += spacing;
    }
}

// Widen a copy of the base config until the whole chain fits with margins.
ArenaConfig fit_chain(ArenaConfig cfg, int n, double spacing,
                      double extra_gap) {
    const double needed =
        chain_x0(cfg) + (n - 1) * spacing + extra_gap + 0.5 * cfg.comm_radius;
    cfg.width = std::max(cfg.width, needed + 0.1);
    return cfg;
}

}  // namespace

double anchored_cluster_fraction(const World& w, Vec2 anchor) {
    std::vector<Vec2> nodes = w.positions();
    const int n = static_cast<int>(nodes.size());
    nodes.push_back(anchor);
    const auto g = graph::build_graph(nodes, w.config().proximity_radius);
    for (const auto& comp : graph::components(g))
        if (std::find(comp.begin(), comp.end(), n) != comp.end())
            return static_cast<double>(comp.size() - 1) / n;
    return 0.0;
}

double run_aggregation(const AggregationSpec& spec, int n,
                       std::uint64_t seed) {
    ArenaConfig cfg = spec.arena;
    cfg.seed = seed;
    World w(cfg, n);
    place_random(w, seed);
    w.use_local(spec.local);
    if (spec.light_on) w.add_light(spec.light);
    Vec2 anchor = spec.light.position;

    const long start = spec.ticks - spec.ticks / 4;
    const int every = std::max(1, spec.sample_every);
    double acc = 0.0;
    long samples = 0;
    for (long t = 0; t < spec.ticks; ++t) {
        if (spec.relocate && t == spec.relocate_tick) {
            if (spec.light_on) w.set_light_position(0, spec.relocate_to);
            anchor = spec.relocate_to;
        }
        w.step();
        if (t >= start && (t - start) % every == 0) {
            acc += anchored_cluster_fraction(w, anchor);
            ++samples;
        }
    }
    return samples > 0 ? acc / samples : 0.0;
}

ExperimentResult run_aggregation_sweep(const AggregationSpec& spec) {
    if (spec.n_values.empty() || spec.seeds.empty() || spec.ticks <= 0)
        throw std::invalid_argument("aggregation sweep: empty spec");
    for (int n : spec.n_values)
        if (n < 1) throw std::invalid_argument("aggregation sweep: n < 1");
    ExperimentResult out;
    for (int n : spec.n_values)
        for (std::uint64_t seed : spec.seeds)
            out.add(spec.scenario, n, seed, "cluster_fraction",
                    run_aggregation(spec, n, seed));
    out.sort();
    return out;
}

ExperimentResult run_street_benchmark(const StreetSpec& spec) {
    if (spec.n_values.empty() || spec.seeds.empty() || spec.ticks <= 0)
        throw std::invalid_argument("street benchmark: empty spec");
    ExperimentResult out;
    for (int n : spec.n_values) {
        if (n < 2) throw std::invalid_argument("street benchmark: n < 2");
        const double spacing = spec.spacing_frac * spec.arena.comm_radius;
        if (spacing <= spec.arena.proximity_radius ||
            spacing > spec.arena.comm_radius)
            throw std::invalid_argument("street benchmark: bad spacing");
        for (std::uint64_t seed : spec.seeds) {
            ArenaConfig cfg = fit_chain(spec.arena, n, spacing, 0.0);
            cfg.seed = seed;
            World w(cfg, n);
            place_chain(w, spacing, 0.0, 0);
            w.use_street(spec.street);
            w.add_landmark(w.pose(n - 1).position);
            // The counter-0 frame enters just off the near end, in range of
            // robot 0 alone.
            const Vec2 from = {chain_x0(cfg) - 0.9 * cfg.comm_radius,
                               cfg.height / 2.0};
            w.inject(from, {-1, -1,
                            StreetMsg{StreetMsg::Kind::BuildStreet, 0, 0, 0}});
            w.run(spec.ticks);
            try {
                const StreetMetrics m = street_metrics(w.log());
                const Event* inj = w.log().first(Ev::StInject);
                const Event* term = w.log().first(Ev::StTerminus);
                const auto dist = graph::bfs_distances(w.comm_graph(),
                                                       inj->robot);
                out.add(spec.scenario, n, seed, "build_rounds",
                        static_cast<double>(m.build_rounds));
                out.add(spec.scenario, n, seed, "ok_rounds",
                        static_cast<double>(m.ok_rounds));
                out.add(spec.scenario, n, seed, "propagation_rounds",
                        static_cast<double>(m.propagation_rounds));
                out.add(spec.scenario, n, seed, "street_length",
                        static_cast<double>(m.street_length));
                out.add(spec.scenario, n, seed, "bfs_distance",
                        static_cast<double>(
                            dist[static_cast<std::size_t>(term->robot)]));
                out.add(spec.scenario, n, seed, "completed", 1.0);
            } catch (const IncompleteRun&) {
                out.add(spec.scenario, n, seed, "incomplete_run", 1.0);
            }
        }
    }
    out.sort();
    return out;
}

FeedbackOutcome run_feedback_chain(const FeedbackSpec& spec, int n,
                                   std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("feedback scenario: n < 1");
    if (spec.detached_count < 0 || spec.detached_count >= n)
        throw std::invalid_argument("feedback scenario: bad detached_count");
    const double spacing = spec.spacing_frac * spec.arena.comm_radius;
    const double gap = spec.detached_count > 0 ? 2.0 * spec.arena.comm_radius
                                               : 0.0;
    ArenaConfig cfg = fit_chain(spec.arena, n, spacing, gap);
    cfg.seed = seed;
    World w(cfg, n);
    place_chain(w, spacing, gap, spec.detached_count);
    w.use_feedback(spec.feedback, 0);
    w.set_resource(w.pose(0).position);

    std::vector<int> capable = spec.capable_ids;
    if (capable.empty() && spec.capable_fraction > 0.0) {
        const int k = static_cast<int>(
            std::ceil(spec.capable_fraction * (n - 1)));
        for (int i = n - 1; i > 0 && static_cast<int>(capable.size()) < k; --i)
            capable.push_back(i);
    }
    for (int id : capable) w.grant_capability(id, spec.feedback.capability);

    w.run(spec.ticks);

    FeedbackOutcome o;
    const FeedbackState& scout = w.feedback_state(0);
    o.responders_confirmed = static_cast<int>(scout.responders.size());
    o.teamed = scout.mode == FeedbackState::Mode::Teamed;
    o.resumed = w.log().first(Ev::FbResumed) != nullptr;
    const Event* req = w.log().first(Ev::FbRequestSent);
    const Event* recv = w.log().first(Ev::FbFeedbackRecv);
    if (req && recv) o.latency_rounds = recv->tick - req->tick;
    return o;
}

ExperimentResult run_feedback_scenario(const FeedbackSpec& spec) {
    if (spec.n_values.empty() || spec.seeds.empty() || spec.ticks <= 0)
        throw std::invalid_argument("feedback scenario: empty spec");
    ExperimentResult out;
    for (int n : spec.n_values)
        for (std::uint64_t seed : spec.seeds) {
            const FeedbackOutcome o = run_feedback_chain(spec, n, seed);
            out.add(spec.scenario, n, seed, "responders_confirmed",
                    static_cast<double>(o.responders_confirmed));
            out.add(spec.scenario, n, seed, "outcome_teamed",
                    o.teamed ? 1.0 : 0.0);
            out.add(spec.scenario, n, seed, "feedback_latency_rounds",
                    static_cast<double>(o.latency_rounds));
        }
    out.sort();
    return out;
}

bool unimodality_check(const ExperimentResult& result,
                       const std::string& metric) {
    std::map<int, std::vector<double>> by_n;
    for (const ResultRow& r : result.rows)
        if (r.metric == metric) by_n[r.n].push_back(r.value);
    if (by_n.size() < 4)
        throw std::invalid_argument(
            "unimodality_check: need at least 4 distinct n values");

    std::vector<double> means, vars;
    std::size_t min_count = SIZE_MAX;
    for (const auto& [n, vals] : by_n) {
        if (vals.size() < 20)
            throw std::invalid_argument(
                "unimodality_check: need at least 20 seeds per n");
        min_count = std::min(min_count, vals.size());
        double sum = 0.0;
        for (double v : vals) sum += v;
        const double mean = sum / vals.size();
        double ss = 0.0;
        for (double v : vals) ss += (v - mean) * (v - mean);
        means.push_back(mean);
        vars.push_back(ss / (vals.size() - 1));
    }

    double pooled_var = 0.0;
    for (double v : vars) pooled_var += v;
    pooled_var /= vars.size();
    const double se = std::sqrt(pooled_var / static_cast<double>(min_count));

    const std::size_t last = means.size() - 1;
    std::size_t peak = 0;
    for (std::size_t i = 1; i <= last; ++i)
        if (means[i] > means[peak]) peak = i;

    if (peak == 0 || peak == last) return false;  // no interior maximum
    if (!(means[peak] > means[0])) return false;  // never rose
    // Past the peak the curve must keep falling; a rebound larger than the
    // sampling noise means a second mode.
    for (std::size_t i = peak + 1; i <= last; ++i)
        if (means[i] > means[i - 1] + se) return false;
    return true;
}

}  // namespace swarm::experiments
