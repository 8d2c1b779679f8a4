#include "swarm/scenario.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

#include "swarm/event_log.hpp"
#include "swarm/graph.hpp"
#include "swarm/proto_street.hpp"

namespace swarm::scenario {

namespace {

struct Entry {
    std::string section, key, value;
    int line;
};

[[noreturn]] void fail(int line, const std::string& msg) {
    if (line > 0)
        throw ConfigError("line " + std::to_string(line) + ": " + msg);
    throw ConfigError(msg);
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// One entry per key=value line plus a key-less marker per section header, so
// unknown sections are caught even when empty.
std::vector<Entry> lex(std::istream& in) {
    std::vector<Entry> out;
    std::string line, section;
    int no = 0;
    while (std::getline(in, line)) {
        ++no;
        auto cut = line.find_first_of("#;");
        if (cut != std::string::npos) line.erase(cut);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail(no, "malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty()) fail(no, "empty section name");
            out.push_back({section, "", "", no});
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) fail(no, "expected key = value");
        std::string k = trim(line.substr(0, eq));
        std::string v = trim(line.substr(eq + 1));
        if (k.empty()) fail(no, "empty key");
        if (section.empty()) fail(no, "key before any section");
        out.push_back({section, k, v, no});
    }
    return out;
}

double parse_double(const Entry& e, const std::string& text) {
    const char* b = text.c_str();
    char* end = nullptr;
    errno = 0;
    double d = std::strtod(b, &end);
    if (end == b || *end != '\0' || errno == ERANGE || !std::isfinite(d))
        fail(e.line, "bad number '" + text + "' for " + e.key);
    return d;
}

double parse_double(const Entry& e) { return parse_double(e, e.value); }

long long parse_int(const Entry& e, const std::string& text) {
    const char* b = text.c_str();
    char* end = nullptr;
    errno = 0;
    long long v = std::strtoll(b, &end, 10);
    if (end == b || *end != '\0' || errno == ERANGE)
        fail(e.line, "bad integer '" + text + "' for " + e.key);
    return v;
}

long long parse_int(const Entry& e) { return parse_int(e, e.value); }

std::uint64_t parse_seed(const Entry& e) {
    const char* b = e.value.c_str();
    char* end = nullptr;
    errno = 0;
    unsigned long long v = std::strtoull(b, &end, 10);
    if (end == b || *end != '\0' || errno == ERANGE || e.value.front() == '-')
        fail(e.line, "bad seed '" + e.value + "'");
    return v;
}

bool parse_bool(const Entry& e) {
    if (e.value == "0" || e.value == "false") return false;
    if (e.value == "1" || e.value == "true") return true;
    fail(e.line, "bad boolean '" + e.value + "' for " + e.key);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream is(s);
    std::vector<std::string> out;
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(trim(cur));
    return out;
}

std::vector<double> parse_doubles(const Entry& e, std::size_t n) {
    auto toks = split_ws(e.value);
    if (toks.size() != n)
        fail(e.line, e.key + " needs " + std::to_string(n) +
                         " space-separated numbers");
    std::vector<double> out;
    for (const auto& t : toks) out.push_back(parse_double(e, t));
    return out;
}

Vec2 parse_vec2(const Entry& e) {
    auto v = parse_doubles(e, 2);
    return {v[0], v[1]};
}

// ----------------------------------------------------------------- sections

void apply_arena(const Entry& e, Scenario& s) {
    ArenaConfig& a = s.arena;
    if (e.key == "width") a.width = parse_double(e);
    else if (e.key == "height") a.height = parse_double(e);
    else if (e.key == "comm_radius") a.comm_radius = parse_double(e);
    else if (e.key == "proximity_radius") a.proximity_radius = parse_double(e);
    else if (e.key == "dt") a.dt = parse_double(e);
    else if (e.key == "speed") a.speed = parse_double(e);
    else if (e.key == "dist_noise") a.dist_noise_frac = parse_double(e);
    else if (e.key == "rot_noise") a.rot_noise_frac = parse_double(e);
    else if (e.key == "seed") a.seed = parse_seed(e);
    else fail(e.line, "unknown key '" + e.key + "' in [arena]");
}

void apply_robots(const Entry& e, Scenario& s) {
    if (e.key == "count") {
        long long v = parse_int(e);
        if (v < 1 || v > 64) fail(e.line, "count must be in 1..64");
        s.count = static_cast<int>(v);
    } else if (e.key == "placement") {
        if (e.value == "random") s.placement = Placement::Random;
        else if (e.value == "chain") s.placement = Placement::Chain;
        else if (e.value == "grid") s.placement = Placement::Grid;
        else fail(e.line, "placement must be random, chain, or grid");
    } else if (e.key == "spacing") {
        double v = parse_double(e);
        if (v <= 0) fail(e.line, "spacing must be positive");
        s.spacing = v;
    } else if (e.key == "capable") {
        for (const auto& t : split_commas(e.value)) {
            long long id = parse_int(e, t);
            if (id < 0 || id > 63) fail(e.line, "capable id out of range");
            s.capable.push_back(static_cast<int>(id));
        }
        std::sort(s.capable.begin(), s.capable.end());
        s.capable.erase(std::unique(s.capable.begin(), s.capable.end()),
                        s.capable.end());
    } else if (e.key == "capable_fraction") {
        double v = parse_double(e);
        if (v < 0 || v > 1) fail(e.line, "capable_fraction must be in [0,1]");
        s.capable_fraction = v;
    } else {
        fail(e.line, "unknown key '" + e.key + "' in [robots]");
    }
}

void apply_lights(const Entry& e, Scenario& s) {
    if (e.key == "light") {
        auto v = parse_doubles(e, 4);
        if (v[2] <= 0) fail(e.line, "light peak must be positive");
        if (v[3] <= 0) fail(e.line, "light falloff must be positive");
        s.lights.push_back({{v[0], v[1]}, v[2], v[3]});
    } else if (e.key == "anchor") {
        s.anchor = parse_vec2(e);
    } else {
        fail(e.line, "unknown key '" + e.key + "' in [lights]");
    }
}

void apply_landmarks(const Entry& e, Scenario& s) {
    if (e.key == "landmark") s.landmarks.push_back(parse_vec2(e));
    else fail(e.line, "unknown key '" + e.key + "' in [landmarks]");
}

void apply_protocol(const Entry& e, Scenario& s) {
    if (e.key == "name") return;  // handled up front
    auto bad = [&]() -> long long {
        fail(e.line, "key '" + e.key + "' is not valid for this protocol");
    };
    auto pos_int = [&](long long lo) {
        long long v = parse_int(e);
        if (v < lo) fail(e.line, e.key + " must be >= " + std::to_string(lo));
        return v;
    };
    auto prob = [&]() {
        double v = parse_double(e);
        if (v < 0 || v > 1) fail(e.line, e.key + " must be in [0,1]");
        return v;
    };
    auto nonneg = [&]() {
        double v = parse_double(e);
        if (v < 0) fail(e.line, e.key + " must be >= 0");
        return v;
    };
    switch (s.proto) {
        case Proto::Local: {
            LocalParams& p = s.local;
            if (e.key == "wait_gain") p.wait_gain = nonneg();
            else if (e.key == "base_wait") p.base_wait = pos_int(0);
            else if (e.key == "avoid_ticks")
                p.avoid_ticks = static_cast<int>(pos_int(1));
            else if (e.key == "turn_prob") p.turn_prob = prob();
            else if (e.key == "turn_angle_range") p.turn_angle_range = nonneg();
            else bad();
            break;
        }
        case Proto::Street: {
            StreetParams& p = s.street;
            if (e.key == "n_threshold")
                p.n_threshold = static_cast<int>(pos_int(1));
            else if (e.key == "resend_ticks")
                p.resend_ticks = static_cast<int>(pos_int(1));
            else if (e.key == "build_timeout") p.build_timeout = pos_int(1);
            else if (e.key == "nav_ping_period")
                p.nav_ping_period = static_cast<int>(pos_int(1));
            else if (e.key == "confirm_cycles")
                p.confirm_cycles = static_cast<int>(pos_int(0));
            else if (e.key == "invert_gradient")
                p.invert_gradient = parse_bool(e);
            else if (e.key == "inject_landmark")
                s.inject_landmark = static_cast<int>(pos_int(0));
            else if (e.key == "inject_tick") s.inject_tick = pos_int(0);
            else bad();
            break;
        }
        case Proto::Feedback: {
            FeedbackParams& p = s.feedback;
            if (e.key == "min_responders")
                p.min_responders = static_cast<int>(pos_int(1));
            else if (e.key == "request_timeout") p.request_timeout = pos_int(1);
            else if (e.key == "capability") {
                if (e.value.empty()) fail(e.line, "capability must be nonempty");
                p.capability = e.value;
            } else if (e.key == "scout")
                s.scout = static_cast<int>(pos_int(0));
            else if (e.key == "resource") s.resource = parse_vec2(e);
            else if (e.key == "turn_prob") p.turn_prob = prob();
            else if (e.key == "turn_angle_range") p.turn_angle_range = nonneg();
            else bad();
            break;
        }
    }
}

void apply_run(const Entry& e, Scenario& s) {
    if (e.key == "ticks") {
        long long v = parse_int(e);
        if (v < 1) fail(e.line, "ticks must be >= 1");
        s.ticks = v;
    } else if (e.key == "cluster_every") {
        long long v = parse_int(e);
        if (v < 0) fail(e.line, "cluster_every must be >= 0");
        s.cluster_every = v;
    } else if (e.key == "sample_every") {
        long long v = parse_int(e);
        if (v < 1) fail(e.line, "sample_every must be >= 1");
        s.sample_every = v;
    } else if (e.key == "metrics") {
        for (const auto& t : split_commas(e.value)) {
            if (t.empty()) fail(e.line, "empty name in metrics list");
            s.metrics.push_back(t);
        }
        std::sort(s.metrics.begin(), s.metrics.end());
        s.metrics.erase(std::unique(s.metrics.begin(), s.metrics.end()),
                        s.metrics.end());
    } else {
        fail(e.line, "unknown key '" + e.key + "' in [run]");
    }
}

const std::set<std::string>& metric_names(Proto p) {
    static const std::set<std::string> local = {"cluster_fraction"};
    static const std::set<std::string> street = {
        "completed", "build_rounds",  "ok_rounds",
        "street_length", "propagation_rounds", "bfs_distance"};
    static const std::set<std::string> feedback = {
        "responders_confirmed", "outcome_teamed", "resumed",
        "feedback_latency_rounds"};
    switch (p) {
        case Proto::Local: return local;
        case Proto::Street: return street;
        default: return feedback;
    }
}

// Cross-field checks that do not depend on the (sweep-overridable) robot
// count, plus default resolution.  Count-dependent checks live in
// build_world so sweep cells fail individually.
void finalize(Scenario& s) {
    try {
        s.arena.validate();
    } catch (const std::invalid_argument& ex) {
        throw ConfigError(ex.what());
    }
    if (s.count == 0) throw ConfigError("[robots] count is required");
    if (s.ticks == 0) throw ConfigError("[run] ticks is required");
    if (!s.capable.empty() && s.capable_fraction > 0)
        throw ConfigError("capable and capable_fraction are exclusive");
    if (s.spacing == 0.0) s.spacing = 0.6 * s.arena.comm_radius;
    if (!s.anchor && !s.lights.empty()) s.anchor = s.lights[0].position;
    if (s.proto == Proto::Street) {
        if (s.landmarks.empty())
            throw ConfigError("street protocol needs at least one landmark");
        if (s.inject_landmark < 0 ||
            s.inject_landmark >= static_cast<int>(s.landmarks.size()))
            throw ConfigError("inject_landmark out of range");
        if (s.inject_tick >= s.ticks)
            throw ConfigError("inject_tick must be before the run ends");
    }
    if (s.proto == Proto::Feedback && !s.resource)
        throw ConfigError("feedback protocol needs a resource position");
    for (const auto& m : s.metrics)
        if (!metric_names(s.proto).count(m))
            throw ConfigError("unknown metric '" + m + "' for this protocol");
}

// ------------------------------------------------------------ serialization

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt(Vec2 v) { return fmt(v.x) + " " + fmt(v.y); }

}  // namespace

Scenario parse_config(std::istream& in) {
    static const std::set<std::string> sections = {
        "arena", "robots", "lights", "landmarks", "protocol", "run"};
    const auto entries = lex(in);

    Scenario s;
    bool named = false;
    for (const Entry& e : entries) {
        if (!sections.count(e.section))
            fail(e.line, "unknown section [" + e.section + "]");
        if (e.section == "protocol" && e.key == "name") {
            if (named) fail(e.line, "duplicate key 'name'");
            named = true;
            if (e.value == "local") s.proto = Proto::Local;
            else if (e.value == "street") s.proto = Proto::Street;
            else if (e.value == "feedback") s.proto = Proto::Feedback;
            else fail(e.line, "unknown protocol '" + e.value + "'");
        }
    }
    if (!named) throw ConfigError("[protocol] name is required");

    std::set<std::pair<std::string, std::string>> seen;
    for (const Entry& e : entries) {
        if (e.key.empty()) continue;  // section marker
        const bool repeatable = (e.section == "lights" && e.key == "light") ||
                                (e.section == "landmarks" &&
                                 e.key == "landmark");
        if (!repeatable && !seen.insert({e.section, e.key}).second)
            fail(e.line, "duplicate key '" + e.key + "'");
        if (e.section == "arena") apply_arena(e, s);
        else if (e.section == "robots") apply_robots(e, s);
        else if (e.section == "lights") apply_lights(e, s);
        else if (e.section == "landmarks") apply_landmarks(e, s);
        else if (e.section == "protocol") apply_protocol(e, s);
        else apply_run(e, s);
    }
    finalize(s);
    return s;
}

Scenario parse_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot read config file: " + path);
    return parse_config(f);
}

void write_resolved(std::ostream& os, const Scenario& s) {
    const ArenaConfig& a = s.arena;
    os << "[arena]\n"
       << "width = " << fmt(a.width) << '\n'
       << "height = " << fmt(a.height) << '\n'
       << "comm_radius = " << fmt(a.comm_radius) << '\n'
       << "proximity_radius = " << fmt(a.proximity_radius) << '\n'
       << "dt = " << fmt(a.dt) << '\n'
       << "speed = " << fmt(a.speed) << '\n'
       << "dist_noise = " << fmt(a.dist_noise_frac) << '\n'
       << "rot_noise = " << fmt(a.rot_noise_frac) << '\n'
       << "seed = " << a.seed << '\n';

    os << "\n[robots]\n"
       << "count = " << s.count << '\n'
       << "placement = "
       << (s.placement == Placement::Random
               ? "random"
               : s.placement == Placement::Chain ? "chain" : "grid")
       << '\n'
       << "spacing = " << fmt(s.spacing) << '\n';
    if (!s.capable.empty()) {
        os << "capable = ";
        for (std::size_t i = 0; i < s.capable.size(); ++i)
            os << (i ? "," : "") << s.capable[i];
        os << '\n';
    }
    if (s.capable_fraction > 0)
        os << "capable_fraction = " << fmt(s.capable_fraction) << '\n';

    if (!s.lights.empty() || s.anchor) {
        os << "\n[lights]\n";
        for (const auto& l : s.lights)
            os << "light = " << fmt(l.position) << ' ' << fmt(l.peak_intensity)
               << ' ' << fmt(l.falloff_radius) << '\n';
        if (s.anchor) os << "anchor = " << fmt(*s.anchor) << '\n';
    }

    if (!s.landmarks.empty()) {
        os << "\n[landmarks]\n";
        for (const auto& lm : s.landmarks)
            os << "landmark = " << fmt(lm) << '\n';
    }

    os << "\n[protocol]\n";
    switch (s.proto) {
        case Proto::Local:
            os << "name = local\n"
               << "wait_gain = " << fmt(s.local.wait_gain) << '\n'
               << "base_wait = " << s.local.base_wait << '\n'
               << "avoid_ticks = " << s.local.avoid_ticks << '\n'
               << "turn_prob = " << fmt(s.local.turn_prob) << '\n'
               << "turn_angle_range = " << fmt(s.local.turn_angle_range)
               << '\n';
            break;
        case Proto::Street:
            os << "name = street\n"
               << "n_threshold = " << s.street.n_threshold << '\n'
               << "resend_ticks = " << s.street.resend_ticks << '\n'
               << "build_timeout = " << s.street.build_timeout << '\n'
               << "nav_ping_period = " << s.street.nav_ping_period << '\n'
               << "confirm_cycles = " << s.street.confirm_cycles << '\n'
               << "invert_gradient = " << (s.street.invert_gradient ? 1 : 0)
               << '\n'
               << "inject_landmark = " << s.inject_landmark << '\n'
               << "inject_tick = " << s.inject_tick << '\n';
            break;
        case Proto::Feedback:
            os << "name = feedback\n"
               << "min_responders = " << s.feedback.min_responders << '\n'
               << "request_timeout = " << s.feedback.request_timeout << '\n'
               << "capability = " << s.feedback.capability << '\n'
               << "scout = " << s.scout << '\n'
               << "resource = " << fmt(*s.resource) << '\n'
               << "turn_prob = " << fmt(s.feedback.turn_prob) << '\n'
               << "turn_angle_range = " << fmt(s.feedback.turn_angle_range)
               << '\n';
            break;
    }

    os << "\n[run]\n"
       << "ticks = " << s.ticks << '\n'
       << "cluster_every = " << s.cluster_every << '\n'
       << "sample_every = " << s.sample_every << '\n';
    if (!s.metrics.empty()) {
        os << "metrics = ";
        for (std::size_t i = 0; i < s.metrics.size(); ++i)
            os << (i ? "," : "") << s.metrics[i];
        os << '\n';
    }
}

World build_world(const Scenario& s) {
    World w(s.arena, s.count);

    switch (s.placement) {
        case Placement::Random:
            experiments::place_random(w, s.arena.seed);
            break;
        case Placement::Chain: {
            const double span = (s.count - 1) * s.spacing;
            if (span > s.arena.width - 0.1)
                throw ConfigError("chain span exceeds arena width");
            const double x0 = (s.arena.width - span) / 2.0;
            const double y = s.arena.height / 2.0;
            for (int i = 0; i < s.count; ++i)
                w.set_pose(i, {{x0 + i * s.spacing, y}, 0.0});
            break;
        }
        case Placement::Grid: {
            const int cols = static_cast<int>(
                std::ceil(std::sqrt(static_cast<double>(s.count))));
            const int rows = (s.count + cols - 1) / cols;
            for (int i = 0; i < s.count; ++i) {
                const int c = i % cols, r = i / cols;
                w.set_pose(i, {{(c + 0.5) * s.arena.width / cols,
                                (r + 0.5) * s.arena.height / rows},
                               0.0});
            }
            break;
        }
    }

    for (const auto& l : s.lights) w.add_light(l);
    for (const auto& lm : s.landmarks) w.add_landmark(lm);
    if (s.resource) w.set_resource(*s.resource);

    std::vector<int> capable = s.capable;
    if (capable.empty() && s.capable_fraction > 0) {
        const int k = static_cast<int>(
            std::ceil(s.capable_fraction * (s.count - 1)));
        const int excluded = s.proto == Proto::Feedback ? s.scout : -1;
        for (int i = s.count - 1;
             i >= 0 && static_cast<int>(capable.size()) < k; --i)
            if (i != excluded) capable.push_back(i);
        std::sort(capable.begin(), capable.end());
    }
    for (int id : capable) {
        if (id >= s.count) throw ConfigError("capable id out of range");
        w.grant_capability(id, s.feedback.capability);
    }

    switch (s.proto) {
        case Proto::Local: w.use_local(s.local); break;
        case Proto::Street: w.use_street(s.street); break;
        case Proto::Feedback:
            if (s.scout >= s.count) throw ConfigError("scout id out of range");
            w.use_feedback(s.feedback, s.scout);
            break;
    }
    return w;
}

RunResult execute(const Scenario& s, World& w, std::ostream* clusters) {
    const bool clustering = clusters && s.cluster_every > 0;
    auto emit_clusters = [&](long tick) {
        const auto g = w.comm_graph();
        const auto report = graph::classify(graph::components(g), g.n);
        graph::write_cluster_rows(*clusters, tick, report);
    };
    if (clustering) *clusters << "tick,component_index,size,label\n";

    double acc = 0.0;
    long samples = 0;
    const long sample_start = s.ticks - s.ticks / 4;

    for (long t = 0; t < s.ticks; ++t) {
        if (clustering && t % s.cluster_every == 0) emit_clusters(t);
        if (s.proto == Proto::Street && t == s.inject_tick) {
            Message m;
            m.to = -1;
            m.body = StreetMsg{StreetMsg::Kind::BuildStreet, 0,
                               s.inject_landmark, 0};
            w.inject(s.landmarks[static_cast<std::size_t>(s.inject_landmark)],
                     m);
        }
        w.step();
        if (s.proto == Proto::Local && s.anchor && t >= sample_start &&
            (t - sample_start) % s.sample_every == 0) {
            acc += experiments::anchored_cluster_fraction(w, *s.anchor);
            ++samples;
        }
    }
    if (clustering && s.ticks % s.cluster_every == 0) emit_clusters(s.ticks);

    RunResult r;
    const EventLog& log = w.log();
    switch (s.proto) {
        case Proto::Local:
            if (s.anchor && samples > 0)
                r.metrics["cluster_fraction"] = acc / samples;
            break;
        case Proto::Street: {
            r.complete = log.first(Ev::StComplete) != nullptr;
            r.metrics["completed"] = r.complete ? 1.0 : 0.0;
            if (log.first(Ev::StTerminus)) {
                const StreetMetrics m = street_metrics(log);
                r.metrics["build_rounds"] = m.build_rounds;
                r.metrics["street_length"] = m.street_length;
                if (m.ok_rounds >= 0) r.metrics["ok_rounds"] = m.ok_rounds;
                if (m.propagation_rounds >= 0)
                    r.metrics["propagation_rounds"] = m.propagation_rounds;
                const Event* inj = log.first(Ev::StInject);
                const Event* term = log.first(Ev::StTerminus);
                if (inj) {
                    const auto g = w.comm_graph();
                    const auto d = graph::bfs_distances(g, inj->robot);
                    const int hops = d[static_cast<std::size_t>(term->robot)];
                    if (hops >= 0) r.metrics["bfs_distance"] = hops;
                }
            }
            break;
        }
        case Proto::Feedback: {
            r.complete = log.first(Ev::FbWaiting) != nullptr ||
                         log.first(Ev::FbResumed) != nullptr;
            const FeedbackState& st = w.feedback_state(s.scout);
            r.metrics["responders_confirmed"] =
                static_cast<double>(st.responders.size());
            r.metrics["outcome_teamed"] =
                st.mode == FeedbackState::Mode::Teamed ? 1.0 : 0.0;
            r.metrics["resumed"] = log.first(Ev::FbResumed) ? 1.0 : 0.0;
            const Event* rq = log.first(Ev::FbRequestSent);
            const Event* rc = log.first(Ev::FbFeedbackRecv);
            if (rq && rc)
                r.metrics["feedback_latency_rounds"] =
                    static_cast<double>(rc->tick - rq->tick);
            break;
        }
    }
    if (!s.metrics.empty()) {
        std::erase_if(r.metrics, [&](const auto& kv) {
            return !std::binary_search(s.metrics.begin(), s.metrics.end(),
                                       kv.first);
        });
    }
    return r;
}

RunResult run_scenario(const Scenario& s, const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);

    World w = build_world(s);
    std::ostringstream cl;
    RunResult r = execute(s, w, &cl);

    auto open = [&](const char* name) {
        std::ofstream f(fs::path(out_dir) / name, std::ios::binary);
        if (!f)
            throw std::runtime_error(std::string("cannot write ") + name +
                                     " in " + out_dir);
        return f;
    };
    {
        auto f = open("resolved_config");
        write_resolved(f, s);
    }
    {
        auto f = open("events.csv");
        write_events(f, w.log());
    }
    {
        auto f = open("metrics.csv");
        f << "metric,value\n";
        char buf[40];
        for (const auto& [k, v] : r.metrics) {
            std::snprintf(buf, sizeof buf, "%.10g", v);
            f << k << ',' << buf << '\n';
        }
    }
    if (s.cluster_every > 0) {
        auto f = open("clusters.csv");
        f << cl.str();
    }
    return r;
}

experiments::ExperimentResult sweep(const Scenario& base,
                                    const std::vector<int>& n_values,
                                    const std::vector<std::uint64_t>& seeds) {
    if (n_values.empty()) throw ConfigError("empty n list for sweep");
    if (seeds.empty()) throw ConfigError("empty seed list for sweep");
    const char* scen = base.proto == Proto::Local
                           ? "aggregation"
                           : base.proto == Proto::Street ? "street"
                                                         : "feedback";
    experiments::ExperimentResult out;
    for (int n : n_values) {
        for (std::uint64_t seed : seeds) {
            Scenario s = base;
            s.count = n;
            s.arena.seed = seed;
            try {
                World w = build_world(s);
                RunResult r = execute(s, w, nullptr);
                if (!r.complete) {
                    out.add(scen, n, seed, "incomplete_run", 1.0);
                    continue;
                }
                for (const auto& [k, v] : r.metrics)
                    out.add(scen, n, seed, k, v);
            } catch (const std::exception&) {
                out.add(scen, n, seed, "incomplete_run", 1.0);
            }
        }
    }
    out.sort();
    return out;
}

}  // namespace swarm::scenario
