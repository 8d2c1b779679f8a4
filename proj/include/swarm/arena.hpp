#pragma once

#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "swarm/event_log.hpp"
#include "swarm/graph.hpp"
#include "swarm/messages.hpp"
#include "swarm/proto_feedback.hpp"
#include "swarm/proto_local.hpp"
#include "swarm/proto_street.hpp"
#include "swarm/rng.hpp"
#include "swarm/vec2.hpp"

namespace swarm {

struct ArenaConfig {
    double width = 2.0;
    double height = 2.0;
    double comm_radius = 0.5;
    double proximity_radius = 0.12;
    double dt = 0.1;
    double speed = 0.25;
    double dist_noise_frac = 0.06;  // odometry accuracy, distance
    double rot_noise_frac = 0.11;   // odometry accuracy, rotation
    std::uint64_t seed = 1;

    // Throws std::invalid_argument with the offending field named.
    void validate() const;
};

struct LightSource {
    Vec2 position;
    double peak_intensity = 1.0;
    double falloff_radius = 1.0;  // intensity falls linearly to zero here
};

using ProtoState =
    std::variant<std::monostate, LocalState, StreetState, FeedbackState>;

struct RobotState {
    int id = -1;
    Pose pose;
    std::set<std::string> capabilities;
    ProtoState proto;
    std::vector<Message> inbox;
};

// A frame placed into the world from outside the swarm (a landmark, a test
// harness); it is transmitted from `at` during the next step's delivery.
struct Injection {
    Vec2 at;
    Message msg;
};

// Deterministic discrete-time world.  One step: protocols consume inboxes
// and emit commands + frames, kinematics integrate with multiplicative
// odometry noise, positions clamp to the walls with heading reflection,
// and frames are delivered to every robot within the communication radius
// (one hop per tick: receivers see them next step).  All randomness flows
// from the single seeded stream, robots are processed in id order, so a
// (config, initial state) pair fixes the whole trajectory.
class World {
public:
    World(const ArenaConfig& cfg, int robot_count);

    const ArenaConfig& config() const { return cfg_; }
    int robot_count() const { return static_cast<int>(robots_.size()); }
    long tick() const { return clock_; }
    const EventLog& log() const { return log_; }
    EventLog& log() { return log_; }

    const RobotState& robot(int id) const;
    Pose pose(int id) const { return robot(id).pose; }
    void set_pose(int id, Pose p);  // clamps into the arena, normalizes
    std::vector<Vec2> positions() const;
    void grant_capability(int id, const std::string& tag);

    int add_light(const LightSource& light);
    void set_light_position(int index, Vec2 p);
    void clear_lights();
    const std::vector<LightSource>& lights() const { return lights_; }

    int add_landmark(Vec2 p);
    const std::vector<Vec2>& landmarks() const { return landmarks_; }

    void set_resource(Vec2 p) { resource_ = p; }
    void clear_resource() { resource_.reset(); }
    std::optional<Vec2> resource() const { return resource_; }

    // Protocol selection applies to every robot; a world runs one regime.
    void use_local(const LocalParams& p);
    void use_street(const StreetParams& p);
    void use_feedback(const FeedbackParams& p, int scout_id);

    const LocalState& local_state(int id) const;
    const StreetState& street_state(int id) const;
    const FeedbackState& feedback_state(int id) const;

    void inject(Vec2 at, Message msg);

    void step();
    void run(long ticks);

    // Summed light intensity at a point (the single scalar a robot senses).
    double light_at(Vec2 p) const;
    double sense_light(int id) const { return light_at(robot(id).pose.position); }

    // Ids within `radius` of robot `id` (closed ball, self excluded),
    // ascending.  Throws std::out_of_range / std::invalid_argument.
    std::vector<int> neighbors(int id, double radius) const;

    graph::ConnectivityGraph comm_graph() const;
    graph::ConnectivityGraph graph_at(double radius) const;

private:
    RobotState& robot_mut(int id);
    void deliver(const Message& msg, Vec2 sender_pos);

    ArenaConfig cfg_;
    std::vector<RobotState> robots_;
    std::vector<LightSource> lights_;
    std::vector<Vec2> landmarks_;
    std::optional<Vec2> resource_;
    LocalParams local_params_;
    StreetParams street_params_;
    FeedbackParams feedback_params_;
    std::vector<Injection> pending_;
    RandomStream rng_;
    EventLog log_;
    long clock_ = 0;
};

}  // namespace swarm
