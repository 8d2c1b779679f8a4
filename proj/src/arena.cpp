#include "swarm/arena.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "swarm/kernels.hpp"

namespace swarm {

void ArenaConfig::validate() const {
    auto fail = [](const char* what) {
        throw std::invalid_argument(std::string("arena config: ") + what);
    };
    if (!(width > 0.0)) fail("width must be > 0");
    if (!(height > 0.0)) fail("height must be > 0");
    if (!(proximity_radius > 0.0)) fail("proximity_radius must be > 0");
    if (!(comm_radius > proximity_radius))
        fail("comm_radius must exceed proximity_radius");
    if (!(dt > 0.0)) fail("dt must be > 0");
    if (!(speed >= 0.0)) fail("speed must be >= 0");
    if (!(dist_noise_frac >= 0.0 && dist_noise_frac < 1.0))
        fail("dist_noise_frac must be in [0, 1)");
    if (!(rot_noise_frac >= 0.0 && rot_noise_frac < 1.0))
        fail("rot_noise_frac must be in [0, 1)");
}

World::World(const ArenaConfig& cfg, int robot_count)
    : cfg_(cfg), rng_(cfg.seed) {
    cfg_.validate();
    if (robot_count < 1 || robot_count > static_cast<int>(kernels::max_points))
        throw std::invalid_argument(
            "robot count must be in [1, 64] (6-bit address space)");
    robots_.resize(static_cast<std::size_t>(robot_count));
    for (int i = 0; i < robot_count; ++i) robots_[static_cast<std::size_t>(i)].id = i;
}

const RobotState& World::robot(int id) const {
    if (id < 0 || id >= robot_count()) throw std::out_of_range("unknown robot id");
    return robots_[static_cast<std::size_t>(id)];
}

RobotState& World::robot_mut(int id) {
    if (id < 0 || id >= robot_count()) throw std::out_of_range("unknown robot id");
    return robots_[static_cast<std::size_t>(id)];
}

void World::set_pose(int id, Pose p) {
    p.position.x = std::clamp(p.position.x, 0.0, cfg_.width);
    p.position.y = std::clamp(p.position.y, 0.0, cfg_.height);
    p.heading = wrap_angle(p.heading);
    robot_mut(id).pose = p;
}

std::vector<Vec2> World::positions() const {
    std::vector<Vec2> out;
    out.reserve(robots_.size());
    for (const RobotState& r : robots_) out.push_back(r.pose.position);
    return out;
}

void World::grant_capability(int id, const std::string& tag) {
    robot_mut(id).capabilities.insert(tag);
}

int World::add_light(const LightSource& light) {
    if (!(light.peak_intensity >= 0.0) || !(light.falloff_radius > 0.0))
        throw std::invalid_argument("bad light source");
    lights_.push_back(light);
    return static_cast<int>(lights_.size()) - 1;
}

void World::set_light_position(int index, Vec2 p) {
    if (index < 0 || index >= static_cast<int>(lights_.size()))
        throw std::out_of_range("unknown light");
    lights_[static_cast<std::size_t>(index)].position = p;
}

void World::clear_lights() { lights_.clear(); }

int World::add_landmark(Vec2 p) {
    landmarks_.push_back(p);
    return static_cast<int>(landmarks_.size()) - 1;
}

void World::use_local(const LocalParams& p) {
    local_params_ = p;
    for (RobotState& r : robots_) r.proto = LocalState{};
}

void World::use_street(const StreetParams& p) {
    street_params_ = p;
    for (RobotState& r : robots_) r.proto = StreetState{};
}

void World::use_feedback(const FeedbackParams& p, int scout_id) {
    robot(scout_id);  // range check
    feedback_params_ = p;
    for (RobotState& r : robots_) {
        FeedbackState st;
        if (r.id == scout_id) {
            st.is_scout = true;
            st.mode = FeedbackState::Mode::Searching;
        }
        r.proto = std::move(st);
    }
}

const LocalState& World::local_state(int id) const {
    return std::get<LocalState>(robot(id).proto);
}
const StreetState& World::street_state(int id) const {
    return std::get<StreetState>(robot(id).proto);
}
const FeedbackState& World::feedback_state(int id) const {
    return std::get<FeedbackState>(robot(id).proto);
}

void World::inject(Vec2 at, Message msg) { pending_.push_back({at, std::move(msg)}); }

double World::light_at(Vec2 p) const {
    if (lights_.empty()) return 0.0;
    std::vector<kernels::LightPoint> pts;
    pts.reserve(lights_.size());
    for (const LightSource& l : lights_)
        pts.push_back({l.position.x, l.position.y, l.peak_intensity,
                       l.falloff_radius});
    double out = 0.0;
    kernels::light_levels(&p.x, &p.y, 1, pts, &out);
    return out;
}

std::vector<int> World::neighbors(int id, double radius) const {
    robot(id);  // throws for unknown ids
    if (!(radius > 0.0)) throw std::invalid_argument("radius must be > 0");
    const int n = robot_count();
    std::vector<double> xs(static_cast<std::size_t>(n)),
        ys(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        xs[static_cast<std::size_t>(i)] = robots_[static_cast<std::size_t>(i)].pose.position.x;
        ys[static_cast<std::size_t>(i)] = robots_[static_cast<std::size_t>(i)].pose.position.y;
    }
    const Vec2 me = robots_[static_cast<std::size_t>(id)].pose.position;
    std::uint64_t mask = kernels::points_in_range(
        xs.data(), ys.data(), static_cast<std::size_t>(n), me.x, me.y,
        radius * radius);
    mask &= ~(std::uint64_t{1} << id);
    std::vector<int> out;
    while (mask) {
        out.push_back(std::countr_zero(mask));
        mask &= mask - 1;
    }
    return out;
}

graph::ConnectivityGraph World::comm_graph() const {
    return graph_at(cfg_.comm_radius);
}

graph::ConnectivityGraph World::graph_at(double radius) const {
    const std::vector<Vec2> pos = positions();
    return graph::build_graph(pos, radius);
}

void World::deliver(const Message& msg, Vec2 sender_pos) {
    const int n = robot_count();
    auto give = [&](int j) {
        RobotState& r = robots_[static_cast<std::size_t>(j)];
        const double d = distance(sender_pos, r.pose.position);
        if (d > cfg_.comm_radius) return;
        r.inbox.push_back(msg);
        log_.push(clock_, j, Ev::Deliver, msg.from, 0, d);
    };
    if (msg.to >= 0) {
        if (msg.to < n && msg.to != msg.from) give(msg.to);
        return;
    }
    for (int j = 0; j < n; ++j)
        if (j != msg.from) give(j);
}

void World::step() {
    const int n = robot_count();
    const std::size_t un = static_cast<std::size_t>(n);

    // Start-of-tick snapshot: poses, range masks, sensed light.
    std::vector<Pose> poses(un);
    std::vector<double> xs(un), ys(un);
    for (int i = 0; i < n; ++i) {
        poses[static_cast<std::size_t>(i)] = robots_[static_cast<std::size_t>(i)].pose;
        xs[static_cast<std::size_t>(i)] = poses[static_cast<std::size_t>(i)].position.x;
        ys[static_cast<std::size_t>(i)] = poses[static_cast<std::size_t>(i)].position.y;
    }
    std::vector<std::uint64_t> prox(un), comm(un);
    kernels::adjacency_masks(xs.data(), ys.data(), un,
                             cfg_.proximity_radius * cfg_.proximity_radius,
                             prox.data());
    kernels::adjacency_masks(xs.data(), ys.data(), un,
                             cfg_.comm_radius * cfg_.comm_radius, comm.data());
    std::vector<double> light(un, 0.0);
    if (!lights_.empty()) {
        std::vector<kernels::LightPoint> pts;
        pts.reserve(lights_.size());
        for (const LightSource& l : lights_)
            pts.push_back({l.position.x, l.position.y, l.peak_intensity,
                           l.falloff_radius});
        kernels::light_levels(xs.data(), ys.data(), un, pts, light.data());
    }

    // Street identities visible to each robot, for the meeting-streets
    // finishing condition.
    const bool street_mode =
        n > 0 && std::holds_alternative<StreetState>(robots_[0].proto);
    std::vector<std::vector<int>> origins(un);
    if (street_mode) {
        for (int i = 0; i < n; ++i) {
            std::uint64_t m = comm[static_cast<std::size_t>(i)];
            while (m) {
                const int j = std::countr_zero(m);
                m &= m - 1;
                const auto& st =
                    std::get<StreetState>(robots_[static_cast<std::size_t>(j)].proto);
                if (st.role != StreetState::Role::Free) {
                    auto& row = origins[static_cast<std::size_t>(i)];
                    if (std::find(row.begin(), row.end(), st.origin) == row.end())
                        row.push_back(st.origin);
                }
            }
        }
    }

    // Phase 1: protocols.  Robots are stepped in id order; outgoing frames
    // stage until after motion.
    std::vector<MotionCommand> cmds(un);
    std::vector<Message> staged;
    for (int i = 0; i < n; ++i) {
        RobotState& r = robots_[static_cast<std::size_t>(i)];
        StepContext ctx;
        ctx.tick = clock_;
        ctx.self = i;
        ctx.pose = poses[static_cast<std::size_t>(i)];
        ctx.light = light[static_cast<std::size_t>(i)];
        ctx.prox_radius = cfg_.proximity_radius;
        ctx.prox_mask = prox[static_cast<std::size_t>(i)];
        ctx.comm_mask = comm[static_cast<std::size_t>(i)];
        for (const Vec2& lm : landmarks_)
            if (distance(lm, ctx.pose.position) <= cfg_.proximity_radius)
                ctx.near_landmark = true;
        if (resource_ &&
            distance(*resource_, ctx.pose.position) <= cfg_.proximity_radius)
            ctx.found_object = true;
        ctx.poses = poses;
        ctx.neighbor_street_origins = origins[static_cast<std::size_t>(i)];
        ctx.inbox = r.inbox;
        ctx.rng = &rng_;
        ctx.log = &log_;
        ctx.outbox = &staged;

        const std::size_t staged_before = staged.size();
        MotionCommand cmd;
        if (auto* ls = std::get_if<LocalState>(&r.proto))
            cmd = local_step(*ls, local_params_, ctx.prox_mask != 0,
                             ctx.light, ctx);
        else if (auto* ss = std::get_if<StreetState>(&r.proto))
            cmd = street_step(*ss, street_params_, ctx);
        else if (auto* fs = std::get_if<FeedbackState>(&r.proto))
            cmd = feedback_step(*fs, feedback_params_, r.capabilities, ctx);
        for (std::size_t k = staged_before; k < staged.size(); ++k)
            staged[k].from = i;  // no spoofing
        cmds[static_cast<std::size_t>(i)] = cmd;
    }

    // Phase 2+3: kinematics with multiplicative odometry noise, then walls.
    // Exactly two draws per robot per tick, rotation first.
    for (int i = 0; i < n; ++i) {
        RobotState& r = robots_[static_cast<std::size_t>(i)];
        const MotionCommand& cmd = cmds[static_cast<std::size_t>(i)];
        const double u_rot = rng_.symmetric();
        const double u_dist = rng_.symmetric();
        double heading = wrap_angle(
            r.pose.heading + cmd.turn * (1.0 + u_rot * cfg_.rot_noise_frac));
        const double dist = cmd.forward * cfg_.speed * cfg_.dt *
                            (1.0 + u_dist * cfg_.dist_noise_frac);
        Vec2 p = r.pose.position + heading_vec(heading) * dist;
        const double cx = std::clamp(p.x, 0.0, cfg_.width);
        const double cy = std::clamp(p.y, 0.0, cfg_.height);
        if (cx != p.x) heading = 3.141592653589793 - heading;
        if (cy != p.y) heading = -heading;
        r.pose.position = {cx, cy};
        r.pose.heading = wrap_angle(heading);
    }

    // Phase 4: delivery at end-of-tick positions; inboxes turn over, so a
    // frame is seen exactly one tick after it was sent.
    for (RobotState& r : robots_) r.inbox.clear();
    for (const Message& m : staged)
        deliver(m, robots_[static_cast<std::size_t>(m.from)].pose.position);
    for (const Injection& inj : pending_) deliver(inj.msg, inj.at);
    pending_.clear();

    ++clock_;
}

void World::run(long ticks) {
    for (long i = 0; i < ticks; ++i) step();
}

}  // namespace swarm
