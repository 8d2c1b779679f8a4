#pragma once

#include <cmath>
#include <numbers>

namespace swarm {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    bool operator==(const Vec2&) const = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 a) { return std::sqrt(dot(a, a)); }
inline double distance(Vec2 a, Vec2 b) { return norm(a - b); }
inline double distance_sq(Vec2 a, Vec2 b) {
    const double dx = a.x - b.x, dy = a.y - b.y;
    return dx * dx + dy * dy;
}

constexpr double two_pi = 2.0 * std::numbers::pi;

/// Wraps an angle into [0, 2*pi).
inline double wrap_angle(double a) {
    const double w = a - two_pi * std::floor(a / two_pi);
    return w >= two_pi ? 0.0 : w;  // guard against rounding up to 2*pi
}

/// Signed smallest rotation taking `from` to `to`, in (-pi, pi].
inline double angle_diff(double to, double from) {
    double d = wrap_angle(to - from);
    if (d > std::numbers::pi) d -= two_pi;
    return d;
}

inline Vec2 heading_vec(double heading) { return {std::cos(heading), std::sin(heading)}; }
inline double heading_of(Vec2 v) { return wrap_angle(std::atan2(v.y, v.x)); }

struct Pose {
    Vec2 position;
    double heading = 0.0;  // normalized to [0, 2*pi)
};

}  // namespace swarm
