// Scalar reference kernels. Compiled with -ffp-contract=off so the SIMD
// variants can reproduce these results bit-for-bit.

#include <algorithm>
#include <cmath>

#include "kernels_detail.hpp"

namespace swarm::kernels::detail {

std::uint64_t points_in_range_scalar(const double* xs, const double* ys,
                                     std::size_t n, double px, double py,
                                     double r_sq) {
    std::uint64_t mask = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = xs[i] - px;
        const double dy = ys[i] - py;
        if (dx * dx + dy * dy <= r_sq) mask |= std::uint64_t{1} << i;
    }
    return mask;
}

void light_levels_scalar(const double* xs, const double* ys, std::size_t n,
                         std::span<const LightPoint> lights, double* out) {
    for (std::size_t i = 0; i < n; ++i) out[i] = 0.0;
    for (const LightPoint& lp : lights) {
        for (std::size_t i = 0; i < n; ++i) {
            const double dx = xs[i] - lp.x;
            const double dy = ys[i] - lp.y;
            const double d = std::sqrt(dx * dx + dy * dy);
            const double v = 1.0 - d / lp.falloff;
            out[i] += lp.peak * std::max(0.0, v);
        }
    }
}

}  // namespace swarm::kernels::detail
