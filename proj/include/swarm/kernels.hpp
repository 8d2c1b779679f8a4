#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace swarm::kernels {

/// Swarm-wide geometry passes run every tick: range queries against all robot
/// positions and light-level accumulation. Robot ids fit 6 bits, so a full
/// membership set packs into one 64-bit mask (bit i = robot i).
///
/// Two implementations exist: a scalar reference and an AVX2 variant. The
/// active one is picked at load time from CPU capabilities and can be forced
/// for testing. Both are compiled with FP contraction off and use the same
/// operation order, so their results are bit-identical; the equivalence suite
/// asserts that.

inline constexpr std::size_t max_points = 64;

enum class Backend { Scalar, Avx2 };

Backend active_backend();
bool backend_available(Backend b);

/// Forces a backend. Throws std::runtime_error if it is not available on
/// this machine.
void set_backend(Backend b);

std::string_view backend_name(Backend b);

struct LightPoint {
    double x, y;
    double peak;     // intensity at the source
    double falloff;  // radius at which the contribution reaches zero
};

/// Bitmask of points with (xs[i]-px)^2 + (ys[i]-py)^2 <= r_sq. n <= 64.
std::uint64_t points_in_range(const double* xs, const double* ys, std::size_t n,
                              double px, double py, double r_sq);

/// rows[i] = mask of points within sqrt(r_sq) of point i, self bit cleared.
/// Exactly symmetric: bit j of rows[i] equals bit i of rows[j].
void adjacency_masks(const double* xs, const double* ys, std::size_t n,
                     double r_sq, std::uint64_t* rows);

/// out[i] = sum over lights of peak * max(0, 1 - d_i/falloff), the scalar
/// level a single light sensor reports (no direction information).
void light_levels(const double* xs, const double* ys, std::size_t n,
                  std::span<const LightPoint> lights, double* out);

}  // namespace swarm::kernels
