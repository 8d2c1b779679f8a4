#pragma once

#include "swarm/kernels.hpp"

namespace swarm::kernels::detail {

std::uint64_t points_in_range_scalar(const double* xs, const double* ys,
                                     std::size_t n, double px, double py,
                                     double r_sq);
void light_levels_scalar(const double* xs, const double* ys, std::size_t n,
                         std::span<const LightPoint> lights, double* out);

#if defined(__x86_64__)
std::uint64_t points_in_range_avx2(const double* xs, const double* ys,
                                   std::size_t n, double px, double py,
                                   double r_sq);
void light_levels_avx2(const double* xs, const double* ys, std::size_t n,
                       std::span<const LightPoint> lights, double* out);
#endif

}  // namespace swarm::kernels::detail
