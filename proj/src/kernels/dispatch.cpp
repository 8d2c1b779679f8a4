#include <stdexcept>

#include "kernels_detail.hpp"

namespace swarm::kernels {
namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

Backend detect() { return cpu_has_avx2() ? Backend::Avx2 : Backend::Scalar; }

Backend g_backend = detect();

}  // namespace

Backend active_backend() { return g_backend; }

bool backend_available(Backend b) {
    switch (b) {
        case Backend::Scalar: return true;
        case Backend::Avx2: return cpu_has_avx2();
    }
    return false;
}

void set_backend(Backend b) {
    if (!backend_available(b))
        throw std::runtime_error("kernel backend not available on this CPU");
    g_backend = b;
}

std::string_view backend_name(Backend b) {
    switch (b) {
        case Backend::Scalar: return "scalar";
        case Backend::Avx2: return "avx2";
    }
    return "?";
}

std::uint64_t points_in_range(const double* xs, const double* ys, std::size_t n,
                              double px, double py, double r_sq) {
#if defined(__x86_64__)
    if (g_backend == Backend::Avx2)
        return detail::points_in_range_avx2(xs, ys, n, px, py, r_sq);
#endif
    return detail::points_in_range_scalar(xs, ys, n, px, py, r_sq);
}

void adjacency_masks(const double* xs, const double* ys, std::size_t n,
                     double r_sq, std::uint64_t* rows) {
    for (std::size_t i = 0; i < n; ++i) {
        rows[i] = points_in_range(xs, ys, n, xs[i], ys[i], r_sq) &
                  ~(std::uint64_t{1} << i);
    }
}

void light_levels(const double* xs, const double* ys, std::size_t n,
                  std::span<const LightPoint> lights, double* out) {
#if defined(__x86_64__)
    if (g_backend == Backend::Avx2)
        return detail::light_levels_avx2(xs, ys, n, lights, out);
#endif
    return detail::light_levels_scalar(xs, ys, n, lights, out);
}

}  // namespace swarm::kernels
