// AVX2 kernels. Four doubles per lane pass, scalar tail. Multiplies and adds
// are kept as separate exactly-rounded operations (no FMA) and this file is
// compiled with -ffp-contract=off, so results match the scalar reference
// bit-for-bit.

#if defined(__x86_64__)

#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "kernels_detail.hpp"

namespace swarm::kernels::detail {

std::uint64_t points_in_range_avx2(const double* xs, const double* ys,
                                   std::size_t n, double px, double py,
                                   double r_sq) {
    const __m256d vpx = _mm256_set1_pd(px);
    const __m256d vpy = _mm256_set1_pd(py);
    const __m256d vr2 = _mm256_set1_pd(r_sq);

    std::uint64_t mask = 0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(xs + i), vpx);
        const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(ys + i), vpy);
        const __m256d d2 =
            _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
        const __m256d le = _mm256_cmp_pd(d2, vr2, _CMP_LE_OQ);
        mask |= static_cast<std::uint64_t>(_mm256_movemask_pd(le)) << i;
    }
    for (; i < n; ++i) {
        const double dx = xs[i] - px;
        const double dy = ys[i] - py;
        if (dx * dx + dy * dy <= r_sq) mask |= std::uint64_t{1} << i;
    }
    return mask;
}

void light_levels_avx2(const double* xs, const double* ys, std::size_t n,
                       std::span<const LightPoint> lights, double* out) {
    for (std::size_t i = 0; i < n; ++i) out[i] = 0.0;
    const __m256d zero = _mm256_setzero_pd();
    const __m256d one = _mm256_set1_pd(1.0);
    for (const LightPoint& lp : lights) {
        const __m256d vx = _mm256_set1_pd(lp.x);
        const __m256d vy = _mm256_set1_pd(lp.y);
        const __m256d vfall = _mm256_set1_pd(lp.falloff);
        const __m256d vpeak = _mm256_set1_pd(lp.peak);
        std::size_t i = 0;
        for (; i + 4 <= n; i += 4) {
            const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(xs + i), vx);
            const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(ys + i), vy);
            const __m256d d = _mm256_sqrt_pd(
                _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy)));
            const __m256d v = _mm256_sub_pd(one, _mm256_div_pd(d, vfall));
            const __m256d contrib = _mm256_mul_pd(vpeak, _mm256_max_pd(zero, v));
            _mm256_storeu_pd(out + i,
                             _mm256_add_pd(_mm256_loadu_pd(out + i), contrib));
        }
        for (; i < n; ++i) {
            const double dx = xs[i] - lp.x;
            const double dy = ys[i] - lp.y;
            const double d = std::sqrt(dx * dx + dy * dy);
            const double v = 1.0 - d / lp.falloff;
            out[i] += lp.peak * std::max(0.0, v);
        }
    }
}

}  // namespace swarm::kernels::detail

#endif  // __x86_64__
