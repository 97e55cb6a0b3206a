#include "kernels_internal.hpp"

#include <arm_neon.h>

namespace paramosc::simd::detail {

namespace {

void em_neon(double* q, const double* noise, std::size_t n, SexticCoeffs c, double dt,
             double sigma)
{
    const double a1 = 2.0 * c.c2;
    const double a3 = 4.0 * c.c4;
    const double a5 = 6.0 * c.c6;
    const float64x2_t va1 = vdupq_n_f64(a1);
    const float64x2_t va3 = vdupq_n_f64(a3);
    const float64x2_t va5 = vdupq_n_f64(a5);
    const float64x2_t vdt = vdupq_n_f64(dt);
    const float64x2_t vsig = vdupq_n_f64(sigma);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t x = vld1q_f64(q + i);
        const float64x2_t xi = vld1q_f64(noise + i);
        const float64x2_t x2 = vmulq_f64(x, x);
        float64x2_t inner = vaddq_f64(va3, vmulq_f64(x2, va5));
        inner = vaddq_f64(va1, vmulq_f64(x2, inner));
        const float64x2_t slope = vmulq_f64(x, inner);
        const float64x2_t r = vsubq_f64(x, vmulq_f64(slope, vdt));
        vst1q_f64(q + i, vaddq_f64(r, vmulq_f64(vsig, xi)));
    }
    for (; i < n; ++i) {
        q[i] = em_update(q[i], noise[i], a1, a3, a5, dt, sigma);
    }
}

void potential_neon(const double* q, double* u, std::size_t n, SexticCoeffs c)
{
    const float64x2_t v2 = vdupq_n_f64(c.c2);
    const float64x2_t v4 = vdupq_n_f64(c.c4);
    const float64x2_t v6 = vdupq_n_f64(c.c6);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t x = vld1q_f64(q + i);
        const float64x2_t x2 = vmulq_f64(x, x);
        float64x2_t inner = vaddq_f64(v4, vmulq_f64(x2, v6));
        inner = vaddq_f64(v2, vmulq_f64(x2, inner));
        vst1q_f64(u + i, vmulq_f64(x2, inner));
    }
    for (; i < n; ++i) {
        u[i] = sextic_value(q[i], c);
    }
}

void sturm_neon(const double* diag, const double* offdiag_sq, std::size_t n, double pivmin,
                const double* shifts, std::int64_t* counts, std::size_t m)
{
    const float64x2_t vpiv = vdupq_n_f64(pivmin);
    const float64x2_t vnegpiv = vdupq_n_f64(-pivmin);
    const float64x2_t zero = vdupq_n_f64(0.0);
    std::size_t j = 0;
    for (; j + 2 <= m; j += 2) {
        const float64x2_t x = vld1q_f64(shifts + j);
        int64x2_t cnt = vdupq_n_s64(0);
        float64x2_t q = vsubq_f64(vdupq_n_f64(diag[0]), x);
        q = vbslq_f64(vcltq_f64(vabsq_f64(q), vpiv), vnegpiv, q);
        cnt = vsubq_s64(cnt, vreinterpretq_s64_u64(vcltq_f64(q, zero)));
        for (std::size_t i = 1; i < n; ++i) {
            const float64x2_t d = vsubq_f64(vdupq_n_f64(diag[i]), x);
            q = vsubq_f64(d, vdivq_f64(vdupq_n_f64(offdiag_sq[i - 1]), q));
            q = vbslq_f64(vcltq_f64(vabsq_f64(q), vpiv), vnegpiv, q);
            cnt = vsubq_s64(cnt, vreinterpretq_s64_u64(vcltq_f64(q, zero)));
        }
        vst1q_s64(counts + j, cnt);
    }
    for (; j < m; ++j) {
        counts[j] = sturm_count_one(diag, offdiag_sq, n, pivmin, shifts[j]);
    }
}

double dot_neon(const double* x, const double* y, std::size_t n)
{
    float64x2_t acc01 = vdupq_n_f64(0.0);
    float64x2_t acc23 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc01 = vaddq_f64(acc01, vmulq_f64(vld1q_f64(x + i), vld1q_f64(y + i)));
        acc23 = vaddq_f64(acc23, vmulq_f64(vld1q_f64(x + i + 2), vld1q_f64(y + i + 2)));
    }
    double s = (vgetq_lane_f64(acc01, 0) + vgetq_lane_f64(acc01, 1)) +
               (vgetq_lane_f64(acc23, 0) + vgetq_lane_f64(acc23, 1));
    for (; i < n; ++i) {
        s = s + x[i] * y[i];
    }
    return s;
}

} // namespace

const KernelTable& neon_table()
{
    static const KernelTable table{Isa::neon, em_neon, potential_neon, sturm_neon, dot_neon};
    return table;
}

} // namespace paramosc::simd::detail
