#include "kernels_internal.hpp"

#include <immintrin.h>

namespace paramosc::simd::detail {

namespace {

void em_avx2(double* q, const double* noise, std::size_t n, SexticCoeffs c, double dt,
             double sigma)
{
    const double a1 = 2.0 * c.c2;
    const double a3 = 4.0 * c.c4;
    const double a5 = 6.0 * c.c6;
    const __m256d va1 = _mm256_set1_pd(a1);
    const __m256d va3 = _mm256_set1_pd(a3);
    const __m256d va5 = _mm256_set1_pd(a5);
    const __m256d vdt = _mm256_set1_pd(dt);
    const __m256d vsig = _mm256_set1_pd(sigma);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d x = _mm256_loadu_pd(q + i);
        const __m256d xi = _mm256_loadu_pd(noise + i);
        const __m256d x2 = _mm256_mul_pd(x, x);
        __m256d inner = _mm256_add_pd(va3, _mm256_mul_pd(x2, va5));
        inner = _mm256_add_pd(va1, _mm256_mul_pd(x2, inner));
        const __m256d slope = _mm256_mul_pd(x, inner);
        const __m256d r = _mm256_sub_pd(x, _mm256_mul_pd(slope, vdt));
        _mm256_storeu_pd(q + i, _mm256_add_pd(r, _mm256_mul_pd(vsig, xi)));
    }
    for (; i < n; ++i) {
        q[i] = em_update(q[i], noise[i], a1, a3, a5, dt, sigma);
    }
}

void potential_avx2(const double* q, double* u, std::size_t n, SexticCoeffs c)
{
    const __m256d v2 = _mm256_set1_pd(c.c2);
    const __m256d v4 = _mm256_set1_pd(c.c4);
    const __m256d v6 = _mm256_set1_pd(c.c6);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d x = _mm256_loadu_pd(q + i);
        const __m256d x2 = _mm256_mul_pd(x, x);
        __m256d inner = _mm256_add_pd(v4, _mm256_mul_pd(x2, v6));
        inner = _mm256_add_pd(v2, _mm256_mul_pd(x2, inner));
        _mm256_storeu_pd(u + i, _mm256_mul_pd(x2, inner));
    }
    for (; i < n; ++i) {
        u[i] = sextic_value(q[i], c);
    }
}

// Four shifts advance through the same Sturm recurrence in lock-step.
void sturm_avx2(const double* diag, const double* offdiag_sq, std::size_t n, double pivmin,
                const double* shifts, std::int64_t* counts, std::size_t m)
{
    const __m256d vpiv = _mm256_set1_pd(pivmin);
    const __m256d vnegpiv = _mm256_set1_pd(-pivmin);
    const __m256d sign_mask = _mm256_set1_pd(-0.0);
    const __m256d zero = _mm256_setzero_pd();
    std::size_t j = 0;
    for (; j + 4 <= m; j += 4) {
        const __m256d x = _mm256_loadu_pd(shifts + j);
        __m256i cnt = _mm256_setzero_si256();
        __m256d q = _mm256_sub_pd(_mm256_set1_pd(diag[0]), x);
        __m256d small = _mm256_cmp_pd(_mm256_andnot_pd(sign_mask, q), vpiv, _CMP_LT_OQ);
        q = _mm256_blendv_pd(q, vnegpiv, small);
        cnt = _mm256_sub_epi64(cnt, _mm256_castpd_si256(_mm256_cmp_pd(q, zero, _CMP_LT_OQ)));
        for (std::size_t i = 1; i < n; ++i) {
            const __m256d d = _mm256_sub_pd(_mm256_set1_pd(diag[i]), x);
            q = _mm256_sub_pd(d, _mm256_div_pd(_mm256_set1_pd(offdiag_sq[i - 1]), q));
            small = _mm256_cmp_pd(_mm256_andnot_pd(sign_mask, q), vpiv, _CMP_LT_OQ);
            q = _mm256_blendv_pd(q, vnegpiv, small);
            cnt = _mm256_sub_epi64(cnt, _mm256_castpd_si256(_mm256_cmp_pd(q, zero, _CMP_LT_OQ)));
        }
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(counts + j), cnt);
    }
    for (; j < m; ++j) {
        counts[j] = sturm_count_one(diag, offdiag_sq, n, pivmin, shifts[j]);
    }
}

double dot_avx2(const double* x, const double* y, std::size_t n)
{
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double s = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
    for (; i < n; ++i) {
        s = s + x[i] * y[i];
    }
    return s;
}

} // namespace

const KernelTable& avx2_table()
{
    static const KernelTable table{Isa::avx2, em_avx2, potential_avx2, sturm_avx2, dot_avx2};
    return table;
}

} // namespace paramosc::simd::detail
