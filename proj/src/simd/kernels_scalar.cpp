#include "kernels_internal.hpp"

#include <cmath>

namespace paramosc::simd {

namespace detail {

std::int64_t sturm_count_one(const double* diag, const double* offdiag_sq, std::size_t n,
                             double pivmin, double shift)
{
    std::int64_t count = 0;
    double q = diag[0] - shift;
    if (std::abs(q) < pivmin) {
        q = -pivmin;
    }
    count += q < 0.0;
    for (std::size_t i = 1; i < n; ++i) {
        q = (diag[i] - shift) - offdiag_sq[i - 1] / q;
        if (std::abs(q) < pivmin) {
            q = -pivmin;
        }
        count += q < 0.0;
    }
    return count;
}

} // namespace detail

namespace {

void em_scalar(double* q, const double* noise, std::size_t n, SexticCoeffs c, double dt,
               double sigma)
{
    const double a1 = 2.0 * c.c2;
    const double a3 = 4.0 * c.c4;
    const double a5 = 6.0 * c.c6;
    for (std::size_t i = 0; i < n; ++i) {
        q[i] = detail::em_update(q[i], noise[i], a1, a3, a5, dt, sigma);
    }
}

void potential_scalar(const double* q, double* u, std::size_t n, SexticCoeffs c)
{
    for (std::size_t i = 0; i < n; ++i) {
        u[i] = detail::sextic_value(q[i], c);
    }
}

void sturm_scalar(const double* diag, const double* offdiag_sq, std::size_t n, double pivmin,
                  const double* shifts, std::int64_t* counts, std::size_t m)
{
    for (std::size_t j = 0; j < m; ++j) {
        counts[j] = detail::sturm_count_one(diag, offdiag_sq, n, pivmin, shifts[j]);
    }
}

double dot_scalar(const double* x, const double* y, std::size_t n)
{
    double acc[4] = {0.0, 0.0, 0.0, 0.0};
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        for (std::size_t k = 0; k < 4; ++k) {
            acc[k] = acc[k] + x[i + k] * y[i + k];
        }
    }
    double s = (acc[0] + acc[1]) + (acc[2] + acc[3]);
    for (; i < n; ++i) {
        s = s + x[i] * y[i];
    }
    return s;
}

} // namespace

const KernelTable& scalar_kernels()
{
    static const KernelTable table{Isa::scalar, em_scalar, potential_scalar, sturm_scalar,
                                   dot_scalar};
    return table;
}

} // namespace paramosc::simd
