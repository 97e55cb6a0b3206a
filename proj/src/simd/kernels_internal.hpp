#pragma once

#include "paramosc/simd/kernels.hpp"

namespace paramosc::simd::detail {

const KernelTable& avx2_table();
const KernelTable& neon_table();

// Shared scalar tails. Vector variants call these for the remainder so the
// arithmetic matches the reference exactly.

inline double em_update(double q, double noise, double a1, double a3, double a5, double dt,
                        double sigma)
{
    const double q2 = q * q;
    const double slope = q * (a1 + q2 * (a3 + q2 * a5));
    const double r = q - slope * dt;
    return r + sigma * noise;
}

inline double sextic_value(double q, SexticCoeffs c)
{
    const double q2 = q * q;
    return q2 * (c.c2 + q2 * (c.c4 + q2 * c.c6));
}

std::int64_t sturm_count_one(const double* diag, const double* offdiag_sq, std::size_t n,
                             double pivmin, double shift);

} // namespace paramosc::simd::detail
