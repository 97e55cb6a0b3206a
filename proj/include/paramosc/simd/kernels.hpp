#pragma once

// Data-parallel inner loops with a scalar reference and vector variants
// chosen at runtime. Every variant performs the same IEEE operations in the
// same order (no FMA contraction, fixed reduction tree), so all variants are
// bit-for-bit interchangeable. The equivalence tests depend on that.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace paramosc::simd {

enum class Isa { scalar, avx2, neon };

std::string_view isa_name(Isa isa);

/// U(q) = c2 q^2 + c4 q^4 + c6 q^6.
struct SexticCoeffs {
    double c2 = 0.0;
    double c4 = 0.0;
    double c6 = 0.0;
};

struct KernelTable {
    Isa isa;

    /// q[i] <- q[i] - U'(q[i]) dt + sigma * noise[i]
    void (*euler_maruyama)(double* q, const double* noise, std::size_t n, SexticCoeffs c,
                           double dt, double sigma);

    /// u[i] <- U(q[i])
    void (*potential_values)(const double* q, double* u, std::size_t n, SexticCoeffs c);

    /// counts[j] <- number of eigenvalues of the symmetric tridiagonal matrix
    /// (diag, offdiag_sq = squared off-diagonal) strictly below shifts[j].
    void (*sturm_counts)(const double* diag, const double* offdiag_sq, std::size_t n,
                         double pivmin, const double* shifts, std::int64_t* counts,
                         std::size_t m);

    /// sum_i x[i] y[i] with four interleaved partial sums.
    double (*dot)(const double* x, const double* y, std::size_t n);
};

const KernelTable& scalar_kernels();

/// Table for a specific ISA, or nullptr when the build or the CPU lacks it.
const KernelTable* kernels_for(Isa isa);

/// Best table for this CPU. PARAMOSC_ISA=scalar|avx2|neon in the environment
/// overrides the choice when the requested ISA is usable.
const KernelTable& kernels();

std::vector<Isa> available_isas();

inline void euler_maruyama(std::span<double> q, std::span<const double> noise, SexticCoeffs c,
                           double dt, double sigma)
{
    kernels().euler_maruyama(q.data(), noise.data(), q.size(), c, dt, sigma);
}

inline void potential_values(std::span<const double> q, std::span<double> u, SexticCoeffs c)
{
    kernels().potential_values(q.data(), u.data(), q.size(), c);
}

inline void sturm_counts(std::span<const double> diag, std::span<const double> offdiag_sq,
                         double pivmin, std::span<const double> shifts,
                         std::span<std::int64_t> counts)
{
    kernels().sturm_counts(diag.data(), offdiag_sq.data(), diag.size(), pivmin, shifts.data(),
                           counts.data(), shifts.size());
}

inline double dot(std::span<const double> x, std::span<const double> y)
{
    return kernels().dot(x.data(), y.data(), x.size());
}

} // namespace paramosc::simd
