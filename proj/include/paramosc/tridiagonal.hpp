#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace paramosc {

/// Real symmetric tridiagonal matrix; offdiag[i] couples rows i and i+1.
struct SymmetricTridiagonal {
    std::vector<double> diag;
    std::vector<double> offdiag;

    std::size_t size() const { return diag.size(); }
    /// y = T x
    void apply(std::span<const double> x, std::span<double> y) const;
    /// Gershgorin interval containing the spectrum.
    std::pair<double, double> gershgorin() const;
    double norm_bound() const;
};

/// Number of eigenvalues strictly below each shift (Sturm sequence).
std::vector<std::int64_t> count_below(const SymmetricTridiagonal& t, std::span<const double> shifts);

/// The `count` smallest eigenvalues, ascending, by bisection on the Sturm
/// count. Intervals are refined to abs_tol (default: 2 eps ||T||) or to the
/// relative precision of the endpoints, whichever is larger.
std::vector<double> smallest_eigenvalues(const SymmetricTridiagonal& t, std::size_t count,
                                         double abs_tol = 0.0);

/// Unit eigenvector for an accurate eigenvalue by inverse iteration with a
/// pivoted tridiagonal LU. Vectors in `orthogonal_to` (unit norm) are
/// projected out each sweep, which separates clustered eigenvalues.
std::vector<double> inverse_iteration(const SymmetricTridiagonal& t, double eigenvalue,
                                      std::span<const std::vector<double>> orthogonal_to = {},
                                      int sweeps = 4);

struct EigenPairs {
    std::vector<double> values;
    std::vector<std::vector<double>> vectors;
};

EigenPairs smallest_eigenpairs(const SymmetricTridiagonal& t, std::size_t count);

} // namespace paramosc
