#include "paramosc/tridiagonal.hpp"

#include "paramosc/error.hpp"
#include "paramosc/simd/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

namespace paramosc {

void SymmetricTridiagonal::apply(std::span<const double> x, std::span<double> y) const
{
    const std::size_t n = size();
    for (std::size_t i = 0; i < n; ++i) {
        double s = diag[i] * x[i];
        if (i > 0) {
            s += offdiag[i - 1] * x[i - 1];
        }
        if (i + 1 < n) {
            s += offdiag[i] * x[i + 1];
        }
        y[i] = s;
    }
}

std::pair<double, double> SymmetricTridiagonal::gershgorin() const
{
    const std::size_t n = size();
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t i = 0; i < n; ++i) {
        double r = 0.0;
        if (i > 0) {
            r += std::abs(offdiag[i - 1]);
        }
        if (i + 1 < n) {
            r += std::abs(offdiag[i]);
        }
        lo = std::min(lo, diag[i] - r);
        hi = std::max(hi, diag[i] + r);
    }
    return {lo, hi};
}

double SymmetricTridiagonal::norm_bound() const
{
    const auto [lo, hi] = gershgorin();
    return std::max(std::abs(lo), std::abs(hi));
}

namespace {

struct SturmData {
    std::vector<double> offdiag_sq;
    double pivmin = 0.0;
};

SturmData prepare(const SymmetricTridiagonal& t)
{
    SturmData s;
    s.offdiag_sq.resize(t.offdiag.size());
    double emax = 1.0;
    for (std::size_t i = 0; i < t.offdiag.size(); ++i) {
        s.offdiag_sq[i] = t.offdiag[i] * t.offdiag[i];
        emax = std::max(emax, s.offdiag_sq[i]);
    }
    s.pivmin = std::numeric_limits<double>::min() * emax;
    return s;
}

} // namespace

std::vector<std::int64_t> count_below(const SymmetricTridiagonal& t, std::span<const double> shifts)
{
    const SturmData s = prepare(t);
    std::vector<std::int64_t> counts(shifts.size());
    simd::sturm_counts(t.diag, s.offdiag_sq, s.pivmin, shifts, counts);
    return counts;
}

std::vector<double> smallest_eigenvalues(const SymmetricTridiagonal& t, std::size_t count,
                                         double abs_tol)
{
    const std::size_t n = t.size();
    if (n == 0 || count > n || t.offdiag.size() + 1 != n) {
        throw InputError("tridiagonal: bad dimensions or eigenvalue count");
    }
    const SturmData s = prepare(t);
    auto [glo, ghi] = t.gershgorin();
    const double norm = std::max(std::abs(glo), std::abs(ghi));
    const double eps = std::numeric_limits<double>::epsilon();
    if (abs_tol <= 0.0) {
        abs_tol = 2.0 * eps * norm;
    }
    // Widen so the Sturm counts at the ends are unambiguous.
    glo -= 2.0 * eps * norm + s.pivmin;
    ghi += 2.0 * eps * norm + s.pivmin;

    std::vector<double> lo(count, glo);
    std::vector<double> hi(count, ghi);
    std::vector<std::size_t> active(count);
    for (std::size_t j = 0; j < count; ++j) {
        active[j] = j;
    }
    std::vector<double> mids;
    std::vector<std::int64_t> counts;
    for (int iter = 0; iter < 4000 && !active.empty(); ++iter) {
        mids.resize(active.size());
        counts.resize(active.size());
        for (std::size_t a = 0; a < active.size(); ++a) {
            const std::size_t j = active[a];
            mids[a] = 0.5 * (lo[j] + hi[j]);
        }
        simd::sturm_counts(t.diag, s.offdiag_sq, s.pivmin, mids, counts);
        std::vector<std::size_t> still;
        still.reserve(active.size());
        for (std::size_t a = 0; a < active.size(); ++a) {
            const std::size_t j = active[a];
            const double mid = mids[a];
            if (counts[a] > static_cast<std::int64_t>(j)) {
                hi[j] = mid;
            } else {
                lo[j] = mid;
            }
            // Every other tracked eigenvalue can use this count too.
            for (std::size_t k = 0; k < count; ++k) {
                if (k == j) {
                    continue;
                }
                if (counts[a] > static_cast<std::int64_t>(k)) {
                    hi[k] = std::min(hi[k], mid);
                } else {
                    lo[k] = std::max(lo[k], mid);
                }
            }
        }
        for (std::size_t j : active) {
            const double width = hi[j] - lo[j];
            const double tol = std::max(abs_tol, 2.0 * eps * std::max(std::abs(lo[j]), std::abs(hi[j])));
            const double mid = 0.5 * (lo[j] + hi[j]);
            if (!(width > tol) || mid == lo[j] || mid == hi[j]) {
                continue;
            }
            still.push_back(j);
        }
        active.swap(still);
    }
    if (!active.empty()) {
        throw ConvergenceFailure("bisection did not converge");
    }
    std::vector<double> out(count);
    for (std::size_t j = 0; j < count; ++j) {
        out[j] = 0.5 * (lo[j] + hi[j]);
    }
    return out;
}

namespace {

// LU with partial pivoting of T - shift I (same layout as LAPACK dgttrf).
struct TridiagonalLU {
    std::vector<double> dl, d, du, du2;
    std::vector<unsigned char> swapped;

    TridiagonalLU(const SymmetricTridiagonal& t, double shift, double tiny)
    {
        const std::size_t n = t.size();
        d.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            d[i] = t.diag[i] - shift;
        }
        dl = t.offdiag;
        du = t.offdiag;
        du2.assign(n > 2 ? n - 2 : 0, 0.0);
        swapped.assign(n > 0 ? n - 1 : 0, 0);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (std::abs(d[i]) >= std::abs(dl[i])) {
                if (d[i] == 0.0) {
                    d[i] = tiny;
                }
                const double fact = dl[i] / d[i];
                dl[i] = fact;
                d[i + 1] -= fact * du[i];
            } else {
                const double fact = d[i] / dl[i];
                d[i] = dl[i];
                dl[i] = fact;
                const double temp = du[i];
                du[i] = d[i + 1];
                d[i + 1] = temp - fact * d[i + 1];
                if (i + 2 < n) {
                    du2[i] = du[i + 1];
                    du[i + 1] = -fact * du[i + 1];
                }
                swapped[i] = 1;
            }
        }
        if (n > 0 && d[n - 1] == 0.0) {
            d[n - 1] = tiny;
        }
    }

    void solve(std::vector<double>& b) const
    {
        const std::size_t n = d.size();
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (!swapped[i]) {
                b[i + 1] -= dl[i] * b[i];
            } else {
                const double temp = b[i];
                b[i] = b[i + 1];
                b[i + 1] = temp - dl[i] * b[i];
            }
        }
        b[n - 1] /= d[n - 1];
        if (n > 1) {
            b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2];
        }
        for (std::size_t k = n - 2; k-- > 0;) {
            b[k] = (b[k] - du[k] * b[k + 1] - du2[k] * b[k + 2]) / d[k];
        }
    }
};

void normalize(std::vector<double>& v)
{
    double m = 0.0;
    for (double x : v) {
        m = std::max(m, std::abs(x));
    }
    if (m == 0.0) {
        return;
    }
    for (double& x : v) {
        x /= m;
    }
    double s = 0.0;
    for (double x : v) {
        s += x * x;
    }
    const double inv = 1.0 / std::sqrt(s);
    for (double& x : v) {
        x *= inv;
    }
}

void project_out(std::vector<double>& v, std::span<const std::vector<double>> basis)
{
    for (const auto& b : basis) {
        double p = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            p += v[i] * b[i];
        }
        for (std::size_t i = 0; i < v.size(); ++i) {
            v[i] -= p * b[i];
        }
    }
}

} // namespace

std::vector<double> inverse_iteration(const SymmetricTridiagonal& t, double eigenvalue,
                                      std::span<const std::vector<double>> orthogonal_to,
                                      int sweeps)
{
    const std::size_t n = t.size();
    const double norm = std::max(t.norm_bound(), std::numeric_limits<double>::min());
    const double eps = std::numeric_limits<double>::epsilon();
    const TridiagonalLU lu(t, eigenvalue, eps * norm);

    // Deterministic start vector without any parity, so odd modes are reachable.
    std::vector<double> v(n);
    std::uint64_t state = 0x9E3779B97F4A7C15ULL;
    for (std::size_t i = 0; i < n; ++i) {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        v[i] = 0.5 + static_cast<double>(state >> 11) * 0x1.0p-53;
    }
    project_out(v, orthogonal_to);
    normalize(v);
    for (int s = 0; s < sweeps; ++s) {
        lu.solve(v);
        normalize(v);
        project_out(v, orthogonal_to);
        normalize(v);
    }
    // Fix the sign so the largest-magnitude entry is positive.
    std::size_t imax = 0;
    for (std::size_t i = 1; i < n; ++i) {
        if (std::abs(v[i]) > std::abs(v[imax])) {
            imax = i;
        }
    }
    if (v[imax] < 0.0) {
        for (double& x : v) {
            x = -x;
        }
    }
    return v;
}

EigenPairs smallest_eigenpairs(const SymmetricTridiagonal& t, std::size_t count)
{
    EigenPairs out;
    out.values = smallest_eigenvalues(t, count);
    const double cluster = 1e-3 * t.norm_bound();
    for (std::size_t j = 0; j < count; ++j) {
        std::vector<std::vector<double>> near;
        for (std::size_t k = 0; k < j; ++k) {
            if (std::abs(out.values[j] - out.values[k]) < cluster) {
                near.push_back(out.vectors[k]);
            }
        }
        out.vectors.push_back(inverse_iteration(t, out.values[j], near));
    }
    return out;
}

} // namespace paramosc
