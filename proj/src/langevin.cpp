#include "paramosc/langevin.hpp"

#include "paramosc/error.hpp"
#include "paramosc/parallel.hpp"
#include "paramosc/quadrature.hpp"
#include "paramosc/rng.hpp"
#include "paramosc/simd/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace paramosc {

namespace {

constexpr std::size_t group_width = 8;
constexpr std::uint64_t finite_check_interval = 256;

std::size_t group_count(std::size_t n) { return (n + group_width - 1) / group_width; }

/// A block of trajectories advanced together by the vector kernel. Lane i
/// draws from Stream(seed, first + i).
class Lanes {
public:
    Lanes(const Potential& u, double noise, double dt, std::uint64_t seed, std::uint64_t first,
          std::size_t count)
        : q(count, 0.0), c_(u.coeffs()), dt_(dt), sigma_(std::sqrt(2.0 * noise * dt)),
          xi_(count, 0.0)
    {
        streams_.reserve(count);
        for (std::size_t i = 0; i < count; ++i) {
            streams_.emplace_back(seed, first + i);
        }
    }

    void step()
    {
        if (sigma_ > 0.0) {
            for (std::size_t i = 0; i < q.size(); ++i) {
                xi_[i] = streams_[i].normal();
            }
        }
        simd::euler_maruyama(q, xi_, c_, dt_, sigma_);
        ++steps_;
        if (steps_ % finite_check_interval == 0) {
            check_finite();
        }
    }

    void check_finite() const
    {
        for (std::size_t i = 0; i < q.size(); ++i) {
            if (!std::isfinite(q[i])) {
                throw NonFiniteState("non-finite state in lane " + std::to_string(i) +
                                     " after " + std::to_string(steps_) + " steps (dt=" +
                                     std::to_string(dt_) + ")");
            }
        }
    }

    Stream& stream(std::size_t i) { return streams_[i]; }
    std::size_t size() const { return q.size(); }

    std::vector<double> q;

private:
    simd::SexticCoeffs c_;
    double dt_;
    double sigma_;
    std::vector<double> xi_;
    std::vector<Stream> streams_;
    std::uint64_t steps_ = 0;
};

/// Inverse-CDF sampler for rho_st.
class StationarySampler {
public:
    StationarySampler(const Potential& u, double noise)
    {
        StationaryDensity s = stationary_distribution(u, noise, 4001);
        q_ = std::move(s.q);
        cdf_ = cumulative_trapezoid(s.density, q_[1] - q_[0]);
        const double total = cdf_.back();
        for (double& c : cdf_) {
            c /= total;
        }
    }

    double draw(double p) const
    {
        auto it = std::upper_bound(cdf_.begin(), cdf_.end(), p);
        if (it == cdf_.begin()) {
            return q_.front();
        }
        if (it == cdf_.end()) {
            return q_.back();
        }
        const auto i = static_cast<std::size_t>(it - cdf_.begin());
        const double span = cdf_[i] - cdf_[i - 1];
        const double w = span > 0.0 ? (p - cdf_[i - 1]) / span : 0.5;
        return q_[i - 1] + w * (q_[i] - q_[i - 1]);
    }

private:
    std::vector<double> q_;
    std::vector<double> cdf_;
};

void require_sampling(double dt, std::size_t chains, std::uint64_t stride, double noise)
{
    if (!(dt > 0.0)) {
        throw InputError("dt must be positive");
    }
    if (chains == 0 || stride == 0) {
        throw InputError("need at least one chain and a positive sample stride");
    }
    if (!(noise > 0.0)) {
        throw InputError("stationary sampling needs D > 0");
    }
}

/// Runs chains started from rho_st; visit(chain, k, q) sees sample k of each
/// chain. Chains are grouped by index, so output is independent of threads.
template <class Visit>
void run_chains(const Potential& u, double noise, double dt, std::uint64_t seed,
                std::size_t chains, std::uint64_t burn_in, std::uint64_t samples,
                std::uint64_t stride, unsigned threads, Visit&& visit)
{
    const StationarySampler sampler(u, noise);
    parallel_for(group_count(chains), threads, [&](std::size_t g) {
        const std::size_t first = g * group_width;
        const std::size_t width = std::min(group_width, chains - first);
        Lanes lanes(u, noise, dt, seed, first, width);
        for (std::size_t i = 0; i < width; ++i) {
            lanes.q[i] = sampler.draw(lanes.stream(i).uniform());
        }
        for (std::uint64_t s = 0; s < burn_in; ++s) {
            lanes.step();
        }
        for (std::uint64_t k = 0; k < samples; ++k) {
            for (std::uint64_t s = 0; s < stride; ++s) {
                lanes.step();
            }
            for (std::size_t i = 0; i < width; ++i) {
                visit(first + i, k, lanes.q[i]);
            }
        }
        lanes.check_finite();
    });
}

double mean_of(const std::vector<double>& v)
{
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double standard_error(const std::vector<double>& v)
{
    if (v.size() < 2) {
        return 0.0;
    }
    const double m = mean_of(v);
    double ss = 0.0;
    for (double x : v) {
        ss += (x - m) * (x - m);
    }
    return std::sqrt(ss / static_cast<double>(v.size() - 1) / static_cast<double>(v.size()));
}

} // namespace

double stiffness_bound(const Potential& u, double noise, double q0)
{
    double half_width = std::abs(q0);
    if (noise > 0.0) {
        half_width = std::max(half_width, support_half_width(u, noise));
    } else {
        for (const Extremum& e : find_extrema(u).all()) {
            half_width = std::max(half_width, std::abs(e.position));
        }
    }
    return u.max_abs_curvature(half_width);
}

void check_step(const Potential& u, double noise, double dt, double q0, double max_product)
{
    if (!(dt > 0.0)) {
        throw InputError("dt must be positive");
    }
    const double k = stiffness_bound(u, noise, q0);
    if (dt * k > max_product) {
        throw StepTooLarge("dt*max|U''| = " + std::to_string(dt * k) + " exceeds " +
                           std::to_string(max_product) + "; use dt <= " +
                           std::to_string(max_product / k));
    }
}

void RunningMoments::add(double x)
{
    ++count;
    const double delta = x - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (x - mean);
}

void RunningMoments::merge(const RunningMoments& other)
{
    if (other.count == 0) {
        return;
    }
    if (count == 0) {
        *this = other;
        return;
    }
    const double n1 = static_cast<double>(count);
    const double n2 = static_cast<double>(other.count);
    const double delta = other.mean - mean;
    const double n = n1 + n2;
    mean += delta * n2 / n;
    m2 += other.m2 + delta * delta * n1 * n2 / n;
    count += other.count;
}

Trajectory integrate(const Potential& u, const TrajectoryConfig& cfg)
{
    if (cfg.steps == 0 || cfg.decimation == 0) {
        throw InputError("steps and decimation must be positive");
    }
    if (!(cfg.noise >= 0.0) || !std::isfinite(cfg.initial)) {
        throw InputError("noise must be >= 0 and the initial state finite");
    }
    check_step(u, cfg.noise, cfg.dt, cfg.initial);

    Lanes lane(u, cfg.noise, cfg.dt, cfg.seed, cfg.stream, 1);
    lane.q[0] = cfg.initial;
    for (std::uint64_t s = 0; s < cfg.burn_in; ++s) {
        lane.step();
    }
    Trajectory tr;
    tr.time.reserve(cfg.steps / cfg.decimation + 1);
    tr.q.reserve(cfg.steps / cfg.decimation + 1);
    tr.time.push_back(0.0);
    tr.q.push_back(lane.q[0]);
    for (std::uint64_t s = 1; s <= cfg.steps; ++s) {
        lane.step();
        const double q = lane.q[0];
        tr.moments.add(q);
        if (s % cfg.decimation == 0) {
            tr.time.push_back(static_cast<double>(s) * cfg.dt);
            tr.q.push_back(q);
        }
    }
    lane.check_finite();
    return tr;
}

MfptEstimate estimate_mfpt(const Potential& u, const ScaledParams& sp, Channel channel,
                           const MfptConfig& cfg)
{
    if (cfg.walkers == 0 || cfg.target_events == 0 || cfg.max_steps == 0) {
        throw InputError("mfpt: walkers, target events and step budget must be positive");
    }
    const RateResult kramers = switching_rate(u, sp, channel);
    const double qa = kramers.attractor;
    const double qs = kramers.saddle;
    const bool saddle = cfg.passage == Passage::saddle_crossing;
    const double inf = std::numeric_limits<double>::infinity();

    double start = 0.0;
    double lower = -inf;
    double upper = inf;
    switch (channel) {
    case Channel::bistable:
        start = qa;
        lower = saddle ? 0.0 : -qa;
        break;
    case Channel::tristable_escape:
        start = qa;
        lower = saddle ? qs : 0.0;
        break;
    case Channel::tristable_entry:
        start = 0.0;
        upper = saddle ? qs : qa;
        lower = -upper;
        break;
    }
    if (cfg.from_negative) {
        start = -start;
        std::swap(lower, upper);
        lower = -lower;
        upper = -upper;
    }
    check_step(u, sp.noise, cfg.dt, start);

    const std::size_t groups = group_count(cfg.walkers);
    const std::size_t per_group = (cfg.target_events + groups - 1) / groups;
    std::vector<std::vector<double>> times(groups);
    std::vector<std::size_t> censored(groups, 0);

    parallel_for(groups, cfg.threads, [&](std::size_t g) {
        const std::size_t first = g * group_width;
        const std::size_t width = std::min(group_width, cfg.walkers - first);
        Lanes lanes(u, sp.noise, cfg.dt, cfg.seed, first, width);
        std::vector<std::uint64_t> age(width, 0);
        std::vector<char> active(width, 1);
        std::size_t running = width;
        std::fill(lanes.q.begin(), lanes.q.end(), start);
        auto& out = times[g];
        // Runs already started are always completed, so stopping on the
        // event count does not favour short passages.
        for (std::uint64_t s = 0; s < cfg.max_steps && running > 0; ++s) {
            lanes.step();
            for (std::size_t i = 0; i < width; ++i) {
                if (!active[i]) {
                    continue;
                }
                ++age[i];
                const double q = lanes.q[i];
                if (q <= lower || q >= upper) {
                    out.push_back(static_cast<double>(age[i]) * cfg.dt);
                    age[i] = 0;
                    if (out.size() + (running - 1) >= per_group) {
                        active[i] = 0;
                        --running;
                    } else {
                        lanes.q[i] = start;
                    }
                }
            }
        }
        censored[g] = running;
    });

    std::vector<double> all;
    std::size_t cens = 0;
    for (std::size_t g = 0; g < groups; ++g) {
        all.insert(all.end(), times[g].begin(), times[g].end());
        cens += censored[g];
    }

    MfptEstimate est;
    est.events = all.size();
    est.censored = cens;
    est.budget_exhausted = cens > 0;
    est.barrier_ratio = kramers.barrier / sp.noise;
    est.barrier_out_of_range = est.barrier_ratio < 3.0 || est.barrier_ratio > 8.0;
    est.low_confidence = est.events < cfg.min_events;
    if (!all.empty()) {
        est.mean_time = mean_of(all);
        est.standard_error = standard_error(all);
        est.rate = 1.0 / est.mean_time;
        est.rate_error = est.standard_error / (est.mean_time * est.mean_time);
    }
    return est;
}

void fit_decay(AcfEstimate& est, double lower, double upper)
{
    const auto& r = est.normalized;
    std::size_t begin = 0;
    while (begin < r.size() && r[begin] > upper) {
        ++begin;
    }
    std::size_t end = begin;
    while (end < r.size() && r[end] >= lower) {
        ++end;
    }
    if (end - begin < 3) {
        throw FitWindowEmpty("autocorrelation has " + std::to_string(end - begin) +
                             " lags in [" + std::to_string(lower) + ", " + std::to_string(upper) +
                             "]; adjust the sample stride or the lag range");
    }
    // Weighted least squares on ln(acf). The estimator's absolute error is
    // roughly lag-independent, so ln(acf) has variance ~ 1/acf^2.
    double sw = 0.0;
    double st = 0.0;
    double sy = 0.0;
    for (std::size_t i = begin; i < end; ++i) {
        const double w = r[i] * r[i];
        sw += w;
        st += w * est.lags[i];
        sy += w * std::log(r[i]);
    }
    const double tm = st / sw;
    const double ym = sy / sw;
    double stt = 0.0;
    double sty = 0.0;
    for (std::size_t i = begin; i < end; ++i) {
        const double w = r[i] * r[i];
        const double dt = est.lags[i] - tm;
        stt += w * dt * dt;
        sty += w * dt * (std::log(r[i]) - ym);
    }
    const double slope = sty / stt;
    double rss = 0.0;
    for (std::size_t i = begin; i < end; ++i) {
        const double e = std::log(r[i]) - (ym + slope * (est.lags[i] - tm));
        rss += r[i] * r[i] * e * e;
    }
    if (!(slope < 0.0)) {
        throw FitWindowEmpty("autocorrelation does not decay on the fit window");
    }
    est.decrement = -slope;
    est.window_start = est.lags[begin];
    est.window_end = est.lags[end - 1];
    est.fit_points = end - begin;
    est.residual = std::sqrt(rss / sw);
}

AcfEstimate estimate_acf_decrement(const Potential& u, double noise, const AcfConfig& cfg)
{
    require_sampling(cfg.dt, cfg.chains, cfg.sample_stride, noise);
    if (cfg.lag_stride == 0 || cfg.max_lag < 2 * cfg.lag_stride || cfg.max_lag >= cfg.samples) {
        throw InputError("acf: need 2*lag_stride <= max_lag < samples");
    }
    check_step(u, noise, cfg.dt, 0.0);

    const bool squared = cfg.observable == Observable::position_squared;
    std::uint64_t burn_in = cfg.burn_in;
    AcfEstimate est;
    for (int round = 0;; ++round) {
        std::vector<std::vector<double>> x(cfg.chains, std::vector<double>(cfg.samples));
        run_chains(u, noise, cfg.dt, cfg.seed, cfg.chains, burn_in, cfg.samples,
                   cfg.sample_stride, cfg.threads,
                   [&](std::size_t c, std::uint64_t k, double q) { x[c][k] = squared ? q * q : q; });

        double sum = 0.0;
        for (const auto& chain : x) {
            sum += std::accumulate(chain.begin(), chain.end(), 0.0);
        }
        const double mean = sum / static_cast<double>(cfg.chains * cfg.samples);
        for (auto& chain : x) {
            for (double& v : chain) {
                v -= mean;
            }
        }

        est = AcfEstimate{};
        const double tau = cfg.dt * static_cast<double>(cfg.sample_stride);
        for (std::size_t lag = 0; lag <= cfg.max_lag; lag += cfg.lag_stride) {
            const std::size_t n = cfg.samples - lag;
            double acc = 0.0;
            for (const auto& chain : x) {
                acc += simd::dot(std::span<const double>(chain.data(), n),
                                 std::span<const double>(chain.data() + lag, n));
            }
            est.lags.push_back(static_cast<double>(lag) * tau);
            est.autocovariance.push_back(acc / static_cast<double>(n * cfg.chains));
        }
        const double var = est.autocovariance.front();
        for (double c : est.autocovariance) {
            est.normalized.push_back(c / var);
        }
        fit_decay(est, cfg.fit_lower, cfg.fit_upper);
        est.burn_in_used = burn_in;

        const auto needed = static_cast<std::uint64_t>(std::ceil(10.0 / est.decrement / cfg.dt));
        if (burn_in >= needed || round + 1 >= cfg.burn_in_rounds) {
            break;
        }
        burn_in = needed;
    }
    return est;
}

HistogramResult stationary_histogram(const Potential& u, double noise, const SamplingConfig& cfg,
                                     std::size_t bins)
{
    require_sampling(cfg.dt, cfg.chains, cfg.sample_stride, noise);
    if (bins < 2 || cfg.steps < cfg.sample_stride) {
        throw InputError("histogram: need >= 2 bins and at least one sample per chain");
    }
    check_step(u, noise, cfg.dt, 0.0);

    const StationaryDensity ref = stationary_distribution(u, noise, 4001);
    const double q_max = ref.q.back();
    const double width = 2.0 * q_max / static_cast<double>(bins);

    HistogramResult h;
    h.edges.resize(bins + 1);
    for (std::size_t b = 0; b <= bins; ++b) {
        h.edges[b] = -q_max + static_cast<double>(b) * width;
    }
    h.edges.back() = q_max;

    // Reference bin masses by Simpson on each bin.
    constexpr std::size_t sub = 21;
    std::vector<double> ref_mass(bins);
    std::vector<double> f(sub);
    const double hs = width / static_cast<double>(sub - 1);
    for (std::size_t b = 0; b < bins; ++b) {
        for (std::size_t j = 0; j < sub; ++j) {
            const double q = h.edges[b] + static_cast<double>(j) * hs;
            f[j] = std::exp(-u.value(q) / noise - ref.log_partition);
        }
        ref_mass[b] = simpson(f, hs);
    }

    const std::uint64_t samples = cfg.steps / cfg.sample_stride;
    std::vector<std::vector<std::uint64_t>> counts(cfg.chains, std::vector<std::uint64_t>(bins, 0));
    std::vector<std::uint64_t> outside(cfg.chains, 0);
    std::vector<RunningMoments> moments(cfg.chains);
    std::vector<double> third(cfg.chains, 0.0);
    std::vector<double> fourth(cfg.chains, 0.0);
    run_chains(u, noise, cfg.dt, cfg.seed, cfg.chains, 0, samples, cfg.sample_stride, cfg.threads,
               [&](std::size_t c, std::uint64_t, double q) {
                   moments[c].add(q);
                   third[c] += q * q * q;
                   fourth[c] += q * q * q * q;
                   const double pos = (q + q_max) / width;
                   if (pos < 0.0 || pos >= static_cast<double>(bins)) {
                       ++outside[c];
                   } else {
                       ++counts[c][static_cast<std::size_t>(pos)];
                   }
               });

    const auto per_chain = static_cast<double>(samples);
    const auto chains = static_cast<double>(cfg.chains);
    h.samples = samples * cfg.chains;
    h.outside = std::accumulate(outside.begin(), outside.end(), std::uint64_t{0});
    h.density.resize(bins);
    h.reference.resize(bins);
    h.z_scores.resize(bins);
    double tv = static_cast<double>(h.outside) / static_cast<double>(h.samples);
    for (std::size_t b = 0; b < bins; ++b) {
        std::vector<double> p(cfg.chains);
        for (std::size_t c = 0; c < cfg.chains; ++c) {
            p[c] = static_cast<double>(counts[c][b]) / per_chain;
        }
        const double pm = mean_of(p);
        const double se = standard_error(p);
        h.density[b] = pm / width;
        h.reference[b] = ref_mass[b] / width;
        tv += std::abs(pm - ref_mass[b]);
        h.z_scores[b] = se > 0.0 ? (pm - ref_mass[b]) / se : 0.0;
        h.max_abs_z = std::max(h.max_abs_z, std::abs(h.z_scores[b]));
    }
    h.tv_distance = 0.5 * tv;

    RunningMoments total;
    std::vector<double> chain_means(cfg.chains);
    double s3 = 0.0;
    double s4 = 0.0;
    for (std::size_t c = 0; c < cfg.chains; ++c) {
        total.merge(moments[c]);
        chain_means[c] = moments[c].mean;
        s3 += third[c];
        s4 += fourth[c];
    }
    const double n = per_chain * chains;
    const double m = total.mean;
    h.mean = m;
    h.mean_error = standard_error(chain_means);
    h.variance = total.m2 / n;
    const double raw2 = h.variance + m * m;
    const double raw3 = s3 / n;
    const double raw4 = s4 / n;
    const double central4 = raw4 - 4.0 * m * raw3 + 6.0 * m * m * raw2 - 3.0 * m * m * m * m;
    h.kurtosis = central4 / (h.variance * h.variance);
    return h;
}

OccupationEstimate basin_occupations(const Potential& u, double noise, const SamplingConfig& cfg)
{
    require_sampling(cfg.dt, cfg.chains, cfg.sample_stride, noise);
    check_step(u, noise, cfg.dt, 0.0);
    const ExtremumSet ex = find_extrema(u);
    if (ex.degeneracy || ex.attractors.size() != ex.saddles.size() + 1) {
        throw BifurcationProximity("basins are ill-defined on a bifurcation line");
    }
    std::vector<double> cuts;
    for (const Extremum& s : ex.saddles) {
        cuts.push_back(s.position);
    }
    const std::size_t basins = ex.attractors.size();
    const std::uint64_t samples = cfg.steps / cfg.sample_stride;
    if (samples == 0) {
        throw InputError("occupations: steps must be at least the sample stride");
    }
    std::vector<std::vector<std::uint64_t>> counts(cfg.chains, std::vector<std::uint64_t>(basins, 0));
    run_chains(u, noise, cfg.dt, cfg.seed, cfg.chains, 0, samples, cfg.sample_stride, cfg.threads,
               [&](std::size_t c, std::uint64_t, double q) {
                   const auto k = static_cast<std::size_t>(
                       std::upper_bound(cuts.begin(), cuts.end(), q) - cuts.begin());
                   ++counts[c][k];
               });

    OccupationEstimate occ;
    occ.samples = samples * cfg.chains;
    for (std::size_t k = 0; k < basins; ++k) {
        std::vector<double> p(cfg.chains);
        for (std::size_t c = 0; c < cfg.chains; ++c) {
            p[c] = static_cast<double>(counts[c][k]) / static_cast<double>(samples);
        }
        occ.attractors.push_back(ex.attractors[k].position);
        occ.fractions.push_back(mean_of(p));
        occ.errors.push_back(standard_error(p));
    }
    return occ;
}

} // namespace paramosc
