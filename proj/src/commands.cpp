#include "paramosc/commands.hpp"

#include "paramosc/error.hpp"
#include "paramosc/fpe.hpp"
#include "paramosc/langevin.hpp"
#include "paramosc/potential.hpp"
#include "paramosc/rates.hpp"
#include "paramosc/rwaflow.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace paramosc {

namespace {

using json = nlohmann::ordered_json;

Header header_for(const std::string& command, Config& cfg, const RunOptions& opts)
{
    cfg.note("run.seed", std::to_string(opts.seed));
    cfg.note("run.format", to_string(opts.format));
    return Header{command, cfg.resolved()};
}

Cell opt_cell(const std::optional<double>& v)
{
    if (v) {
        return *v;
    }
    return std::monostate{};
}

std::size_t to_size(Config& cfg, const std::string& key, std::int64_t fallback, std::int64_t min)
{
    const std::int64_t v = cfg.get_int(key, fallback);
    if (v < min) {
        throw ConfigError(key + " must be at least " + std::to_string(min));
    }
    return static_cast<std::size_t>(v);
}

double relative_difference(double estimate, double reference)
{
    return std::abs(estimate - reference) / std::abs(reference);
}

Channel parse_channel(const std::string& name)
{
    if (name == "bistable") {
        return Channel::bistable;
    }
    if (name == "tristable_escape") {
        return Channel::tristable_escape;
    }
    if (name == "tristable_entry") {
        return Channel::tristable_entry;
    }
    throw ConfigError("unknown channel '" + name + "'");
}

double parse_support_rule(const std::string& rule)
{
    std::string value = rule;
    const std::string prefix = "support:";
    if (value.compare(0, prefix.size(), prefix) == 0) {
        value = value.substr(prefix.size());
    }
    try {
        std::size_t used = 0;
        const double t = std::stod(value, &used);
        if (used != value.size() || !(t >= 0.0)) {
            throw ConfigError("");
        }
        return t;
    } catch (const std::exception&) {
        throw ConfigError("q_max rule must be support:<threshold>, got '" + rule + "'");
    }
}

/// Sampling plan for the autocorrelation estimate, sized from an expected
/// decrement: `resolution` samples per 1/nu and chains `span`/nu long.
AcfConfig acf_plan(double nu, double dt, std::uint64_t seed, std::size_t chains, double span,
                   double resolution, unsigned threads)
{
    AcfConfig a;
    a.dt = dt;
    a.seed = seed;
    a.chains = chains;
    a.threads = threads;
    a.sample_stride = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::llround(1.0 / (resolution * nu * dt))));
    const double tau = dt * static_cast<double>(a.sample_stride);
    a.max_lag = static_cast<std::size_t>(std::ceil(std::log(40.0) / nu / tau));
    a.samples = std::max<std::uint64_t>(static_cast<std::uint64_t>(std::ceil(span / nu / tau)),
                                        2 * a.max_lag + 1);
    a.burn_in = static_cast<std::uint64_t>(std::ceil(12.0 / nu / dt));
    return a;
}

double default_dt(const Potential& u, double noise, double q0)
{
    return 0.05 / stiffness_bound(u, noise, q0);
}

json mfpt_json(const MfptEstimate& m, Channel channel, Passage passage, const RateResult& kramers)
{
    json j;
    j["channel"] = to_string(channel);
    j["passage"] = passage == Passage::commitment ? "commitment" : "saddle_crossing";
    j["mean_time"] = m.mean_time;
    j["standard_error"] = m.standard_error;
    j["events"] = m.events;
    j["censored"] = m.censored;
    j["rate"] = m.rate;
    j["rate_error"] = m.rate_error;
    j["kramers_rate"] = kramers.rate;
    j["barrier_ratio"] = m.barrier_ratio;
    j["low_confidence"] = m.low_confidence;
    j["budget_exhausted"] = m.budget_exhausted;
    j["barrier_out_of_range"] = m.barrier_out_of_range;
    return j;
}

json fixed_points_json(const std::vector<FlowFixedPoint>& points)
{
    json arr = json::array();
    for (const auto& fp : points) {
        json j;
        j["Q"] = fp.state.q;
        j["P"] = fp.state.p;
        j["R2"] = fp.radius_sq;
        j["stability"] = to_string(fp.stability);
        j["eigenvalues"] = json::array({json::array({fp.eigen[0].real(), fp.eigen[0].imag()}),
                                        json::array({fp.eigen[1].real(), fp.eigen[1].imag()})});
        j["residual"] = fp.residual;
        arr.push_back(std::move(j));
    }
    return arr;
}

std::size_t count_modes(const std::vector<double>& rho)
{
    const double peak = *std::max_element(rho.begin(), rho.end());
    std::size_t modes = 0;
    for (std::size_t i = 1; i + 1 < rho.size(); ++i) {
        if (rho[i] > rho[i - 1] && rho[i] >= rho[i + 1] && rho[i] > 1e-3 * peak) {
            ++modes;
        }
    }
    return modes;
}

} // namespace

ScaledParams reference_point(double noise, double barrier_ratio)
{
    // At mu_p = 0 the barrier is mu_B^3 / 6.
    const double mu_b = std::cbrt(6.0 * barrier_ratio * noise);
    ScaledParams sp;
    sp.detuning = 0.0;
    sp.drive = std::sqrt(1.0 + mu_b * mu_b);
    sp.noise = noise;
    sp.planck = 2.0 * noise;
    return sp;
}

CommandResult cmd_bifurcation(Config& cfg, const RunOptions& opts)
{
    const auto drives = cfg.get_grid("sweep.drives", "1:2:101");
    const double tol = cfg.get_double("bifurcation.tol", 1e-12);
    const ResolvedParams rp = resolve_params(cfg, reference_point());
    cfg.reject_unused();
    for (double f : drives) {
        if (!(f >= 1.0)) {
            throw InputError("bifurcation lines need drives >= 1");
        }
    }
    const Header header = header_for("bifurcation", cfg, opts);
    CommandResult res;

    Table analytic{{"f_p", "mu_B1", "mu_B2", "mu_phase"}, {}};
    for (double f : drives) {
        const double mu_b = bifurcation_detuning(f);
        analytic.add({f, -mu_b, mu_b, f > 1.0 ? phase_boundary(f) : 0.0});
    }
    res.files.push_back(write_table(opts.out, "bifurcation", analytic, header, opts.format));

    std::vector<double> traced_drives;
    std::copy_if(drives.begin(), drives.end(), std::back_inserter(traced_drives),
                 [](double f) { return f > 1.0; });
    if (!traced_drives.empty()) {
        const TracedDiagram diag = trace_bifurcation_diagram(traced_drives, tol, opts.threads);
        Table traced{{"f_p", "mu_B1_detected", "mu_B2_detected", "mu_B1_exact", "mu_B2_exact",
                      "mu_phase"},
                     {}};
        for (const auto& row : diag.rows) {
            traced.add({row.drive, row.lower, row.upper, row.lower_exact, row.upper_exact, row.phase});
        }
        res.files.push_back(write_table(opts.out, "bifurcation_traced", traced, header, opts.format));

        json summary;
        summary["max_error"] = diag.max_error;
        summary["meeting_gap"] = diag.meeting_gap;
        json line = json::array();
        for (const auto& pt : diag.threshold_line) {
            line.push_back(json::array({pt[0], pt[1]}));
        }
        summary["threshold_line"] = line;
        res.files.push_back(write_json(opts.out, "bifurcation_summary", summary, header));
        res.report.push_back("max |detected - exact| = " + format_number(diag.max_error));
    }

    json fp;
    fp["detuning"] = rp.scaled.detuning;
    fp["drive"] = rp.scaled.drive;
    fp["sign_gamma"] = rp.scaled.sign_gamma;
    fp["fixed_points"] = fixed_points_json(find_flow_fixed_points(rp.scaled));
    res.files.push_back(write_json(opts.out, "fixed_points", fp, header));
    return res;
}

CommandResult cmd_distribution(Config& cfg, const RunOptions& opts)
{
    const auto drives = cfg.get_grid("sweep.drives", "0.95,0.98,1,1.02,1.05,1.1,1.2");
    const std::size_t points = to_size(cfg, "distribution.points", 801, GridSpec::min_points);
    ScaledParams fallback;
    fallback.noise = 1e-3;
    fallback.planck = 2e-3;
    const ResolvedParams rp = resolve_params(cfg, fallback);
    cfg.reject_unused();
    const Header header = header_for("distribution", cfg, opts);

    Table snapshots{{"f_p", "Q", "U", "rho"}, {}};
    Table summary{{"f_p", "modes", "q_peak", "log_Z", "tail_mass"}, {}};
    for (double f : drives) {
        const Potential u = Potential::from_control(rp.scaled.detuning, f);
        const StationaryDensity s = stationary_distribution(u, rp.scaled.noise, points);
        for (std::size_t i = 0; i < s.q.size(); ++i) {
            snapshots.add({f, s.q[i], s.potential[i], s.density[i]});
        }
        const auto peak = std::max_element(s.density.begin(), s.density.end());
        const double q_peak = std::abs(s.q[static_cast<std::size_t>(peak - s.density.begin())]);
        summary.add({f, static_cast<std::int64_t>(count_modes(s.density)), q_peak, s.log_partition,
                     s.tail_mass});
    }
    CommandResult res;
    res.files.push_back(write_table(opts.out, "distribution", snapshots, header, opts.format));
    res.files.push_back(write_table(opts.out, "distribution_summary", summary, header, opts.format));
    return res;
}

CommandResult cmd_rates(Config& cfg, const RunOptions& opts)
{
    const std::string regime = cfg.get_string("rates.regime", "bistable");
    if (regime != "bistable" && regime != "tristable") {
        throw ConfigError("rates.regime must be bistable or tristable");
    }
    const bool bistable = regime == "bistable";
    const auto drives = cfg.get_grid("sweep.drives", "1.04:1.2:17");
    const auto detunings =
        cfg.get_grid("sweep.detunings", bistable ? "-0.66:0.66:45" : "0:1.5:31");
    const double tol = cfg.get_double("rates.curvature_tol", 1e-6);
    ScaledParams fallback;
    fallback.drive = 1.1;
    const ResolvedParams rp = resolve_params(cfg, fallback);
    cfg.reject_unused();
    const Header header = header_for("rates", cfg, opts);

    const double occ = rp.scaled.occupation_factor();
    const auto cells =
        activation_energy_surface(detunings, drives, occ - 0.5, rp.scaled.planck, tol);

    auto status = [](const SurfaceCell& c, const std::optional<double>& present) {
        if (c.status == CellStatus::near_bifurcation) {
            return to_string(CellStatus::near_bifurcation);
        }
        return present ? to_string(CellStatus::ok) : to_string(CellStatus::absent);
    };
    auto tilde = [occ](const std::optional<double>& r) -> Cell {
        if (r) {
            return *r * occ;
        }
        return std::monostate{};
    };

    Table t;
    if (bistable) {
        t.columns = {"mu_p", "f_p", "regime", "status", "R_A_tilde", "R_A", "Omega", "W"};
        for (const auto& c : cells) {
            const bool has = c.activation.has_value();
            t.add({c.detuning, c.drive, to_string(c.regime), status(c, c.activation),
                   tilde(c.activation), opt_cell(c.activation),
                   has ? opt_cell(c.prefactor) : Cell{}, has ? opt_cell(c.rate) : Cell{}});
        }
    } else {
        t.columns = {"mu_p", "f_p", "regime", "status", "R_A1_tilde", "R_A0_tilde", "R_A1", "R_A0",
                     "Omega", "W"};
        for (const auto& c : cells) {
            const bool has = c.activation_escape.has_value();
            t.add({c.detuning, c.drive, to_string(c.regime), status(c, c.activation_escape),
                   tilde(c.activation_escape), tilde(c.activation_entry),
                   opt_cell(c.activation_escape), opt_cell(c.activation_entry),
                   has ? opt_cell(c.prefactor) : Cell{}, has ? opt_cell(c.rate) : Cell{}});
        }
    }
    CommandResult res;
    res.files.push_back(write_table(opts.out, "rates_" + regime, t, header, opts.format));
    return res;
}

CommandResult cmd_fpe(Config& cfg, const RunOptions& opts)
{
    Nu1Options nu;
    nu.points = to_size(cfg, "fpe.grid_n", 2001, GridSpec::min_points);
    nu.support_threshold = parse_support_rule(cfg.get_string("fpe.q_max_rule", "support:30"));
    nu.reference_noise = cfg.get_double("fpe.reference_D", 1e-3);
    nu.refine = cfg.get_bool("fpe.refine", true);
    nu.threads = opts.threads;
    const std::size_t k = to_size(cfg, "fpe.k_eigs", 3, 1);
    const auto f_tilde = cfg.get_grid("fpe.f_tilde", "-4,-2,0,2,4,6");
    const auto mu_tilde = cfg.get_grid("fpe.mu_tilde", "-6:12:73");
    const ResolvedParams rp = resolve_params(cfg, reference_point());
    cfg.reject_unused();
    if (!(nu.reference_noise > 0.0)) {
        throw ConfigError("fpe.reference_D must be positive");
    }
    const Header header = header_for("fpe", cfg, opts);
    CommandResult res;

    const auto curves = nu1_curves(f_tilde, mu_tilde, nu);
    Table t{{"f_tilde", "mu_tilde", "nu1_tilde", "est_error", "grid_points"}, {}};
    for (const auto& p : curves) {
        t.add({p.f_tilde, p.mu_tilde, p.nu1_tilde, p.est_error, static_cast<std::int64_t>(p.grid_points)});
    }
    res.files.push_back(write_table(opts.out, "fpe_nu1", t, header, opts.format));

    const Potential u = Potential::from_scaled(rp.scaled);
    const auto op = build_operator(u, rp.scaled.noise, nu.points, Discretization::detailed_balance,
                                   nu.support_threshold);
    const EigenResult eig = lowest_decrements(op, k, nu.refine);
    Table spec{{"n", "nu_n"}, {}};
    for (std::size_t n = 0; n < eig.decrements.size(); ++n) {
        spec.add({static_cast<std::int64_t>(n), eig.decrements[n]});
    }
    res.files.push_back(write_table(opts.out, "fpe_spectrum", spec, header, opts.format));
    return res;
}

namespace {

struct SimulationPlan {
    ScaledParams sp;
    double dt = 0.0;
    std::uint64_t steps = 0;
    std::uint64_t decimation = 1;
    std::size_t walkers = 64;
    std::size_t events = 500;
    std::uint64_t max_steps = 0;
    std::string channel;
    Passage passage = Passage::commitment;
    std::size_t acf_chains = 16;
    double acf_span = 200.0;
    double acf_resolution = 40.0;
    Observable observable = Observable::position;
};

SimulationPlan read_plan(Config& cfg, const ScaledParams& sp, const std::string& section)
{
    SimulationPlan p;
    p.sp = sp;
    const Potential u = Potential::from_scaled(sp);
    double q0 = 0.0;
    for (const auto& e : find_extrema(u).attractors) {
        q0 = std::max(q0, std::abs(e.position));
    }
    p.dt = cfg.get_double(section + ".dt", default_dt(u, sp.noise, q0));
    p.steps = to_size(cfg, section + ".steps", 100000, 1);
    p.decimation = to_size(cfg, section + ".decimation", 100, 1);
    p.walkers = to_size(cfg, section + ".ensemble", 64, 1);
    p.events = to_size(cfg, section + ".events", 500, 1);
    p.max_steps = to_size(cfg, section + ".max_steps", 200'000'000, 1);
    p.channel = cfg.get_string(section + ".channel", "auto");
    const std::string passage = cfg.get_string(section + ".passage", "commitment");
    if (passage == "commitment") {
        p.passage = Passage::commitment;
    } else if (passage == "saddle") {
        p.passage = Passage::saddle_crossing;
    } else {
        throw ConfigError(section + ".passage must be commitment or saddle");
    }
    p.acf_chains = to_size(cfg, section + ".acf_chains", 16, 1);
    p.acf_span = cfg.get_double(section + ".acf_span", 200.0);
    p.acf_resolution = cfg.get_double(section + ".acf_resolution", 40.0);
    const std::string obs = cfg.get_string(section + ".observable", "q");
    if (obs == "q") {
        p.observable = Observable::position;
    } else if (obs == "q2") {
        p.observable = Observable::position_squared;
    } else {
        throw ConfigError(section + ".observable must be q or q2");
    }
    if (!(p.acf_span > 0.0) || !(p.acf_resolution > 0.0)) {
        throw ConfigError(section + ": acf_span and acf_resolution must be positive");
    }
    return p;
}

Channel default_channel(const ExtremumSet& ex, const std::string& name)
{
    if (name != "auto") {
        return parse_channel(name);
    }
    if (ex.regime == Regime::tristable) {
        return Channel::tristable_escape;
    }
    if (ex.regime == Regime::bistable) {
        return Channel::bistable;
    }
    throw MissingChannel("the monostable regime has no switching channel");
}

MfptConfig mfpt_config(const SimulationPlan& p, const RunOptions& opts)
{
    MfptConfig m;
    m.dt = p.dt;
    m.seed = opts.seed;
    m.walkers = p.walkers;
    m.target_events = p.events;
    m.max_steps = p.max_steps;
    m.passage = p.passage;
    m.threads = opts.threads;
    return m;
}

} // namespace

CommandResult cmd_simulate(Config& cfg, const RunOptions& opts)
{
    const ResolvedParams rp = resolve_params(cfg, reference_point());
    const SimulationPlan plan = read_plan(cfg, rp.scaled, "simulate");
    const bool do_mfpt = cfg.get_bool("simulate.mfpt", true);
    const bool do_acf = cfg.get_bool("simulate.acf", true);
    cfg.reject_unused();
    const Header header = header_for("simulate", cfg, opts);
    CommandResult res;

    const Potential u = Potential::from_scaled(plan.sp);
    const ExtremumSet ex = find_extrema(u);
    const double D = plan.sp.noise;

    TrajectoryConfig tc;
    tc.dt = plan.dt;
    tc.steps = plan.steps;
    tc.seed = opts.seed;
    tc.noise = D;
    tc.decimation = plan.decimation;
    tc.initial = ex.attractors.back().position;
    const Trajectory tr = integrate(u, tc);
    Table trace{{"t", "Q"}, {}};
    for (std::size_t i = 0; i < tr.q.size(); ++i) {
        trace.add({tr.time[i], tr.q[i]});
    }
    res.files.push_back(write_table(opts.out, "trace", trace, header, opts.format));

    json summary;
    summary["dt"] = plan.dt;
    summary["trace_mean"] = tr.moments.mean;
    summary["trace_variance"] = tr.moments.variance();
    const auto op = build_operator(u, D);
    const double nu1 = lowest_decrements(op, 1, false).nu1();
    summary["fpe_nu1"] = nu1;

    if (do_acf) {
        const AcfConfig ac = acf_plan(nu1, plan.dt, opts.seed, plan.acf_chains, plan.acf_span,
                                      plan.acf_resolution, opts.threads);
        AcfConfig acfg = ac;
        acfg.observable = plan.observable;
        const AcfEstimate acf = estimate_acf_decrement(u, D, acfg);
        Table t{{"lag", "autocovariance", "acf"}, {}};
        for (std::size_t i = 0; i < acf.lags.size(); ++i) {
            t.add({acf.lags[i], acf.autocovariance[i], acf.normalized[i]});
        }
        res.files.push_back(write_table(opts.out, "acf", t, header, opts.format));
        json a;
        a["decrement"] = acf.decrement;
        a["window"] = json::array({acf.window_start, acf.window_end});
        a["fit_points"] = acf.fit_points;
        a["residual"] = acf.residual;
        a["burn_in_steps"] = acf.burn_in_used;
        summary["acf"] = a;
    }
    if (do_mfpt) {
        const Channel channel = default_channel(ex, plan.channel);
        const RateResult kramers = switching_rate(u, plan.sp, channel);
        const MfptEstimate m = estimate_mfpt(u, plan.sp, channel, mfpt_config(plan, opts));
        res.files.push_back(write_json(opts.out, "mfpt", mfpt_json(m, channel, plan.passage, kramers), header));
        if (m.low_confidence) {
            res.report.push_back("mfpt: only " + std::to_string(m.events) + " events (low confidence)");
        }
    }
    res.files.push_back(write_json(opts.out, "simulate_summary", summary, header));
    return res;
}

CommandResult cmd_validate(Config& cfg, const RunOptions& opts)
{
    const double ratio = cfg.get_double("validate.barrier_ratio", 5.0);
    const double tolerance = cfg.get_double("validate.tolerance", 0.25);
    const std::size_t min_events = to_size(cfg, "validate.min_events", 500, 1);
    ScaledParams fallback = reference_point(1.0 / 30.0, ratio);
    if (!cfg.has_section("lab")) {
        const double noise = cfg.get_double("scaled.noise", fallback.noise);
        if (!(noise > 0.0)) {
            throw ConfigError("scaled.noise must be positive");
        }
        fallback = reference_point(noise, ratio);
    }
    const ResolvedParams rp = resolve_params(cfg, fallback);
    SimulationPlan plan = read_plan(cfg, rp.scaled, "validate");
    plan.events = std::max(plan.events, min_events);
    cfg.reject_unused();
    const Header header = header_for("validate", cfg, opts);

    const Potential u = Potential::from_scaled(plan.sp);
    const double D = plan.sp.noise;
    if (find_extrema(u).regime != Regime::bistable) {
        throw InputError("validate needs a bistable reference point");
    }
    const RateResult kramers = switching_rate(u, plan.sp, Channel::bistable);
    const auto op = build_operator(u, D);
    const double nu1 = lowest_decrements(op, 1, true).nu1();
    const AcfEstimate acf = estimate_acf_decrement(
        u, D, acf_plan(nu1, plan.dt, opts.seed, plan.acf_chains, plan.acf_span, plan.acf_resolution,
                       opts.threads));
    MfptConfig mc = mfpt_config(plan, opts);
    mc.min_events = min_events;
    const MfptEstimate mfpt = estimate_mfpt(u, plan.sp, Channel::bistable, mc);

    struct Check {
        std::string name;
        double estimate;
        double reference;
    };
    const double two_w = 2.0 * kramers.rate;
    const std::vector<Check> checks{
        {"kramers_2W_vs_fpe_nu1", two_w, nu1},
        {"acf_decrement_vs_fpe_nu1", acf.decrement, nu1},
        {"acf_decrement_vs_kramers_2W", acf.decrement, two_w},
        {"mfpt_rate_vs_kramers_W", mfpt.rate, kramers.rate},
    };

    CommandResult res;
    Table t{{"check", "estimate", "reference", "relative_difference", "tolerance", "result"}, {}};
    for (const auto& c : checks) {
        const double rel = relative_difference(c.estimate, c.reference);
        const bool ok = rel <= tolerance;
        res.passed = res.passed && ok;
        t.add({c.name, c.estimate, c.reference, rel, tolerance, std::string(ok ? "pass" : "fail")});
        res.report.push_back(c.name + ": " + (ok ? "pass" : "fail") + " (rel " + format_number(rel) + ")");
    }
    const bool enough = mfpt.events >= min_events && !mfpt.budget_exhausted;
    res.passed = res.passed && enough;
    t.add({std::string("mfpt_event_count"), static_cast<double>(mfpt.events),
           static_cast<double>(min_events), Cell{}, Cell{}, std::string(enough ? "pass" : "fail")});
    res.report.push_back(std::string("mfpt_event_count: ") + (enough ? "pass" : "fail") + " (" +
                         std::to_string(mfpt.events) + " events)");
    res.files.push_back(write_table(opts.out, "validate", t, header, opts.format));

    json report;
    report["barrier_ratio"] = kramers.barrier / D;
    report["kramers_rate"] = kramers.rate;
    report["fpe_nu1"] = nu1;
    report["acf_decrement"] = acf.decrement;
    report["acf_window"] = json::array({acf.window_start, acf.window_end});
    report["mfpt"] = mfpt_json(mfpt, Channel::bistable, plan.passage, kramers);
    report["passed"] = res.passed;
    res.files.push_back(write_json(opts.out, "validate_report", report, header));
    return res;
}

const std::vector<std::string>& command_names()
{
    static const std::vector<std::string> names{"bifurcation", "distribution", "rates",
                                                "fpe",         "simulate",     "validate"};
    return names;
}

CommandResult run_command(const std::string& name, Config& cfg, const RunOptions& opts)
{
    using Fn = CommandResult (*)(Config&, const RunOptions&);
    static const std::map<std::string, Fn> table{
        {"bifurcation", cmd_bifurcation}, {"distribution", cmd_distribution},
        {"rates", cmd_rates},             {"fpe", cmd_fpe},
        {"simulate", cmd_simulate},       {"validate", cmd_validate},
    };
    auto it = table.find(name);
    if (it == table.end()) {
        throw ConfigError("unknown command '" + name + "'");
    }
    return it->second(cfg, opts);
}

int exit_code(const CommandResult& result) { return result.passed ? 0 : 3; }

int exit_code(const std::exception& error)
{
    if (dynamic_cast<const InputError*>(&error) != nullptr) {
        return 2;
    }
    return 3;
}

} // namespace paramosc
