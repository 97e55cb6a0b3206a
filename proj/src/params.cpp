#include "paramosc/params.hpp"

#include "paramosc/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace paramosc {

namespace {

void require(bool cond, const std::string& what)
{
    if (!cond) {
        throw InputError(what);
    }
}

bool finite(double x) { return std::isfinite(x); }

} // namespace

void validate(const LabFrameParams& lab)
{
    require(finite(lab.omega0) && finite(lab.gamma) && finite(lab.drive_amplitude) &&
                finite(lab.omega_F) && finite(lab.decay_rate) && finite(lab.temperature) &&
                finite(lab.hbar) && finite(lab.boltzmann_k),
            "lab-frame parameters must be finite");
    require(lab.omega0 > 0.0, "omega0 must be positive");
    require(lab.omega_F > 0.0, "omega_F must be positive");
    require(lab.decay_rate > 0.0, "Gamma must be positive");
    require(lab.drive_amplitude >= 0.0, "F must be non-negative");
    require(lab.temperature >= 0.0, "T must be non-negative");
    require(lab.hbar > 0.0, "hbar must be positive");
    require(lab.boltzmann_k > 0.0, "kB must be positive");
    require(lab.gamma != 0.0, "gamma must be nonzero");
}

void validate(const ScaledParams& sp)
{
    require(finite(sp.detuning) && finite(sp.drive) && finite(sp.noise) && finite(sp.planck),
            "scaled parameters must be finite");
    require(sp.drive >= 0.0, "f_p must be non-negative");
    require(sp.noise > 0.0, "D must be positive");
    require(sp.planck > 0.0, "lambda_p must be positive");
    require(sp.sign_gamma == 1 || sp.sign_gamma == -1, "sign_gamma must be +1 or -1");
}

DerivedScales derive_scales(const LabFrameParams& lab)
{
    validate(lab);
    DerivedScales s;
    s.critical_amplitude = 2.0 * lab.decay_rate * lab.omega_F;
    s.amplitude_scale = std::sqrt(std::abs(2.0 * s.critical_amplitude / (3.0 * lab.gamma)));
    s.planck = 3.0 * std::abs(lab.gamma) * lab.hbar / (lab.omega_F * s.critical_amplitude);
    if (lab.temperature == 0.0) {
        s.occupation = 0.0;
    } else {
        // expm1 overflows to +inf for very cold baths, giving exactly 0.
        s.occupation = 1.0 / std::expm1(lab.hbar * lab.omega0 / (lab.boltzmann_k * lab.temperature));
    }
    s.noise = s.planck * (s.occupation + 0.5);
    return s;
}

ScaledParams scale_params(const LabFrameParams& lab, const DerivedScales& scales)
{
    validate(lab);
    ScaledParams sp;
    sp.sign_gamma = lab.gamma > 0.0 ? 1 : -1;
    sp.detuning = lab.omega_F * (lab.omega_F - 2.0 * lab.omega0) / scales.critical_amplitude *
                  sp.sign_gamma;
    sp.drive = lab.drive_amplitude / scales.critical_amplitude;
    sp.noise = scales.noise;
    sp.planck = scales.planck;
    return sp;
}

double lab_drive_amplitude(const ScaledParams& sp, const DerivedScales& scales)
{
    return sp.drive * scales.critical_amplitude;
}

bool ValidityReport::all_ok() const
{
    return std::all_of(checks.begin(), checks.end(), [](const ValidityCheck& c) { return c.ok; });
}

ValidityReport check_validity(const LabFrameParams& lab, const DerivedScales& scales,
                              double threshold)
{
    const double w0 = lab.omega0;
    auto make = [threshold](std::string name, double ratio) {
        return ValidityCheck{std::move(name), ratio, threshold, ratio < threshold};
    };
    ValidityReport r;
    r.checks.push_back(make("near_resonance", std::abs(0.5 * lab.omega_F - w0) / w0));
    r.checks.push_back(make("weak_damping", lab.decay_rate / w0));
    r.checks.push_back(make("weak_nonlinearity", std::abs(lab.gamma) * scales.amplitude_scale *
                                                     scales.amplitude_scale / (w0 * w0)));
    r.checks.push_back(make("weak_drive", lab.drive_amplitude / (w0 * w0)));
    return r;
}

} // namespace paramosc
