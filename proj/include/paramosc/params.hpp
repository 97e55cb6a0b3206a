#pragma once

#include <string>
#include <vector>

namespace paramosc {

/// Physical parameters of the parametrically driven Duffing oscillator
/// (mass = 1, any consistent unit system).
struct LabFrameParams {
    double omega0 = 1.0;          ///< eigenfrequency
    double gamma = 1.0;           ///< Kerr anharmonicity, nonzero
    double drive_amplitude = 0.0; ///< F, modulation depth of the stiffness
    double omega_F = 2.0;         ///< drive frequency, close to 2*omega0
    double decay_rate = 1e-3;     ///< Gamma (friction force is -2*Gamma*qdot)
    double temperature = 0.0;
    double hbar = 1.0;
    double boltzmann_k = 1.0;
};

/// Scales that follow from LabFrameParams alone.
struct DerivedScales {
    double critical_amplitude = 0.0; ///< F_c = 2*Gamma*omega_F
    double amplitude_scale = 0.0;    ///< C_p = |2 F_c / 3 gamma|^(1/2)
    double planck = 0.0;             ///< lambda_p = 3|gamma| hbar / (omega_F F_c)
    double occupation = 0.0;         ///< Planck number nbar
    double noise = 0.0;              ///< D = lambda_p (nbar + 1/2)
};

/// Dimensionless rotating-frame control parameters. Every downstream module
/// works in these units, with time measured in 1/Gamma.
struct ScaledParams {
    double detuning = 0.0; ///< mu_p
    double drive = 1.0;    ///< f_p = F / F_c
    double noise = 1e-3;   ///< D
    double planck = 2e-3;  ///< lambda_p
    int sign_gamma = 1;

    /// nbar + 1/2 = D / lambda_p.
    double occupation_factor() const { return noise / planck; }
};

void validate(const LabFrameParams& lab);
void validate(const ScaledParams& sp);

DerivedScales derive_scales(const LabFrameParams& lab);
ScaledParams scale_params(const LabFrameParams& lab, const DerivedScales& scales);

/// F recovered from the scaled drive, for round-trip checks.
double lab_drive_amplitude(const ScaledParams& sp, const DerivedScales& scales);

struct ValidityCheck {
    std::string name;
    double ratio = 0.0;
    double threshold = 0.1;
    bool ok = true;
};

/// Ratios that must be small for the rotating-wave description to hold.
/// Violations are reported, never thrown.
struct ValidityReport {
    std::vector<ValidityCheck> checks;
    bool all_ok() const;
};

ValidityReport check_validity(const LabFrameParams& lab, const DerivedScales& scales,
                              double threshold = 0.1);

} // namespace paramosc
