#include "paramosc/error.hpp"
#include "paramosc/params.hpp"

#include <doctest.h>

#include <cmath>

using namespace paramosc;

namespace {

LabFrameParams lab(double omega_F, double decay)
{
    LabFrameParams p;
    p.omega0 = 1.0;
    p.gamma = 1.0;
    p.omega_F = omega_F;
    p.decay_rate = decay;
    p.drive_amplitude = 0.0;
    return p;
}

} // namespace

TEST_CASE("critical amplitude at exact resonance")
{
    const DerivedScales s = derive_scales(lab(2.0, 0.001));
    CHECK(s.critical_amplitude == doctest::Approx(0.004).epsilon(1e-15));
}

TEST_CASE("occupation limits")
{
    LabFrameParams p = lab(2.0, 0.001);
    p.temperature = 0.0;
    DerivedScales s = derive_scales(p);
    CHECK(s.occupation == 0.0);
    CHECK(s.noise == doctest::Approx(s.planck / 2.0).epsilon(1e-15));

    p.temperature = p.hbar * p.omega0 / (p.boltzmann_k * std::log(2.0));
    s = derive_scales(p);
    CHECK(s.occupation == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(s.noise == doctest::Approx(1.5 * s.planck).epsilon(1e-14));
}

TEST_CASE("scaled detuning and drive")
{
    LabFrameParams p = lab(2.0, 0.001);
    p.drive_amplitude = 0.004;
    ScaledParams sp = scale_params(p, derive_scales(p));
    CHECK(sp.detuning == 0.0);
    CHECK(sp.drive == doctest::Approx(1.0).epsilon(1e-15));

    // F_c = 2 Gamma omega_F = 0.004008, mu_p = 2.004 * 0.004 / 0.004008 = 2.
    p = lab(2.004, 0.001);
    const DerivedScales s = derive_scales(p);
    CHECK(s.critical_amplitude == doctest::Approx(0.004008).epsilon(1e-14));
    sp = scale_params(p, s);
    CHECK(sp.detuning == doctest::Approx(2.004 * (2.004 - 2.0) / 0.004008).epsilon(1e-12));
    CHECK(sp.detuning == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("negative nonlinearity flips the detuning sign")
{
    LabFrameParams p = lab(2.01, 0.001);
    const double mu_pos = scale_params(p, derive_scales(p)).detuning;
    p.gamma = -1.0;
    const ScaledParams sp = scale_params(p, derive_scales(p));
    CHECK(sp.sign_gamma == -1);
    CHECK(sp.detuning == doctest::Approx(-mu_pos));
}

TEST_CASE("drive amplitude round trip")
{
    LabFrameParams p = lab(2.0, 0.002);
    p.drive_amplitude = 0.0123;
    const DerivedScales s = derive_scales(p);
    CHECK(lab_drive_amplitude(scale_params(p, s), s) == doctest::Approx(0.0123).epsilon(1e-15));
}

TEST_CASE("planck constant and amplitude scale")
{
    LabFrameParams p = lab(2.0, 0.001);
    p.gamma = 0.3;
    p.hbar = 0.01;
    const DerivedScales s = derive_scales(p);
    const double fc = 2.0 * 0.001 * 2.0;
    CHECK(s.planck == doctest::Approx(3.0 * 0.3 * 0.01 / (2.0 * fc)).epsilon(1e-14));
    CHECK(s.amplitude_scale == doctest::Approx(std::sqrt(2.0 * fc / (3.0 * 0.3))).epsilon(1e-14));
}

TEST_CASE("validity flags")
{
    LabFrameParams p = lab(2.0, 0.001);
    p.drive_amplitude = 0.004;
    CHECK(check_validity(p, derive_scales(p)).all_ok());

    p.decay_rate = 1.0;
    ValidityReport r = check_validity(p, derive_scales(p));
    CHECK_FALSE(r.all_ok());
    for (const auto& c : r.checks) {
        if (c.name == "weak_damping") {
            CHECK_FALSE(c.ok);
        }
    }

    p = lab(2.0, 0.001);
    p.drive_amplitude = 1.0;
    r = check_validity(p, derive_scales(p));
    for (const auto& c : r.checks) {
        CHECK(c.ok == (c.name != "weak_drive"));
    }
}

TEST_CASE("invalid input is rejected")
{
    LabFrameParams p = lab(2.0, 0.001);
    p.gamma = 0.0;
    CHECK_THROWS_AS(derive_scales(p), InputError);
    p = lab(2.0, -1.0);
    CHECK_THROWS_AS(derive_scales(p), InputError);
    ScaledParams sp;
    sp.noise = 0.0;
    CHECK_THROWS_AS(validate(sp), InputError);
    sp = ScaledParams{};
    sp.sign_gamma = 0;
    CHECK_THROWS_AS(validate(sp), InputError);
}
