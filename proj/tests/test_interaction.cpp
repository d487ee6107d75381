#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "rydxpm/config.hpp"
#include "rydxpm/errors.hpp"
#include "rydxpm/interaction.hpp"

using namespace rydxpm;

namespace {

struct Setup {
    SystemParams p;
    MixingAngles angles;
    InteractionParams ip;
    double sigma;
};

Setup make_setup() {
    ScenarioConfig cfg = default_config();
    Setup s;
    s.p = cfg.system_params();
    s.p.chi_amp = s.p.gamma;
    s.angles = mixing_angles(s.p);
    s.ip = cfg.interaction_params();
    s.sigma = cfg.sigma;
    return s;
}

}  // namespace

TEST_CASE("effective_potential closed forms") {
    const Setup s = make_setup();
    CHECK(effective_potential(1e-6, InteractionParams{0.0, s.ip.a}) == 0.0);
    CHECK(effective_potential(0.0, s.ip) ==
          doctest::Approx(-s.ip.c6 / std::pow(s.ip.a, 6)));
    CHECK_THROWS_AS(effective_potential(0.0, InteractionParams{1.0, 0.0}),
                    SingularityError);
}

TEST_CASE("effective_potential against the 3-D distance formula") {
    // Coefficient as quoted with the ordinary-frequency reading, to pin the
    // unit conversion: 2 pi * 8500e9 rad/s um^6 at a = 16.65 um, dz = 0.
    const double c6 = units::two_pi * 8500e9 * units::um6;
    const double a = 16.65 * units::micrometer;
    const double dz = 0.0;
    const double r = std::sqrt(dz * dz + a * a);
    const double brute = -c6 / std::pow(r, 6);
    CHECK(effective_potential(dz, InteractionParams{c6, a}) ==
          doctest::Approx(brute).epsilon(1e-12));
    // Same check off axis.
    const double dz2 = 7.3 * units::micrometer;
    const double r2 = std::sqrt(dz2 * dz2 + a * a);
    CHECK(effective_potential(dz2, InteractionParams{c6, a}) ==
          doctest::Approx(-c6 / std::pow(r2, 6)).epsilon(1e-12));
}

TEST_CASE("delta_r vanishes without interaction") {
    const Setup s = make_setup();
    const PulseProfile prof{s.sigma, 0.0, 1.0};
    CHECK(delta_r(0.0, 0.0, prof, InteractionParams{0.0, s.ip.a}, s.angles, 1.0) ==
          0.0);
    const double far = std::abs(
        delta_r(0.0, 0.0, prof, InteractionParams{s.ip.c6, 1e3 * s.sigma}, s.angles,
                1.0));
    CHECK(far < 1e-12 * s.p.gamma);
}

TEST_CASE("delta_r point-source limit") {
    const Setup s = make_setup();
    const double sep = 0.7 * s.ip.a;
    const PulseProfile narrow{1e-4 * s.ip.a, 0.0, 1.0};
    const double got = delta_r(sep, 0.0, narrow, s.ip, s.angles, 1.0);
    const double expected =
        s.angles.sin2_theta() * effective_potential(sep, s.ip);
    CHECK(std::abs(got - expected) / std::abs(expected) < 1e-3);
}

TEST_CASE("delta_r against a fine-grid trapezoid oracle") {
    const Setup s = make_setup();
    const PulseProfile prof{s.sigma, 0.0, 1.0};
    const double got = delta_r(0.0, 0.0, prof, s.ip, s.angles, 1.0);

    auto integrand = [&](double z) {
        return effective_potential(-z, s.ip) * prof.density(z);
    };
    const double oracle = s.angles.sin2_theta() *
                          oracles::trapezoid(integrand, -8.0 * s.sigma,
                                             8.0 * s.sigma, 1'000'000);
    CHECK(std::abs(got - oracle) / std::abs(oracle) < 1e-8);
    // Magnitude at the widest separation of the baseline set: order 1e-2 gamma.
    CHECK(std::abs(got) > 1e-3 * s.p.gamma);
    CHECK(std::abs(got) < 0.2 * s.p.gamma);
}

TEST_CASE("delta_r is even in the separation") {
    const Setup s = make_setup();
    const PulseProfile prof{s.sigma, 0.0, 1.0};
    for (double sep_sigmas : {0.3, 1.0, 2.7}) {
        const double plus =
            delta_r(sep_sigmas * s.sigma, 0.0, prof, s.ip, s.angles, 1.0);
        const double minus =
            delta_r(-sep_sigmas * s.sigma, 0.0, prof, s.ip, s.angles, 1.0);
        CHECK(plus == doctest::Approx(minus).epsilon(1e-9));
    }
}

TEST_CASE("delta_r magnitude decreases with transverse separation") {
    const Setup s = make_setup();
    const PulseProfile prof{s.sigma, 0.0, 1.0};
    double prev = -1.0;
    for (double a_sigmas : {0.58, 1.0, 1.5, 2.5}) {
        const double mag = std::abs(delta_r(
            0.0, 0.0, prof, InteractionParams{s.ip.c6, a_sigmas * s.sigma},
            s.angles, 1.0));
        if (prev >= 0.0) CHECK(mag < prev);
        prev = mag;
    }
}

TEST_CASE("delta_r scales linearly in transmission and coefficient") {
    const Setup s = make_setup();
    const PulseProfile prof{s.sigma, 0.0, 1.0};
    const double base = delta_r(s.sigma, 0.0, prof, s.ip, s.angles, 1.0);
    const double half_t = delta_r(s.sigma, 0.0, prof, s.ip, s.angles, 0.5);
    CHECK(half_t == doctest::Approx(0.5 * base).epsilon(1e-12));
    const double tripled = delta_r(
        s.sigma, 0.0, prof, InteractionParams{3.0 * s.ip.c6, s.ip.a}, s.angles, 1.0);
    CHECK(tripled == doctest::Approx(3.0 * base).epsilon(1e-9));
}

TEST_CASE("delta_r validates the transmission range") {
    const Setup s = make_setup();
    const PulseProfile prof{s.sigma, 0.0, 1.0};
    CHECK_THROWS_AS(delta_r(0.0, 0.0, prof, s.ip, s.angles, 1.2),
                    std::invalid_argument);
    CHECK_THROWS_AS(delta_r(0.0, 0.0, prof, s.ip, s.angles, -0.1),
                    std::invalid_argument);
}

TEST_CASE("pulse profile density integrates to its norm") {
    const PulseProfile prof{3.1, -0.4, 0.87};
    const double integral = oracles::trapezoid(
        [&](double z) { return prof.density(z); }, -0.4 - 8 * 3.1, -0.4 + 8 * 3.1,
        200'000);
    CHECK(integral == doctest::Approx(0.87).epsilon(1e-9));
}

TEST_CASE("uniform_pass_phase closed form and direct integration oracle") {
    const Setup s = make_setup();
    CHECK(uniform_pass_phase(InteractionParams{0.0, s.ip.a}, s.angles, 10.0) == 0.0);
    CHECK_THROWS_AS(uniform_pass_phase(InteractionParams{1.0, 0.0}, s.angles, 10.0),
                    SingularityError);
    CHECK_THROWS_AS(uniform_pass_phase(s.ip, s.angles, 0.0), std::invalid_argument);

    const double v_rel = 20.0;
    const double got = uniform_pass_phase(s.ip, s.angles, v_rel);
    // Time integral of the potential along a constant-velocity pass.
    auto integrand = [&](double t) {
        return -effective_potential(v_rel * t, s.ip);
    };
    const double t_max = 1e3 * s.ip.a / v_rel;
    const double c3sq = s.angles.sin2_theta();
    const double oracle =
        c3sq * c3sq * oracles::trapezoid(integrand, -t_max, t_max, 2'000'000);
    CHECK(std::abs(got - oracle) / oracle < 1e-6);
}

TEST_CASE("uniform_pass_phase at the baseline parameters") {
    const Setup s = make_setup();
    const double phi = uniform_pass_phase(s.ip, s.angles, 20.0);
    CHECK(phi > 0.3);
    CHECK(phi < 0.4);
    // Lifting the coefficient ninefold reaches a phase of about pi.
    const double phi9 =
        uniform_pass_phase(InteractionParams{9.0 * s.ip.c6, s.ip.a}, s.angles, 20.0);
    CHECK(std::abs(phi9 - std::numbers::pi) / std::numbers::pi < 0.25);
}

TEST_CASE("uniform_pass_phase exact scaling laws") {
    const Setup s = make_setup();
    const double base = uniform_pass_phase(s.ip, s.angles, 20.0);
    CHECK(uniform_pass_phase(s.ip, s.angles, 40.0) ==
          doctest::Approx(0.5 * base).epsilon(1e-14));
    const double twice_a =
        uniform_pass_phase(InteractionParams{s.ip.c6, 2.0 * s.ip.a}, s.angles, 20.0);
    CHECK(twice_a == doctest::Approx(base / 32.0).epsilon(1e-14));
}
