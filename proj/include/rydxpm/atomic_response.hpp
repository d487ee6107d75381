// EIT medium response: steady and time-dependent complex susceptibility,
// refractive index / group velocity / absorption, polariton mixing angles
// and the slow-light calibration of the susceptibility amplitude.
#pragma once

#include <functional>
#include <vector>

#include "rydxpm/numerics.hpp"
#include "rydxpm/units.hpp"

namespace rydxpm {

/// Atomic and optical constants, all in SI (rates and detunings in rad/s).
///
/// chi_amp is the single calibrated susceptibility amplitude
/// N mu_eg^2 / (eps0 hbar), expressed as a rate; the drive field and dipole
/// moment are scaled out of the coherences, which makes the weak-probe
/// susceptibility drive-independent.
struct SystemParams {
    double gamma;      // excited-state decay rate (rad/s)
    double gamma_rg;   // Rydberg ground coherence decay rate (rad/s)
    double omega_c;    // pump Rabi frequency (rad/s)
    double delta1;     // probe detuning, omega_eg - omega_p (rad/s)
    double delta2;     // pump detuning, omega_re - omega_c (rad/s)
    double g2n;        // collective coupling squared g^2 N (rad^2/s^2)
    double chi_amp;    // susceptibility amplitude (rad/s); 0 = not calibrated
    double lambda_p;   // probe wavelength (m)

    double omega_p() const { return units::two_pi * units::c_light / lambda_p; }
    double k_p() const { return units::two_pi / lambda_p; }

    /// Two-photon resonance at zero interaction shift.
    bool eit_configured() const;

    /// Throws std::invalid_argument when a field is out of range.
    void validate() const;
};

/// Polariton mixing angles and bright-state spectrum.
struct MixingAngles {
    double theta;        // tan(theta) = g sqrt(N) / Omega_c
    double phi_mix;      // tan(2 phi) = sqrt(g^2 N + Omega_c^2) / Delta1
    double omega_plus;   // bright-state branch energies (rad/s)
    double omega_minus;
    double c1;           // cos(theta) sin(phi)
    double c2;           // cos(theta) cos(phi)
    double c3;           // sin(theta)

    double sin2_theta() const { return c3 * c3; }
};

/// Susceptibility with its locally derived optical quantities.
struct OpticalResponse {
    Complex chi;
    double n_minus_1;  // 0.5 Re chi
    double im_chi;
    double n_g;        // group index n + omega_p dn/domega_p
    double v_g;        // c / n_g (may exceed c or be negative when anomalous)
    double alpha;      // intensity absorption per length, k_p Im chi (1/m)
    bool anomalous;    // n_g < 1: anomalous-dispersion (superluminal) regime
};

MixingAngles mixing_angles(const SystemParams& p);

/// Coherence drift matrix M for the scaled pair (rho_eg, rho_rg) at a given
/// interaction shift of the Rydberg level.
Complex2x2 coherence_matrix(const SystemParams& p, double delta_r);

/// Constant source term of the scaled weak-drive coherence equations.
inline CVec2 coherence_source() { return {Complex(0.0, -0.5), Complex(0.0, 0.0)}; }

/// Weak-drive steady-state susceptibility
///   chi = i chi_amp / [gamma/2 + i Delta1
///                      + (Omega_c^2/4) / (gamma_rg/2 + i(Delta1+Delta2+Delta_R))].
/// Exact transparency point returns 0; an exact undamped pole throws
/// SingularityError.
Complex chi_steady(const SystemParams& p, double delta_r);

/// Same with the pump switched off (two-level medium).
Complex chi_two_level(const SystemParams& p);

/// Time-dependent susceptibility from zero initial coherences.
struct ChiSeries {
    std::vector<Complex> chi;      // one value per grid sample
    bool coarse_grid_warning;      // grid step exceeded 0.02 / gamma
};

ChiSeries chi_time_dependent(const SystemParams& p,
                             const std::function<double(double)>& delta_r_history,
                             const TimeGrid& grid);

/// Susceptibility mapped from the scaled coherence solution.
inline Complex chi_from_coherence(const SystemParams& p, const CVec2& x) {
    return -2.0 * p.chi_amp * x.x0;
}

/// Steady coherence pair (the t -> infinity limit of the driven solution).
CVec2 steady_coherence(const SystemParams& p, double delta_r);

/// Fractional finite-difference step (in units of gamma) for the dispersion
/// derivative d n / d omega_p.
inline constexpr double kDispersionStepFraction = 1e-4;

/// Derives n, n_g, v_g and alpha from a susceptibility evaluable at the
/// probe detuning and at Delta1 +/- h (h = kDispersionStepFraction * gamma;
/// the omega_p derivative is -d/dDelta1). Sets the anomalous flag instead of
/// throwing when n_g < 1.
OpticalResponse response_from_chi(const SystemParams& p,
                                  const std::function<Complex(double)>& chi_at,
                                  double fd_step_fraction = kDispersionStepFraction);

/// Response assembled from three already-computed susceptibility values.
OpticalResponse response_from_chi_triple(const SystemParams& p, Complex chi_minus,
                                         Complex chi_center, Complex chi_plus,
                                         double h);

/// Adjusts chi_amp so the EIT-point group velocity at zero interaction shift
/// equals target_vg (within 0.1%). The group index excess is exactly linear
/// in chi_amp, so this is a guarded one-step solve.
SystemParams calibrate(SystemParams p, double target_vg);

}  // namespace rydxpm
