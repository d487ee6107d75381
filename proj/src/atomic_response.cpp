#include "rydxpm/atomic_response.hpp"

#include <cmath>
#include <stdexcept>

#include "rydxpm/errors.hpp"

namespace rydxpm {

namespace {
const Complex kI(0.0, 1.0);
}

bool SystemParams::eit_configured() const {
    return std::abs(delta1 + delta2) <= 1e-9 * gamma;
}

void SystemParams::validate() const {
    auto fin = [](double v) { return std::isfinite(v); };
    if (!fin(gamma) || gamma <= 0.0) {
        throw std::invalid_argument("SystemParams: gamma must be positive");
    }
    if (!fin(gamma_rg) || gamma_rg < 0.0) {
        throw std::invalid_argument("SystemParams: gamma_rg must be >= 0");
    }
    if (!fin(omega_c) || omega_c < 0.0) {
        throw std::invalid_argument("SystemParams: omega_c must be >= 0");
    }
    if (!fin(delta1) || !fin(delta2)) {
        throw std::invalid_argument("SystemParams: detunings must be finite");
    }
    if (!fin(g2n) || g2n < 0.0) {
        throw std::invalid_argument("SystemParams: g2n must be >= 0");
    }
    if (!fin(chi_amp) || chi_amp < 0.0) {
        throw std::invalid_argument("SystemParams: chi_amp must be >= 0");
    }
    if (!fin(lambda_p) || lambda_p <= 0.0) {
        throw std::invalid_argument("SystemParams: lambda_p must be positive");
    }
}

MixingAngles mixing_angles(const SystemParams& p) {
    p.validate();
    MixingAngles a{};
    const double g_sqrt_n = std::sqrt(p.g2n);
    a.theta = std::atan2(g_sqrt_n, p.omega_c);

    // Branch with 0 < phi < pi/2; atan2's first argument is positive.
    const double root = std::sqrt(p.delta1 * p.delta1 + p.g2n + p.omega_c * p.omega_c);
    a.phi_mix = 0.5 * std::atan2(std::sqrt(p.g2n + p.omega_c * p.omega_c), p.delta1);
    a.omega_plus = 0.5 * (p.delta1 + root);
    a.omega_minus = 0.5 * (p.delta1 - root);

    a.c1 = std::cos(a.theta) * std::sin(a.phi_mix);
    a.c2 = std::cos(a.theta) * std::cos(a.phi_mix);
    a.c3 = std::sin(a.theta);
    return a;
}

Complex2x2 coherence_matrix(const SystemParams& p, double delta_r) {
    const double two_photon = p.delta1 + p.delta2 + delta_r;
    Complex2x2 m;
    m.m00 = Complex(-0.5 * p.gamma, -p.delta1);
    m.m01 = Complex(0.0, -0.5 * p.omega_c);
    m.m10 = m.m01;
    m.m11 = Complex(-0.5 * p.gamma_rg, -two_photon);
    return m;
}

Complex chi_steady(const SystemParams& p, double delta_r) {
    p.validate();
    if (!std::isfinite(delta_r)) {
        throw std::invalid_argument("chi_steady: delta_r must be finite");
    }
    const double two_photon = p.delta1 + p.delta2 + delta_r;
    const Complex inner_den(0.5 * p.gamma_rg, two_photon);

    Complex pump_term;
    if (std::abs(inner_den) == 0.0) {
        if (p.omega_c > 0.0) return Complex(0.0, 0.0);  // exact transparency
        pump_term = Complex(0.0, 0.0);
    } else {
        pump_term = Complex(0.25 * p.omega_c * p.omega_c, 0.0) / inner_den;
    }

    const Complex den = Complex(0.5 * p.gamma, p.delta1) + pump_term;
    if (std::abs(den) == 0.0) {
        throw SingularityError("chi_steady: undamped resonant pole");
    }
    return kI * p.chi_amp / den;
}

Complex chi_two_level(const SystemParams& p) {
    SystemParams q = p;
    q.omega_c = 0.0;
    return chi_steady(q, 0.0);
}

CVec2 steady_coherence(const SystemParams& p, double delta_r) {
    const Complex2x2 m = coherence_matrix(p, delta_r);
    const Complex det = m.det();
    if (std::abs(det) == 0.0) {
        throw SingularityError("steady_coherence: singular drift matrix");
    }
    // Solve M x = -s by Cramer's rule.
    const CVec2 s = coherence_source();
    return {(-s.x0 * m.m11 + s.x1 * m.m01) / det,
            (-s.x1 * m.m00 + s.x0 * m.m10) / det};
}

ChiSeries chi_time_dependent(const SystemParams& p,
                             const std::function<double(double)>& delta_r_history,
                             const TimeGrid& grid) {
    p.validate();
    auto m_of_t = [&](double t) {
        return coherence_matrix(p, delta_r_history(t));
    };
    const std::vector<CVec2> x = solve_driven_ode(m_of_t, coherence_source(), grid);

    ChiSeries series;
    series.coarse_grid_warning = grid.dt() > 0.02 / p.gamma;
    series.chi.reserve(x.size());
    for (const CVec2& v : x) series.chi.push_back(chi_from_coherence(p, v));
    return series;
}

OpticalResponse response_from_chi(const SystemParams& p,
                                  const std::function<Complex(double)>& chi_at,
                                  double fd_step_fraction) {
    const double h = fd_step_fraction * p.gamma;
    return response_from_chi_triple(p, chi_at(p.delta1 - h), chi_at(p.delta1),
                                    chi_at(p.delta1 + h), h);
}

OpticalResponse response_from_chi_triple(const SystemParams& p, Complex chi_minus,
                                         Complex chi_center, Complex chi_plus,
                                         double h) {
    OpticalResponse r{};
    r.chi = chi_center;
    r.n_minus_1 = 0.5 * chi_center.real();
    r.im_chi = chi_center.imag();

    // d n / d omega_p = -d n / d Delta1 since Delta1 = omega_eg - omega_p.
    const double dn_ddelta1 = (chi_plus.real() - chi_minus.real()) / (4.0 * h);
    r.n_g = (1.0 + r.n_minus_1) - p.omega_p() * dn_ddelta1;
    r.v_g = units::c_light / r.n_g;
    r.alpha = p.k_p() * r.im_chi;
    r.anomalous = r.n_g < 1.0;
    return r;
}

SystemParams calibrate(SystemParams p, double target_vg) {
    p.validate();
    if (!(target_vg > 0.0) || target_vg > units::c_light) {
        throw CalibrationError("calibrate: target_vg must be in (0, c]");
    }
    if (!p.eit_configured()) {
        throw CalibrationError("calibrate: params are not EIT-configured");
    }

    const double ng_target = units::c_light / target_vg;
    auto ng_at = [&](double amp) {
        SystemParams q = p;
        q.chi_amp = amp;
        const OpticalResponse r = response_from_chi(
            q, [&](double d1) {
                SystemParams w = q;
                w.delta1 = d1;
                return chi_steady(w, 0.0);
            });
        return r.n_g;
    };

    // n_g - 1 is exactly linear in chi_amp; one scaled step suffices, the
    // loop just guards against a degenerate probe amplitude.
    double amp = (p.chi_amp > 0.0) ? p.chi_amp : p.gamma;
    for (int iter = 0; iter < 8; ++iter) {
        const double excess = ng_at(amp) - 1.0;
        if (excess <= 0.0) {
            throw CalibrationError("calibrate: non-dispersive response");
        }
        amp *= (ng_target - 1.0) / excess;
        if (amp < 0.0) amp = 0.0;

        const double vg = units::c_light / ng_at(amp);
        if (std::abs(vg - target_vg) <= 1e-3 * target_vg) {
            p.chi_amp = amp;
            return p;
        }
    }
    throw CalibrationError("calibrate: root-find failed to converge");
}

}  // namespace rydxpm
