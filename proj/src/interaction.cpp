#include "rydxpm/interaction.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "rydxpm/errors.hpp"
#include "rydxpm/numerics.hpp"

namespace rydxpm {

void InteractionParams::validate() const {
    if (!std::isfinite(c6) || c6 < 0.0) {
        throw std::invalid_argument("InteractionParams: c6 must be >= 0");
    }
    if (!std::isfinite(a) || a < 0.0) {
        throw std::invalid_argument("InteractionParams: a must be >= 0");
    }
}

double PulseProfile::density(double z) const {
    const double u = (z - center) / sigma;
    return norm * std::exp(-u * u) / (std::sqrt(std::numbers::pi) * sigma);
}

void PulseProfile::validate() const {
    if (!std::isfinite(sigma) || sigma <= 0.0) {
        throw std::invalid_argument("PulseProfile: sigma must be positive");
    }
    if (!std::isfinite(center)) {
        throw std::invalid_argument("PulseProfile: center must be finite");
    }
    if (!std::isfinite(norm) || norm < 0.0) {
        throw std::invalid_argument("PulseProfile: norm must be >= 0");
    }
}

double effective_potential(double dz, const InteractionParams& ip) {
    ip.validate();
    if (!std::isfinite(dz)) {
        throw std::invalid_argument("effective_potential: dz must be finite");
    }
    const double r2 = dz * dz + ip.a * ip.a;
    if (r2 == 0.0) {
        throw SingularityError("effective_potential: zero interatomic distance");
    }
    return -ip.c6 / (r2 * r2 * r2);
}

double delta_r(double sep, double probe_offset, const PulseProfile& other,
               const InteractionParams& ip, const MixingAngles& angles,
               double transmission) {
    ip.validate();
    other.validate();
    if (!(transmission >= 0.0 && transmission <= 1.0)) {
        throw std::invalid_argument("delta_r: transmission must be in [0, 1]");
    }
    if (ip.c6 == 0.0 || transmission == 0.0 || other.norm == 0.0) return 0.0;

    const double target = sep + probe_offset;
    const double lo = other.center - 8.0 * other.sigma;
    const double hi = other.center + 8.0 * other.sigma;

    auto integrand = [&](double z) {
        return Complex(effective_potential(target - z, ip) * other.density(z), 0.0);
    };

    // |integral| <= |V(dz_min)| * norm since the density integrates to norm;
    // key the absolute tolerance to that bound.
    const double dz_min = (target >= lo && target <= hi)
                              ? 0.0
                              : std::min(std::abs(target - lo), std::abs(target - hi));
    const double scale =
        std::abs(effective_potential(dz_min, ip)) * other.norm;
    const double tol = std::max(1e-11 * scale, 1e-290);

    const double integral = quad1d(integrand, lo, hi, tol).real();
    return angles.sin2_theta() * transmission * integral;
}

double uniform_pass_phase(const InteractionParams& ip, const MixingAngles& angles,
                          double v_rel) {
    ip.validate();
    if (!(v_rel > 0.0)) {
        throw std::invalid_argument("uniform_pass_phase: require v_rel > 0");
    }
    if (ip.c6 == 0.0) return 0.0;
    if (ip.a == 0.0) {
        throw SingularityError("uniform_pass_phase: zero transverse separation");
    }
    const double c3sq = angles.sin2_theta();
    const double a5 = std::pow(ip.a, 5);
    return c3sq * c3sq * ip.c6 * (3.0 * std::numbers::pi / 8.0) / (a5 * v_rel);
}

}  // namespace rydxpm
