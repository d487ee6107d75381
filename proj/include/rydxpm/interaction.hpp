// Van-der-Waals interaction: the transversely offset 1-D potential, the
// mean-field detuning of the Rydberg level as a convolution over the other
// pulse's profile, and the closed-form uniform-pass phase.
#pragma once

#include "rydxpm/atomic_response.hpp"

namespace rydxpm {

/// Interaction constants. The potential is attractive,
/// Delta(x) = -c6 / |x|^6 with c6 >= 0 the stored magnitude.
struct InteractionParams {
    double c6;  // VdW coefficient magnitude (rad/s * m^6)
    double a;   // fixed transverse separation between the pulse tracks (m)

    void validate() const;
};

/// Normalized Gaussian line density |f(z)|^2 = norm/(sqrt(pi) sigma)
/// exp(-(z-center)^2 / sigma^2); the integral over z equals norm.
struct PulseProfile {
    double sigma;      // characteristic longitudinal size (m)
    double center;     // center coordinate (m)
    double norm = 1.0; // transmission-scaled weight, <= 1

    double density(double z) const;
    void validate() const;
};

/// Potential between two points with longitudinal separation dz on tracks a
/// apart: -c6 / (dz^2 + a^2)^3. Throws SingularityError at zero distance.
double effective_potential(double dz, const InteractionParams& ip);

/// Mean-field shift of the Rydberg level seen by a probe point at
/// (sep + probe_offset) from the other pulse's center:
///   sin^2(theta) * transmission * Int dz' Delta(sep + probe_offset - z')
///                                        |f_other(z')|^2,
/// by adaptive quadrature over the other profile's +/- 8 sigma support.
double delta_r(double sep, double probe_offset, const PulseProfile& other,
               const InteractionParams& ip, const MixingAngles& angles,
               double transmission);

/// Cross phase accumulated over one complete pass at constant relative speed:
///   c3^4 * c6 * (3 pi / 8) / (a^5 * v_rel),
/// independent of the co-moving coordinates (hence uniform across the pair).
double uniform_pass_phase(const InteractionParams& ip, const MixingAngles& angles,
                          double v_rel);

}  // namespace rydxpm
