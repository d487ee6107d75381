#include "rydxpm/pulse_dynamics.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "rydxpm/errors.hpp"

namespace rydxpm {

namespace {

// 9-point Gauss-Legendre rule, used for the profile-averaged group velocity
// over +/- 3 sigma in the pulse co-moving coordinate.
constexpr std::array<double, 9> kGlNodes = {
    -0.9681602395076261, -0.8360311073266358, -0.6133714327005904,
    -0.3242534234038089, 0.0,                 0.3242534234038089,
    0.6133714327005904,  0.8360311073266358,  0.9681602395076261};
constexpr std::array<double, 9> kGlWeights = {
    0.0812743883615744, 0.1806481606948574, 0.2606106964029354,
    0.3123470770400029, 0.3302393550012598, 0.2606106964029354,
    0.1806481606948574, 0.0812743883615744};

constexpr double kAverageSpanSigmas = 3.0;

// One probe point inside the pulse, tracked at a fixed scaled offset
// u = z / sigma(t) (uniform dilation keeps a fluid element at constant u).
// Carries the three coherence histories needed for the dispersion
// derivative at Delta1 - h, Delta1, Delta1 + h.
struct OffsetTracker {
    double u = 0.0;
    double weight = 0.0;        // quadrature weight x profile density, or 0
    double delta_r = 0.0;       // shift at the current grid position
    CVec2 x_minus{}, x_center{}, x_plus{};
    OpticalResponse response{};
};

struct ProbeSet {
    std::vector<OffsetTracker> trackers;
    int center_index = -1;
    int sigma_offset_index = -1;  // u = 1, feeds the dispersion ratio
};

ProbeSet make_probe_set() {
    ProbeSet set;
    const double inv_sqrt_pi = 1.0 / std::sqrt(std::numbers::pi);
    for (std::size_t i = 0; i < kGlNodes.size(); ++i) {
        OffsetTracker t;
        t.u = kAverageSpanSigmas * kGlNodes[i];
        t.weight = kAverageSpanSigmas * kGlWeights[i] *
                   inv_sqrt_pi * std::exp(-t.u * t.u);
        if (t.u == 0.0) set.center_index = static_cast<int>(set.trackers.size());
        set.trackers.push_back(t);
    }
    OffsetTracker edge;
    edge.u = 1.0;
    edge.weight = 0.0;  // diagnostic point, excluded from the average
    set.sigma_offset_index = static_cast<int>(set.trackers.size());
    set.trackers.push_back(edge);
    return set;
}

double averaged_vg(const ProbeSet& set) {
    double num = 0.0;
    double den = 0.0;
    for (const OffsetTracker& t : set.trackers) {
        num += t.weight * t.response.v_g;
        den += t.weight;
    }
    return num / den;
}

class CoherenceStepper {
public:
    CoherenceStepper(const SystemParams& p, ResponseMode mode, bool absorption)
        : p_(p), mode_(mode), absorption_(absorption),
          h_(kDispersionStepFraction * p.gamma) {
        p_minus_ = p_;
        p_minus_.delta1 -= h_;
        p_plus_ = p_;
        p_plus_.delta1 += h_;
        // The dispersion derivative is taken at fixed pump frequency, so the
        // two-photon detuning shifts along with delta1.
    }

    void seed_steady(OffsetTracker& t) const {
        if (mode_ == ResponseMode::time_dependent) {
            t.x_minus = steady_coherence(p_minus_, t.delta_r);
            t.x_center = steady_coherence(p_, t.delta_r);
            t.x_plus = steady_coherence(p_plus_, t.delta_r);
        }
        fill_response(t);
    }

    // Advances the three histories from t0 to t1 with the shift interpolated
    // linearly between dr0 and dr1; substeps keep the step below 0.02/gamma.
    void advance(OffsetTracker& t, double t0, double t1, double dr0,
                 double dr1) const {
        if (mode_ == ResponseMode::time_dependent && t1 > t0) {
            const int n_sub = std::max(
                1, static_cast<int>(std::ceil((t1 - t0) * p_.gamma / 0.02)));
            auto dr_at = [&](double time) {
                const double w = (time - t0) / (t1 - t0);
                return dr0 + w * (dr1 - dr0);
            };
            rk4(t.x_minus, p_minus_, dr_at, t0, t1, n_sub);
            rk4(t.x_center, p_, dr_at, t0, t1, n_sub);
            rk4(t.x_plus, p_plus_, dr_at, t0, t1, n_sub);
        }
        fill_response(t);
    }

private:
    template <typename DrAt>
    static void rk4(CVec2& x, const SystemParams& p, const DrAt& dr_at,
                    double t0, double t1, int n_sub) {
        const CVec2 s = coherence_source();
        const double h = (t1 - t0) / n_sub;
        for (int i = 0; i < n_sub; ++i) {
            const double ta = t0 + i * h;
            const Complex2x2 m0 = coherence_matrix(p, dr_at(ta));
            const Complex2x2 mh = coherence_matrix(p, dr_at(ta + 0.5 * h));
            const Complex2x2 m1 = coherence_matrix(p, dr_at(ta + h));
            const CVec2 k1 = m0 * x + s;
            const CVec2 k2 = mh * (x + k1 * (0.5 * h)) + s;
            const CVec2 k3 = mh * (x + k2 * (0.5 * h)) + s;
            const CVec2 k4 = m1 * (x + k3 * h) + s;
            x = x + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);
        }
    }

    void fill_response(OffsetTracker& t) const {
        Complex cm, cc, cp;
        if (mode_ == ResponseMode::time_dependent) {
            cm = chi_from_coherence(p_minus_, t.x_minus);
            cc = chi_from_coherence(p_, t.x_center);
            cp = chi_from_coherence(p_plus_, t.x_plus);
        } else {
            cm = chi_steady(p_minus_, t.delta_r);
            cc = chi_steady(p_, t.delta_r);
            cp = chi_steady(p_plus_, t.delta_r);
        }
        if (!absorption_) {
            cm = Complex(cm.real(), 0.0);
            cc = Complex(cc.real(), 0.0);
            cp = Complex(cp.real(), 0.0);
        }
        t.response = response_from_chi_triple(p_, cm, cc, cp, h_);
    }

    SystemParams p_;
    SystemParams p_minus_;
    SystemParams p_plus_;
    ResponseMode mode_;
    bool absorption_;
    double h_;
};

Trajectory run_simulation(const SystemParams& p, const InteractionParams& ip,
                          double sigma0, double L, double step_frac,
                          const SimOptions& opts, Geometry geometry) {
    p.validate();
    ip.validate();
    if (!(sigma0 > 0.0) || !(L > 0.0)) {
        throw std::invalid_argument("simulate: require sigma0 > 0 and L > 0");
    }
    if (!(step_frac > 0.0) || step_frac > 0.1) {
        throw std::invalid_argument("simulate: step_frac must be in (0, 0.1]");
    }

    const MixingAngles angles = mixing_angles(p);
    const double dz = step_frac * sigma0;
    const double span = (geometry == Geometry::counter) ? 2.0 * L : L;
    const double z_start = (geometry == Geometry::counter) ? -L : 0.0;

    Trajectory traj;
    traj.geometry = geometry;
    traj.status = TrajectoryStatus::completed;
    traj.sigma0 = sigma0;
    traj.medium_half_length = L;
    traj.step_frac = step_frac;
    traj.n_d = std::max(1, static_cast<int>(std::llround(span / dz)));
    traj.states.reserve(traj.n_d + 1);

    ProbeSet probes = make_probe_set();
    CoherenceStepper stepper(p, opts.response, opts.absorption);

    double t_now = 0.0;
    double sigma_prev = sigma0;
    double transmission_prev = 1.0;
    double t_prev = 0.0;
    double vbar0 = 0.0;

    for (int i = 0; i <= traj.n_d; ++i) {
        const double z_i = z_start + (span * i) / traj.n_d;
        // Counter geometry: z is the center separation. Co geometry: the
        // centers stay longitudinally aligned while both pulses advance.
        const double sep = (geometry == Geometry::counter) ? z_i : 0.0;

        PulseProfile other{sigma_prev, 0.0, 1.0};
        for (OffsetTracker& t : probes.trackers) {
            const double dr_prev = t.delta_r;
            const double dr_now =
                opts.feedback
                    ? delta_r(sep, t.u * sigma_prev, other, ip, angles,
                              transmission_prev)
                    : 0.0;
            t.delta_r = dr_now;
            if (i == 0) {
                stepper.seed_steady(t);
            } else {
                stepper.advance(t, t_prev, t_now, dr_prev, dr_now);
            }
        }

        const OffsetTracker& center = probes.trackers[probes.center_index];
        const OffsetTracker& edge = probes.trackers[probes.sigma_offset_index];

        // Anomalous dispersion anywhere across the tracked profile kills the
        // pulse; the averaged velocity is meaningless past that point.
        bool anomalous = false;
        for (const OffsetTracker& t : probes.trackers) {
            anomalous = anomalous || t.response.n_g <= 1.0;
        }

        const double d_path = (i == 0) ? 0.0
                              : (geometry == Geometry::counter) ? 0.5 * dz
                                                                : dz;
        // Transmission is a loss budget and stays non-increasing; the
        // time-dependent histories can transiently show gain (Im chi < 0)
        // during fast shift swings, which the update ignores.
        const double alpha_eff = std::max(center.response.alpha, 0.0);
        const double transmission =
            opts.absorption ? transmission_prev * std::exp(-alpha_eff * d_path)
                            : 1.0;

        double sigma_now = sigma_prev;
        if (!anomalous) {
            const double vbar = averaged_vg(probes);
            if (i == 0) vbar0 = vbar;
            sigma_now = sigma0 * vbar / vbar0;
        }

        PulsePairState state{};
        state.z = z_i;
        state.t = t_now;
        state.sigma = sigma_now;
        state.transmission = transmission;
        state.delta_r_center = center.delta_r;
        state.delta_r_offset = edge.delta_r;
        state.vg_center = center.response.v_g;
        state.vg_offset = edge.response.v_g;
        state.delta_v = anomalous ? 0.0 : dispersion_ratio(state);
        traj.states.push_back(state);

        if (anomalous) {
            traj.status = TrajectoryStatus::superluminal_abort;
            break;
        }
        if (transmission < opts.extinction_threshold) {
            traj.status = TrajectoryStatus::extinction_abort;
            break;
        }

        sigma_prev = sigma_now;
        transmission_prev = transmission;
        t_prev = t_now;
        const double closing_speed = (geometry == Geometry::counter)
                                         ? 2.0 * center.response.v_g
                                         : center.response.v_g;
        t_now += dz / closing_speed;
    }
    return traj;
}

}  // namespace

Trajectory simulate_counter(const SystemParams& p, const InteractionParams& ip,
                            double sigma0, double L, double step_frac,
                            const SimOptions& opts) {
    return run_simulation(p, ip, sigma0, L, step_frac, opts, Geometry::counter);
}

Trajectory simulate_co(const SystemParams& p, const InteractionParams& ip,
                       double sigma0, double L, double step_frac,
                       const SimOptions& opts) {
    return run_simulation(p, ip, sigma0, L, step_frac, opts, Geometry::co);
}

double dispersion_ratio(const PulsePairState& state) {
    if (!(state.vg_center > 0.0)) {
        throw std::invalid_argument("dispersion_ratio: require vg_center > 0");
    }
    return std::abs(state.vg_offset - state.vg_center) / state.vg_center;
}

BlockadeReport detect_blockade(const SystemParams& p,
                               const std::vector<double>& delta_r_sweep,
                               double plateau_threshold) {
    p.validate();
    if (delta_r_sweep.size() < 2) {
        throw std::invalid_argument("detect_blockade: need at least 2 samples");
    }

    auto response_at = [&](double dr) {
        return response_from_chi(p, [&](double d1) {
            SystemParams q = p;
            q.delta1 = d1;
            return chi_steady(q, dr);
        });
    };

    BlockadeReport report{};
    report.v_g_two_level = response_from_chi(p, [&](double d1) {
                               SystemParams q = p;
                               q.delta1 = d1;
                               return chi_two_level(q);
                           }).v_g;

    for (double dr : delta_r_sweep) {
        const OpticalResponse r = response_at(dr);
        report.points.push_back({dr, r.v_g, r.n_g});
    }

    // Plateau: several consecutive samples with a small local slope.
    constexpr int kSustained = 3;
    report.plateau_detected = false;
    report.plateau_onset_delta_r = 0.0;
    for (std::size_t i = 0; i + kSustained < report.points.size(); ++i) {
        bool flat = true;
        for (int k = 0; k < kSustained && flat; ++k) {
            const BlockadePoint& a = report.points[i + k];
            const BlockadePoint& b = report.points[i + k + 1];
            const double slope = std::abs((b.v_g - a.v_g) / (b.delta_r - a.delta_r));
            flat = slope <= plateau_threshold * std::abs(a.v_g) / p.gamma;
        }
        if (flat) {
            report.plateau_detected = true;
            report.plateau_onset_delta_r = report.points[i].delta_r;
            break;
        }
    }

    // Anomalous-dispersion onset: n_g crosses 1; bisect for the crossing so
    // the reported asymptotic velocity is the value actually reached.
    report.reaches_c = false;
    report.v_g_asymptotic = report.points.back().v_g;
    for (std::size_t i = 0; i + 1 < report.points.size(); ++i) {
        if (report.points[i].n_g > 1.0 && report.points[i + 1].n_g <= 1.0) {
            double lo = report.points[i].delta_r;      // n_g > 1
            double hi = report.points[i + 1].delta_r;  // n_g <= 1
            for (int iter = 0; iter < 60; ++iter) {
                const double mid = 0.5 * (lo + hi);
                if (response_at(mid).n_g > 1.0) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            report.reaches_c = true;
            report.v_g_asymptotic = response_at(lo).v_g;
            break;
        }
    }
    return report;
}

bool trajectory_has_blockade_plateau(const Trajectory& traj) {
    constexpr double kSpanSigmas = 0.5;     // minimum platform length
    constexpr double kElevation = 1.5;      // factor above the entry velocity
    constexpr double kSlopePerSigma = 0.05; // |d ln v_g / d(z/sigma)| bound
    if (traj.states.size() < 2) return false;
    const double v_entry = traj.states.front().vg_center;

    double span = 0.0;
    for (std::size_t i = 1; i < traj.states.size(); ++i) {
        const double v = traj.states[i].vg_center;
        const double dv = std::abs(v - traj.states[i - 1].vg_center);
        const double dz_sigmas =
            std::abs(traj.states[i].z - traj.states[i - 1].z) / traj.sigma0;
        const bool flat = dz_sigmas > 0.0 &&
                          dv / (v * dz_sigmas) < kSlopePerSigma &&
                          v >= kElevation * v_entry;
        if (flat) {
            span += dz_sigmas;
            if (span >= kSpanSigmas) return true;
        } else {
            span = 0.0;
        }
    }
    return false;
}

}  // namespace rydxpm
