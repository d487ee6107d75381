// Iterative grid propagation of two identical interacting pulses: the
// interaction shift at step i is computed from the pulse size and
// transmission at step i-1, fed into the time-dependent coherence solution,
// and the refreshed group velocity, absorption, transmission and pulse size
// drive the next step.
#pragma once

#include <vector>

#include "rydxpm/atomic_response.hpp"
#include "rydxpm/interaction.hpp"

namespace rydxpm {

enum class Geometry { counter, co };

enum class TrajectoryStatus {
    completed,
    superluminal_abort,  // group index fell to <= 1 (anomalous dispersion)
    extinction_abort,    // transmission fell below the extinction threshold
};

/// How the susceptibility triple is obtained along the trajectory: the
/// steady-state formula at the instantaneous shift (default), or the full
/// coherence histories integrated in time. The time-dependent histories ring
/// when the shift sweeps blockade-deep within a few dark-pole times (small
/// transverse separations): Im chi transiently goes negative and the pulses
/// extinguish, so the quasi-static response is the production default and
/// the history mode is kept for cross-checks.
enum class ResponseMode { quasi_static, time_dependent };

struct SimOptions {
    bool feedback = true;      // false: interaction shift forced to zero
    bool absorption = true;    // false: Im chi forced to zero, T stays 1
    ResponseMode response = ResponseMode::quasi_static;
    double extinction_threshold = 1e-6;
};

/// Per-grid-point snapshot of the identical pulse pair.
struct PulsePairState {
    double z;               // counter: center separation; co: distance traveled (m)
    double t;               // elapsed time since entry (s)
    double sigma;           // evolved common pulse size (m)
    double transmission;    // running intensity transmission, in [0, 1]
    double delta_r_center;  // interaction shift at the pulse center (rad/s)
    double delta_r_offset;  // shift at longitudinal offset sigma from center
    double vg_center;       // group velocity at the center (m/s)
    double vg_offset;       // group velocity at offset sigma (m/s)
    double delta_v;         // |vg_offset - vg_center| / vg_center
};

struct Trajectory {
    Geometry geometry;
    TrajectoryStatus status;
    double sigma0;              // input pulse size (m)
    double medium_half_length;  // L (m); counter: Z spans [-L, L]; co: [0, L]
    double step_frac;           // grid step as a fraction of sigma0
    int n_d;                    // number of grid intervals
    std::vector<PulsePairState> states;

    bool completed() const { return status == TrajectoryStatus::completed; }
    double total_time() const { return states.empty() ? 0.0 : states.back().t; }
};

/// Counter-propagation: center separation advances from -L to +L, relative
/// speed v_g,1 + v_g,2; the per-step path of each pulse is |dZ| / 2.
/// Requires calibrated params (chi_amp set). step_frac <= 0.01 for
/// production accuracy; the baseline grid uses 0.005.
Trajectory simulate_counter(const SystemParams& p, const InteractionParams& ip,
                            double sigma0, double L, double step_frac,
                            const SimOptions& opts = {});

/// Co-propagation on parallel tracks: zero longitudinal separation, fixed
/// transverse offset; the grid advances the traveled distance from 0 to L.
Trajectory simulate_co(const SystemParams& p, const InteractionParams& ip,
                       double sigma0, double L, double step_frac,
                       const SimOptions& opts = {});

/// |vg_offset - vg_center| / vg_center.
double dispersion_ratio(const PulsePairState& state);

/// One sample of the steady-state group-velocity sweep.
struct BlockadePoint {
    double delta_r;  // rad/s
    double v_g;      // m/s
    double n_g;
};

struct BlockadeReport {
    std::vector<BlockadePoint> points;
    double v_g_two_level;        // pump-off group velocity (m/s)
    bool plateau_detected;
    double plateau_onset_delta_r;  // rad/s; meaningful when detected
    bool reaches_c;                // group index crossed 1 along the sweep
    double v_g_asymptotic;         // v_g at the crossing (bisected) or sweep end
};

/// Sweeps the steady-state group velocity over the given interaction shifts
/// (ordered from small to large magnitude). A plateau is flagged where
/// |dv_g/dDelta_R| < plateau_threshold * v_g / gamma holds for several
/// consecutive samples.
BlockadeReport detect_blockade(const SystemParams& p,
                               const std::vector<double>& delta_r_sweep,
                               double plateau_threshold = 0.02);

/// Blockade signature on a trajectory: a contiguous span of at least
/// 0.5 sigma0 where the center group velocity is elevated to >= 1.5x its
/// entry value while varying by less than 5% per sigma of travel.
bool trajectory_has_blockade_plateau(const Trajectory& traj);

}  // namespace rydxpm
