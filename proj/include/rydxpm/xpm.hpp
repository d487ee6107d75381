// Two-photon output state: accumulated two-body phase over a trajectory,
// the dense phase map over the pulse pair's co-moving coordinates, and the
// fidelity / cross-phase overlap integral. Phase-map rows are independent;
// the default assembly is OpenMP-parallel with a serial reference kept for
// testing and benchmarking.
#pragma once

#include <vector>

#include "rydxpm/errors.hpp"
#include "rydxpm/interaction.hpp"
#include "rydxpm/pulse_dynamics.hpp"

namespace rydxpm {

/// Dense grid of accumulated two-body phase over (z1, z2), with the
/// normalized quadrature-times-density weights of the initial profiles.
struct PhaseMap {
    int n = 0;                    // nodes per axis
    std::vector<double> z;        // shared axis grid, ascending (m)
    std::vector<double> phase;    // row-major, phase[i * n + j] = Phi(z1_i, z2_j)
    std::vector<double> weight;   // per-node weight; sums to 1 over the axis

    double at(int i, int j) const { return phase[static_cast<std::size_t>(i) * n + j]; }
};

struct XpmResult {
    double fidelity = 0.0;     // |overlap|^2, in [0, 1]
    double cross_phase = 0.0;  // arg(overlap), principal value (-pi, pi]
    bool converged = false;
    int grid_n_initial = 0;
    int grid_n_final = 0;
};

/// Thrown when the overlap grid refinement hits the cap; carries the best
/// result obtained.
class XpmAccuracyError : public AccuracyError {
public:
    XpmAccuracyError(const std::string& what, const XpmResult& best)
        : AccuracyError(what, {best.fidelity, best.cross_phase}), best_result(best) {}

    XpmResult best_result;
};

/// Accumulated two-body phase for co-moving coordinates (z1, z2):
///   Phi = c3^4 * Int dtau Delta(s(tau)),
/// s(tau) = (z1 - z2) + Z(tau) for counter geometry (Z the center-separation
/// history) and s = z1 - z2 for co geometry; trapezoid rule on the
/// trajectory's native time grid. Negative for the attractive potential.
/// Throws IncompleteTrajectoryError on an aborted trajectory.
double accumulate_phase(const Trajectory& traj, const InteractionParams& ip,
                        const MixingAngles& angles, double z1, double z2);

/// Phase map on a uniform grid over +/- 5 sigma0 per axis with the initial
/// Gaussian profile weights. The shared uniform axis makes the phase a
/// function of z1 - z2 alone; assembly evaluates the 2n-1 distinct offsets.
PhaseMap build_phase_map(const Trajectory& traj, const InteractionParams& ip,
                         const MixingAngles& angles, int grid_n);

/// Same result computed without OpenMP; reference for tests and benchmarks.
PhaseMap build_phase_map_serial(const Trajectory& traj, const InteractionParams& ip,
                                const MixingAngles& angles, int grid_n);

/// Weighted overlap Sum_ij W_i W_j exp(-i Phi_ij); rows are reduced
/// independently and summed in axis order, so the result is deterministic
/// under any thread count.
Complex overlap_integral(const PhaseMap& map);

/// Fidelity and cross phase of the output state against the interaction-free
/// reference. Starts at grid_n (odd, >= 41) and refines n -> 2n - 1 until
/// |dF| < 1e-4 and |dphi| < 1e-4 rad; throws XpmAccuracyError if the grid cap
/// of 4096 is reached first.
XpmResult overlap(const Trajectory& traj, const InteractionParams& ip,
                  const MixingAngles& angles, int grid_n = 41);

/// Counter-propagation XPM at the nominal initial group velocity and at
/// vg_scale times it (recalibrating chi_amp for each). Both legs run with
/// absorption disabled: the comparison isolates the phase dynamics, and the
/// shared profile amplitude cancels in the overlap anyway.
struct SlowPassResult {
    XpmResult nominal;
    XpmResult scaled;
};

SlowPassResult slow_pass_comparison(const SystemParams& p, const InteractionParams& ip,
                                    const MixingAngles& angles, double vg_scale,
                                    double sigma0, double L, double step_frac,
                                    double target_vg);

}  // namespace rydxpm
