// Compares the serial reference and OpenMP phase-map assembly on a synthetic
// non-interacting trajectory, plus the overlap reduction, and verifies the
// two produce identical maps.
#include <chrono>
#include <cmath>
#include <cstdio>

#include "rydxpm/config.hpp"
#include "rydxpm/xpm.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using Clock = std::chrono::steady_clock;

static double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

int main() {
    using namespace rydxpm;

    ScenarioConfig cfg = default_config();
    const SystemParams p = calibrate(cfg.system_params(), cfg.target_vg);
    const InteractionParams ip = cfg.interaction_params();
    const MixingAngles angles = mixing_angles(p);

    // Constant-velocity pass: cheap to build, full-length time grid.
    SimOptions opts;
    opts.feedback = false;
    const Trajectory traj =
        simulate_counter(p, ip, cfg.sigma, cfg.L, cfg.step_frac, opts);
    std::printf("trajectory: %zu states\n", traj.states.size());
#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP: not enabled\n");
#endif

    for (int n : {161, 641, 1281}) {
        auto t0 = Clock::now();
        const PhaseMap serial = build_phase_map_serial(traj, ip, angles, n);
        const double t_serial = seconds_since(t0);

        t0 = Clock::now();
        const PhaseMap parallel = build_phase_map(traj, ip, angles, n);
        const double t_parallel = seconds_since(t0);

        double max_diff = 0.0;
        for (std::size_t i = 0; i < serial.phase.size(); ++i) {
            max_diff = std::max(max_diff,
                                std::abs(serial.phase[i] - parallel.phase[i]));
        }

        t0 = Clock::now();
        const Complex s = overlap_integral(parallel);
        const double t_overlap = seconds_since(t0);

        std::printf(
            "n=%5d  serial %8.4f s  parallel %8.4f s  speedup %5.2fx  "
            "max|diff| %g  overlap %8.4f s  F=%.6f\n",
            n, t_serial, t_parallel, t_serial / t_parallel, max_diff, t_overlap,
            std::norm(s));
        if (max_diff != 0.0) {
            std::printf("mismatch between serial and parallel maps\n");
            return 1;
        }
    }
    return 0;
}
