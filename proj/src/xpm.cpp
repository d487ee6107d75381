#include "rydxpm/xpm.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace rydxpm {

namespace {

constexpr double kDomainSigmas = 5.0;  // tail contribution below 1e-8

double phase_line(const Trajectory& traj, const InteractionParams& ip,
                  double c3_fourth, double w) {
    // Int dtau Delta(s(tau)) by trapezoid on the trajectory time grid.
    const bool counter = traj.geometry == Geometry::counter;
    double integral = 0.0;
    double prev_v = 0.0;
    double prev_t = 0.0;
    for (std::size_t k = 0; k < traj.states.size(); ++k) {
        const double s = counter ? w + traj.states[k].z : w;
        const double v = effective_potential(s, ip);
        const double t = traj.states[k].t;
        if (k > 0) integral += 0.5 * (v + prev_v) * (t - prev_t);
        prev_v = v;
        prev_t = t;
    }
    return c3_fourth * integral;
}

void check_complete(const Trajectory& traj) {
    if (!traj.completed()) {
        throw IncompleteTrajectoryError(
            "phase accumulation requires a completed trajectory");
    }
    if (traj.states.size() < 2) {
        throw IncompleteTrajectoryError("trajectory has fewer than 2 states");
    }
}

PhaseMap make_map_grid(const Trajectory& traj, int grid_n) {
    PhaseMap map;
    map.n = grid_n;
    map.z.resize(grid_n);
    map.weight.resize(grid_n);
    map.phase.assign(static_cast<std::size_t>(grid_n) * grid_n, 0.0);

    const double half = kDomainSigmas * traj.sigma0;
    const double dz = 2.0 * half / (grid_n - 1);
    const PulseProfile profile{traj.sigma0, 0.0, 1.0};

    double total = 0.0;
    for (int i = 0; i < grid_n; ++i) {
        map.z[i] = -half + i * dz;
        const double trap = (i == 0 || i == grid_n - 1) ? 0.5 : 1.0;
        map.weight[i] = trap * dz * profile.density(map.z[i]);
        total += map.weight[i];
    }
    for (double& w : map.weight) w /= total;
    return map;
}

template <bool Parallel>
PhaseMap build_map(const Trajectory& traj, const InteractionParams& ip,
                   const MixingAngles& angles, int grid_n) {
    check_complete(traj);
    ip.validate();
    if (grid_n < 2) {
        throw std::invalid_argument("build_phase_map: grid_n must be >= 2");
    }

    PhaseMap map = make_map_grid(traj, grid_n);
    const double c3sq = angles.sin2_theta();
    const double c34 = c3sq * c3sq;

    // Shared uniform axis: the phase depends on z1 - z2 = (i - j) * dz only.
    const double dz = map.z[1] - map.z[0];
    const int n_offsets = 2 * grid_n - 1;
    std::vector<double> line(n_offsets);

    if constexpr (Parallel) {
#pragma omp parallel for schedule(static)
        for (int k = 0; k < n_offsets; ++k) {
            line[k] = phase_line(traj, ip, c34, (k - (grid_n - 1)) * dz);
        }
    } else {
        for (int k = 0; k < n_offsets; ++k) {
            line[k] = phase_line(traj, ip, c34, (k - (grid_n - 1)) * dz);
        }
    }

    for (int i = 0; i < grid_n; ++i) {
        for (int j = 0; j < grid_n; ++j) {
            map.phase[static_cast<std::size_t>(i) * grid_n + j] =
                line[(i - j) + grid_n - 1];
        }
    }
    return map;
}

double principal(double phase) {
    return std::remainder(phase, 2.0 * std::numbers::pi);
}

}  // namespace

double accumulate_phase(const Trajectory& traj, const InteractionParams& ip,
                        const MixingAngles& angles, double z1, double z2) {
    check_complete(traj);
    ip.validate();
    const double c3sq = angles.sin2_theta();
    return phase_line(traj, ip, c3sq * c3sq, z1 - z2);
}

PhaseMap build_phase_map(const Trajectory& traj, const InteractionParams& ip,
                         const MixingAngles& angles, int grid_n) {
    return build_map<true>(traj, ip, angles, grid_n);
}

PhaseMap build_phase_map_serial(const Trajectory& traj, const InteractionParams& ip,
                                const MixingAngles& angles, int grid_n) {
    return build_map<false>(traj, ip, angles, grid_n);
}

Complex overlap_integral(const PhaseMap& map) {
    if (map.n < 2) {
        throw std::invalid_argument("overlap_integral: empty phase map");
    }
    std::vector<Complex> rows(map.n);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < map.n; ++i) {
        Complex acc(0.0, 0.0);
        const double* phase_row = map.phase.data() + static_cast<std::size_t>(i) * map.n;
        for (int j = 0; j < map.n; ++j) {
            acc += map.weight[j] * std::polar(1.0, -phase_row[j]);
        }
        rows[i] = acc;
    }
    Complex total(0.0, 0.0);
    for (int i = 0; i < map.n; ++i) total += map.weight[i] * rows[i];
    return total;
}

XpmResult overlap(const Trajectory& traj, const InteractionParams& ip,
                  const MixingAngles& angles, int grid_n) {
    if (grid_n < 41 || grid_n % 2 == 0) {
        throw std::invalid_argument("overlap: grid_n must be odd and >= 41");
    }
    constexpr int kGridCap = 4096;
    constexpr double kTol = 1e-4;

    auto evaluate = [&](int n) {
        const Complex s = overlap_integral(build_phase_map(traj, ip, angles, n));
        XpmResult r;
        r.fidelity = std::norm(s);
        r.cross_phase = std::arg(s);
        r.grid_n_initial = grid_n;
        r.grid_n_final = n;
        return r;
    };

    XpmResult prev = evaluate(grid_n);
    int n = grid_n;
    while (2 * n - 1 <= kGridCap) {
        n = 2 * n - 1;
        XpmResult next = evaluate(n);
        const double df = std::abs(next.fidelity - prev.fidelity);
        const double dphi = std::abs(principal(next.cross_phase - prev.cross_phase));
        if (df < kTol && dphi < kTol) {
            next.converged = true;
            return next;
        }
        prev = next;
    }
    throw XpmAccuracyError(
        "overlap: no convergence at grid cap " + std::to_string(kGridCap), prev);
}

SlowPassResult slow_pass_comparison(const SystemParams& p, const InteractionParams& ip,
                                    const MixingAngles& angles, double vg_scale,
                                    double sigma0, double L, double step_frac,
                                    double target_vg) {
    if (!(vg_scale > 0.0) || vg_scale > 1.0) {
        throw std::invalid_argument("slow_pass_comparison: vg_scale must be in (0, 1]");
    }
    SimOptions opts;
    opts.absorption = false;

    auto run = [&](double vg) {
        const SystemParams q = calibrate(p, vg);
        const Trajectory traj = simulate_counter(q, ip, sigma0, L, step_frac, opts);
        return overlap(traj, ip, angles);
    };

    SlowPassResult result;
    result.nominal = run(target_vg);
    result.scaled = run(target_vg * vg_scale);
    return result;
}

}  // namespace rydxpm
