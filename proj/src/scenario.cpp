#include "rydxpm/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

#include "json.hpp"
#include "rydxpm/errors.hpp"
#include "rydxpm/xpm.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rydxpm {

namespace fs = std::filesystem;

namespace {

std::string fmt12(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

struct Table {
    std::string file;
    std::string title;
    std::vector<ColumnSchema> columns;
    std::vector<std::vector<double>> rows;
};

void write_table(const fs::path& dir, const Table& t) {
    std::ofstream out(dir / t.file, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open output file " + (dir / t.file).string());
    }
    out << "# rydxpm " << kLibraryVersion << ": " << t.title << "\n";
    for (const ColumnSchema& c : t.columns) {
        out << "# column " << c.name << ": " << c.description << "\n";
    }
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
        out << (i ? "," : "") << t.columns[i].name;
    }
    out << "\n";
    for (const std::vector<double>& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << (i ? "," : "") << fmt12(row[i]);
        }
        out << "\n";
    }
}

struct ScenarioData {
    std::vector<Table> tables;
    std::string status = "completed";
    int exit_code = kExitClean;
    std::vector<std::string> notes;
};

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(n);
    if (n == 1) {
        v[0] = lo;
        return v;
    }
    for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
    return v;
}

SystemParams calibrated_params(const ScenarioConfig& cfg) {
    SystemParams p = cfg.system_params();
    if (p.chi_amp == 0.0) p = calibrate(p, cfg.target_vg);
    return p;
}

void record_trajectory_status(const Trajectory& traj, ScenarioData& data) {
    switch (traj.status) {
        case TrajectoryStatus::completed:
            break;
        case TrajectoryStatus::superluminal_abort:
            data.status = "superluminal_abort";
            data.exit_code = kExitPhysicsAbort;
            data.notes.push_back("aborted: group index fell to <= 1 at z = " +
                                 fmt12(traj.states.back().z) + " m");
            break;
        case TrajectoryStatus::extinction_abort:
            data.status = "extinction_abort";
            data.exit_code = kExitPhysicsAbort;
            data.notes.push_back("aborted: transmission fell below threshold at z = " +
                                 fmt12(traj.states.back().z) + " m");
            break;
    }
}

Table trajectory_table(const ScenarioConfig& cfg, const Trajectory& traj,
                       const std::string& file, const std::string& title) {
    Table t;
    t.file = file;
    t.title = title;
    t.columns = {
        {"z_over_sigma", traj.geometry == Geometry::counter
                             ? "center separation Z in units of the input size"
                             : "distance traveled in units of the input size"},
        {"t_s", "elapsed time since entry (s)"},
        {"delta_r_over_gamma", "interaction shift at the pulse center (gamma)"},
        {"transmission", "running intensity transmission"},
        {"vg_m_per_s", "group velocity at the pulse center (m/s)"},
        {"sigma_ratio", "evolved pulse size over the input size"},
        {"delta_v", "group-velocity deviation ratio across the pulse"},
    };
    for (const PulsePairState& s : traj.states) {
        t.rows.push_back({s.z / traj.sigma0, s.t, s.delta_r_center / cfg.gamma,
                          s.transmission, s.vg_center, s.sigma / traj.sigma0,
                          s.delta_v});
    }
    return t;
}

ScenarioData exec_susceptibility(const ScenarioConfig& cfg) {
    const SystemParams p = calibrated_params(cfg);
    ScenarioData data;
    Table t;
    t.file = "susceptibility.csv";
    t.title = "steady-state susceptibility across the probe detuning";
    t.columns = {
        {"delta1_over_gamma", "probe detuning (gamma)"},
        {"delta_r_over_gamma", "interaction shift (gamma)"},
        {"re_chi", "Re chi"},
        {"im_chi", "Im chi"},
        {"n_minus_1", "refractive index minus one"},
        {"vg_m_per_s", "group velocity (m/s)"},
    };
    for (double d1 : linspace(cfg.delta1_min, cfg.delta1_max, cfg.delta1_points)) {
        SystemParams q = p;
        q.delta1 = d1;
        const OpticalResponse r = response_from_chi(q, [&](double dd) {
            SystemParams w = q;
            w.delta1 = dd;
            return chi_steady(w, cfg.delta_r);
        });
        t.rows.push_back({d1 / cfg.gamma, cfg.delta_r / cfg.gamma, r.chi.real(),
                          r.chi.imag(), r.n_minus_1, r.v_g});
    }
    data.tables.push_back(std::move(t));
    return data;
}

ScenarioData exec_blockade(const ScenarioConfig& cfg) {
    const SystemParams p = calibrated_params(cfg);
    std::vector<double> values =
        linspace(cfg.delta_r_min, cfg.delta_r_max, cfg.delta_r_points);
    // Sweep from the small-|shift| end so onset detection walks into blockade.
    if (std::abs(values.front()) > std::abs(values.back())) {
        std::reverse(values.begin(), values.end());
    }
    const BlockadeReport report = detect_blockade(p, values);

    ScenarioData data;
    Table t;
    t.file = "blockade.csv";
    t.title = "steady-state group velocity against the interaction shift";
    t.columns = {
        {"delta_r_over_gamma", "interaction shift (gamma)"},
        {"vg_m_per_s", "group velocity (m/s)"},
        {"vg_twolevel_m_per_s", "pump-off (two-level) group velocity (m/s)"},
    };
    for (const BlockadePoint& pt : report.points) {
        t.rows.push_back({pt.delta_r / cfg.gamma, pt.v_g, report.v_g_two_level});
    }
    data.tables.push_back(std::move(t));

    data.notes.push_back(std::string("plateau_detected: ") +
                         (report.plateau_detected ? "yes" : "no"));
    if (report.plateau_detected) {
        data.notes.push_back("plateau_onset_delta_r_over_gamma: " +
                             fmt12(report.plateau_onset_delta_r / cfg.gamma));
    }
    data.notes.push_back(std::string("reaches_c: ") +
                         (report.reaches_c ? "yes" : "no"));
    data.notes.push_back("vg_asymptotic_m_per_s: " + fmt12(report.v_g_asymptotic));
    return data;
}

ScenarioData exec_propagate(const ScenarioConfig& cfg, Geometry geometry) {
    const SystemParams p = calibrated_params(cfg);
    const InteractionParams ip = cfg.interaction_params();
    const Trajectory traj =
        geometry == Geometry::counter
            ? simulate_counter(p, ip, cfg.sigma, cfg.L, cfg.step_frac,
                               cfg.sim_options())
            : simulate_co(p, ip, cfg.sigma, cfg.L, cfg.step_frac, cfg.sim_options());

    ScenarioData data;
    record_trajectory_status(traj, data);
    const bool counter = geometry == Geometry::counter;
    data.tables.push_back(trajectory_table(
        cfg, traj, counter ? "propagate_counter.csv" : "propagate_co.csv",
        counter ? "counter-propagating pulse pair" : "co-propagating pulse pair"));
    return data;
}

Table phase_map_table(const PhaseMap& map, double sigma0) {
    Table t;
    t.file = "phase_map.csv";
    t.title = "accumulated two-body phase over the pair coordinates";
    t.columns = {
        {"z1_over_sigma", "first co-moving coordinate (input sizes)"},
        {"z2_over_sigma", "second co-moving coordinate (input sizes)"},
        {"phase_rad", "accumulated phase (rad)"},
    };
    for (int i = 0; i < map.n; ++i) {
        for (int j = 0; j < map.n; ++j) {
            t.rows.push_back({map.z[i] / sigma0, map.z[j] / sigma0, map.at(i, j)});
        }
    }
    return t;
}

ScenarioData exec_xpm(const ScenarioConfig& cfg) {
    const SystemParams p = calibrated_params(cfg);
    const InteractionParams ip = cfg.interaction_params();
    const MixingAngles angles = mixing_angles(p);

    ScenarioData data;
    Table t;
    t.file = "xpm.csv";
    t.title = "fidelity and cross phase against the medium size";
    t.columns = {
        {"L_over_sigma", "medium size in units of the input size"},
        {"fidelity", "|overlap|^2 with the interaction-free reference"},
        {"cross_phase_rad", "arg(overlap), principal value"},
    };

    Trajectory last_completed;
    bool have_completed = false;
    for (double L : linspace(cfg.L_min, cfg.L_max, cfg.L_points)) {
        Trajectory traj =
            cfg.geometry == Geometry::counter
                ? simulate_counter(p, ip, cfg.sigma, L, cfg.step_frac,
                                   cfg.sim_options())
                : simulate_co(p, ip, cfg.sigma, L, cfg.step_frac, cfg.sim_options());
        if (!traj.completed()) {
            record_trajectory_status(traj, data);
            break;
        }
        try {
            const XpmResult r = overlap(traj, ip, angles, cfg.grid_n);
            t.rows.push_back({L / cfg.sigma, r.fidelity, r.cross_phase});
            if (!r.converged) data.notes.push_back("overlap not converged");
        } catch (const XpmAccuracyError& err) {
            data.status = "accuracy_error";
            data.exit_code = kExitAccuracyFailure;
            data.notes.push_back(std::string("overlap accuracy failure: ") +
                                 err.what());
            t.rows.push_back({L / cfg.sigma, err.best_result.fidelity,
                              err.best_result.cross_phase});
            break;
        }
        last_completed = traj;
        have_completed = true;
    }
    data.tables.push_back(std::move(t));

    if (cfg.export_phase_map && have_completed) {
        const PhaseMap map =
            build_phase_map(last_completed, ip, angles, cfg.grid_n);
        data.tables.push_back(phase_map_table(map, cfg.sigma));
    }
    return data;
}

ScenarioData exec_slow_pass(const ScenarioConfig& cfg) {
    const SystemParams p = cfg.system_params();
    const InteractionParams ip = cfg.interaction_params();
    const MixingAngles angles = mixing_angles(p);

    ScenarioData data;
    const SlowPassResult r =
        slow_pass_comparison(p, ip, angles, cfg.vg_scale, cfg.sigma, cfg.L,
                             cfg.step_frac, cfg.target_vg);
    Table t;
    t.file = "slow_pass.csv";
    t.title = "counter-propagation at nominal and scaled initial velocity";
    t.columns = {
        {"vg_scale", "initial-velocity scale factor of the slow leg"},
        {"fidelity_nominal", "fidelity at the nominal initial velocity"},
        {"cross_phase_nominal_rad", "cross phase at the nominal velocity"},
        {"fidelity_scaled", "fidelity at the scaled initial velocity"},
        {"cross_phase_scaled_rad", "cross phase at the scaled velocity"},
    };
    t.rows.push_back({cfg.vg_scale, r.nominal.fidelity, r.nominal.cross_phase,
                      r.scaled.fidelity, r.scaled.cross_phase});
    data.tables.push_back(std::move(t));
    if (!r.nominal.converged || !r.scaled.converged) {
        data.notes.push_back("overlap not converged");
    }
    return data;
}

ScenarioData exec_scenario(const ScenarioConfig& cfg) {
    switch (cfg.kind) {
        case ScenarioKind::susceptibility_sweep: return exec_susceptibility(cfg);
        case ScenarioKind::blockade_sweep: return exec_blockade(cfg);
        case ScenarioKind::propagate_counter:
            return exec_propagate(cfg, Geometry::counter);
        case ScenarioKind::propagate_co: return exec_propagate(cfg, Geometry::co);
        case ScenarioKind::xpm: return exec_xpm(cfg);
        case ScenarioKind::slow_pass: return exec_slow_pass(cfg);
        case ScenarioKind::custom_sweep:
            throw std::logic_error("custom-sweep handled by run_scenario");
    }
    throw std::logic_error("unhandled scenario kind");
}

std::string suffixed(const std::string& file, const std::string& suffix) {
    const auto dot = file.rfind('.');
    return file.substr(0, dot) + suffix + file.substr(dot);
}

int sweep_thread_cap() {
    if (const char* env = std::getenv("RYDXPM_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

RunManifest finalize(const ScenarioConfig& cfg, ScenarioData&& data,
                     const fs::path& out_dir,
                     std::chrono::steady_clock::time_point start) {
    fs::create_directories(out_dir);
    RunManifest manifest;
    manifest.scenario = to_string(cfg.kind);
    manifest.status = data.status;
    manifest.exit_code = data.exit_code;
    manifest.config_echo = echo_config(cfg);
    manifest.notes = std::move(data.notes);
    for (const Table& t : data.tables) {
        write_table(out_dir, t);
        manifest.outputs.push_back(
            {t.file, t.columns, static_cast<long>(t.rows.size())});
    }
    manifest.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    std::ofstream mf(out_dir / "manifest.json", std::ios::binary);
    mf << manifest.to_json() << "\n";
    return manifest;
}

}  // namespace

std::string RunManifest::to_json() const {
    nlohmann::json j;
    j["version"] = version;
    j["scenario"] = scenario;
    j["status"] = status;
    j["exit_code"] = exit_code;
    j["wall_time_s"] = wall_time_s;  // varies between runs; data files do not
    j["config"] = config_echo;
    j["notes"] = notes;
    j["outputs"] = nlohmann::json::array();
    for (const OutputFile& f : outputs) {
        nlohmann::json jf;
        jf["file"] = f.file;
        jf["rows"] = f.rows;
        jf["columns"] = nlohmann::json::array();
        for (const ColumnSchema& c : f.columns) {
            jf["columns"].push_back({{"name", c.name}, {"description", c.description}});
        }
        j["outputs"].push_back(jf);
    }
    return j.dump(2);
}

RunManifest run_scenario(const ScenarioConfig& cfg, const fs::path& out_dir) {
    if (cfg.kind == ScenarioKind::custom_sweep) {
        ScenarioConfig base = cfg;
        base.kind = cfg.base_kind;
        base.sweep_axis.clear();
        base.sweep_values.clear();
        return sweep(base, cfg.sweep_axis, cfg.sweep_values, out_dir);
    }
    const auto start = std::chrono::steady_clock::now();
    ScenarioData data = exec_scenario(cfg);
    return finalize(cfg, std::move(data), out_dir, start);
}

RunManifest sweep(const ScenarioConfig& cfg, const std::string& axis,
                  const std::vector<double>& values_si, const fs::path& out_dir) {
    if (cfg.kind == ScenarioKind::custom_sweep) {
        throw std::invalid_argument("sweep: base scenario cannot be custom-sweep");
    }
    const auto start = std::chrono::steady_clock::now();
    const int n = static_cast<int>(values_si.size());

    std::vector<ScenarioData> results(n);
    std::vector<std::string> failures(n);

    const int threads = std::min(sweep_thread_cap(), n);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(threads)
#endif
    for (int i = 0; i < n; ++i) {
        try {
            results[i] = exec_scenario(with_axis_value(cfg, axis, values_si[i]));
        } catch (const std::exception& e) {
            failures[i] = e.what();  // one failure must not abort siblings
        }
    }

    ScenarioData combined;
    Table long_table;
    bool long_ready = false;
    for (int i = 0; i < n; ++i) {
        const std::string suffix = "_" + axis + std::to_string(i);
        if (!failures[i].empty()) {
            combined.notes.push_back(axis + "[" + std::to_string(i) + "] = " +
                                     fmt12(values_si[i]) + " failed: " + failures[i]);
            combined.status = "accuracy_error";
            combined.exit_code = std::max(combined.exit_code,
                                          static_cast<int>(kExitAccuracyFailure));
            continue;
        }
        ScenarioData& r = results[i];
        if (r.exit_code > combined.exit_code) {
            combined.exit_code = r.exit_code;
            combined.status = r.status;
        }
        for (const std::string& note : r.notes) {
            combined.notes.push_back(axis + "[" + std::to_string(i) + "]: " + note);
        }
        for (std::size_t k = 0; k < r.tables.size(); ++k) {
            Table t = r.tables[k];
            if (k == 0) {
                if (!long_ready) {
                    long_table.file = suffixed(t.file, "_sweep");
                    long_table.title = t.title + " (swept over " + axis + ")";
                    long_table.columns.push_back(
                        {axis + "_si", "swept value of " + axis + " (SI base units)"});
                    for (const ColumnSchema& c : t.columns) {
                        long_table.columns.push_back(c);
                    }
                    long_ready = true;
                }
                for (const std::vector<double>& row : t.rows) {
                    std::vector<double> long_row;
                    long_row.reserve(row.size() + 1);
                    long_row.push_back(values_si[i]);
                    long_row.insert(long_row.end(), row.begin(), row.end());
                    long_table.rows.push_back(std::move(long_row));
                }
            }
            t.file = suffixed(t.file, suffix);
            combined.tables.push_back(std::move(t));
        }
    }
    if (long_ready) combined.tables.push_back(std::move(long_table));

    // Echo as a custom-sweep so re-parsing the manifest config re-runs the
    // whole sweep, not just the base scenario.
    ScenarioConfig echo_cfg = cfg;
    echo_cfg.kind = ScenarioKind::custom_sweep;
    echo_cfg.base_kind = cfg.kind;
    echo_cfg.sweep_axis = axis;
    echo_cfg.sweep_values = values_si;
    RunManifest manifest = finalize(echo_cfg, std::move(combined), out_dir, start);
    manifest.scenario = to_string(cfg.kind) + " sweep over " + axis;
    return manifest;
}

const std::vector<Preset>& presets() {
    static const std::vector<Preset> list = {
        {"susceptibility-shift",
         "refractive-curve shift with increasing attractive interaction shift",
         "scenario = custom-sweep\n"
         "base_scenario = susceptibility-sweep\n"
         "sweep_axis = delta_r\n"
         "sweep_values = 0 gamma, -1 gamma, -2 gamma, -5 gamma, -20 gamma\n"},
        {"blockade-sweep",
         "steady group velocity against the interaction shift, with the "
         "two-level reference",
         "scenario = blockade-sweep\n"},
        {"pulse-motion",
         "counter-propagating pair at three transverse separations",
         "scenario = custom-sweep\n"
         "base_scenario = propagate-counter\n"
         "sweep_axis = a\n"
         "sweep_values = 0.58 sigma, 1 sigma, 1.5 sigma\n"},
        {"xpm-counter",
         "fidelity and cross phase against medium size, counter-propagation",
         "scenario = xpm\n"
         "geometry = counter\n"
         "L_min = 1 sigma\n"
         "L_max = 8 sigma\n"
         "L_points = 15\n"},
        {"slow-pass",
         "fidelity degradation when the pulses pass each other slowly",
         "scenario = slow-pass\n"
         "vg_scale = 1e-3\n"},
        {"xpm-co",
         "fidelity and cross phase against medium size, co-propagation",
         "scenario = xpm\n"
         "geometry = co\n"
         "L_min = 0.5 sigma\n"
         "L_max = 5 sigma\n"
         "L_points = 10\n"},
        {"co-propagation",
         "co-propagating pair on parallel tracks",
         "scenario = propagate-co\n"
         "L = 5 sigma\n"},
    };
    return list;
}

const Preset& find_preset(const std::string& id) {
    for (const Preset& p : presets()) {
        if (p.id == id) return p;
    }
    throw std::invalid_argument("unknown preset '" + id + "'");
}

}  // namespace rydxpm
