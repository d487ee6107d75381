#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "rydxpm/config.hpp"
#include "rydxpm/errors.hpp"
#include "rydxpm/scenario.hpp"
#include "rydxpm/units.hpp"

using namespace rydxpm;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "rydxpm_tests" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

// Parses one CSV data file into rows of doubles.
std::vector<std::vector<double>> read_rows(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    std::vector<std::vector<double>> rows;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            header_seen = true;
            continue;
        }
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

TEST_CASE("empty config resolves to the baseline defaults") {
    const ScenarioConfig cfg = parse_config("");
    CHECK(cfg.gamma == doctest::Approx(units::mhz_to_rad_per_s(5.75)));
    CHECK(cfg.omega_c == doctest::Approx(2.0 * cfg.gamma));
    CHECK(cfg.delta1 == doctest::Approx(2.0 * cfg.gamma));
    CHECK(cfg.delta2 == doctest::Approx(-2.0 * cfg.gamma));
    CHECK(cfg.gamma_rg == doctest::Approx(1e-3 * cfg.gamma));
    CHECK(cfg.g2n_ratio == doctest::Approx(0.75e7));
    CHECK(cfg.sigma == doctest::Approx(11.1e-6));
    CHECK(cfg.a == doctest::Approx(1.5 * 11.1e-6));
    CHECK(cfg.L == doctest::Approx(8.0 * 11.1e-6));
    CHECK(cfg.c6_ghz_um6 == doctest::Approx(8500.0));
    CHECK(cfg.step_frac == doctest::Approx(0.005));
    CHECK(cfg.target_vg == doctest::Approx(10.0));
    CHECK(cfg.lambda_p == doctest::Approx(795e-9));
    CHECK(cfg.kind == ScenarioKind::propagate_counter);
}

TEST_CASE("rates in units of gamma resolve against the stated gamma") {
    const ScenarioConfig cfg = parse_config(
        "gamma = 5.75 MHz\n"
        "delta1 = 2 gamma\n");
    CHECK(cfg.delta1 == doctest::Approx(2.0 * units::mhz_to_rad_per_s(5.75)));

    const ScenarioConfig scaled = parse_config(
        "gamma = 11.5 MHz\n"
        "delta1 = 2 gamma\n");
    CHECK(scaled.delta1 == doctest::Approx(2.0 * units::mhz_to_rad_per_s(11.5)));
    // Defaults expressed in gamma follow the stated gamma too.
    CHECK(scaled.omega_c == doctest::Approx(2.0 * units::mhz_to_rad_per_s(11.5)));
}

TEST_CASE("both coefficient conventions are selectable") {
    const ScenarioConfig ang = parse_config("c6_convention = angular\n");
    const ScenarioConfig ord = parse_config("c6_convention = ordinary\n");
    CHECK(ang.interaction_params().c6 == doctest::Approx(8500e9 * 1e-36));
    CHECK(ord.interaction_params().c6 ==
          doctest::Approx(units::two_pi * 8500e9 * 1e-36));
}

TEST_CASE("lengths accept micrometers and sigma units") {
    const ScenarioConfig cfg = parse_config(
        "sigma = 10 um\n"
        "a = 1.5 sigma\n"
        "L = 4 sigma\n");
    CHECK(cfg.sigma == doctest::Approx(10e-6));
    CHECK(cfg.a == doctest::Approx(15e-6));
    CHECK(cfg.L == doctest::Approx(40e-6));
}

TEST_CASE("parse errors carry the offending location") {
    CHECK_THROWS_AS(parse_config("sigma = -1 um\n"), ParseError);
    CHECK_THROWS_AS(parse_config("no_such_key = 1\n"), ParseError);
    CHECK_THROWS_AS(parse_config("sigma = 1 gamma\n"), ParseError);   // unit mismatch
    CHECK_THROWS_AS(parse_config("sigma = 1\n"), ParseError);         // missing unit
    CHECK_THROWS_AS(parse_config("gamma = 1 gamma\n"), ParseError);   // self-reference
    CHECK_THROWS_AS(parse_config("step_frac = 0.5 um\n"), ParseError);
    CHECK_THROWS_AS(parse_config("sigma = 1 um\nsigma = 2 um\n"), ParseError);
    CHECK_THROWS_AS(parse_config("grid_n = 40\n"), ParseError);
    try {
        parse_config("# comment\n\nsigma = nonsense um\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 3);
        CHECK(e.column >= 9);
    }
}

TEST_CASE("echo round-trip is exact and idempotent") {
    const ScenarioConfig cfg = parse_config(
        "scenario = xpm\n"
        "geometry = co\n"
        "gamma = 5.75 MHz\n"
        "delta1 = 1.7 gamma\n"
        "delta2 = -1.7 gamma\n"
        "sigma = 11.1 um\n"
        "a = 0.58 sigma\n"
        "c6 = 8500 GHz_um6\n"
        "step_frac = 0.0075\n");
    const std::string echo1 = echo_config(cfg);
    const ScenarioConfig cfg2 = parse_config(echo1);
    CHECK(cfg2.gamma == cfg.gamma);
    CHECK(cfg2.delta1 == cfg.delta1);
    CHECK(cfg2.a == cfg.a);
    CHECK(cfg2.step_frac == cfg.step_frac);
    CHECK(cfg2.kind == cfg.kind);
    CHECK(cfg2.geometry == cfg.geometry);
    const std::string echo2 = echo_config(cfg2);
    CHECK(echo1 == echo2);
}

TEST_CASE("sweep values parse with per-axis units") {
    const ScenarioConfig cfg = parse_config(
        "scenario = custom-sweep\n"
        "base_scenario = propagate-counter\n"
        "sweep_axis = a\n"
        "sweep_values = 0.58 sigma, 1 sigma, 1.5 sigma\n");
    REQUIRE(cfg.sweep_values.size() == 3);
    CHECK(cfg.sweep_values[0] == doctest::Approx(0.58 * cfg.sigma));
    CHECK(cfg.sweep_values[2] == doctest::Approx(1.5 * cfg.sigma));
    CHECK_THROWS_AS(parse_config("sweep_axis = lambda_p\n"
                                 "sweep_values = 1 um\n"),
                    ParseError);
}

TEST_CASE("susceptibility sweep output is transparent at the baseline point") {
    const fs::path dir = fresh_dir("susc");
    ScenarioConfig cfg = parse_config(
        "scenario = susceptibility-sweep\n"
        "delta1_points = 81\n");
    const RunManifest m = run_scenario(cfg, dir);
    CHECK(m.exit_code == kExitClean);
    const auto rows = read_rows(dir / "susceptibility.csv");
    REQUIRE(rows.size() == 81);
    double im_at_eit = 1e300, im_max = 0.0;
    for (const auto& row : rows) {
        if (std::abs(row[0] - 2.0) < 1e-9) im_at_eit = row[3];
        im_max = std::max(im_max, row[3]);
    }
    CHECK(im_at_eit < 0.01 * im_max);
}

TEST_CASE("xpm scenario without interaction is the identity channel") {
    const fs::path dir = fresh_dir("xpm_c6_0");
    ScenarioConfig cfg = parse_config(
        "scenario = xpm\n"
        "c6 = 0 GHz_um6\n"
        "L_min = 4 sigma\n"
        "L_max = 4 sigma\n"
        "L_points = 1\n");
    const RunManifest m = run_scenario(cfg, dir);
    CHECK(m.exit_code == kExitClean);
    const auto rows = read_rows(dir / "xpm.csv");
    REQUIRE(rows.size() == 1);
    CHECK(rows[0][1] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::abs(rows[0][2]) < 1e-9);
}

TEST_CASE("sweep writes per-value files plus a combined long file") {
    const fs::path dir = fresh_dir("sweep_a");
    ScenarioConfig cfg = parse_config(
        "scenario = propagate-counter\n"
        "step_frac = 0.02\n"
        "L = 4 sigma\n");
    const std::vector<double> values = {0.58 * cfg.sigma, 1.0 * cfg.sigma,
                                        1.5 * cfg.sigma};
    const RunManifest m = sweep(cfg, "a", values, dir);
    CHECK(m.exit_code == kExitClean);
    CHECK(fs::exists(dir / "propagate_counter_a0.csv"));
    CHECK(fs::exists(dir / "propagate_counter_a1.csv"));
    CHECK(fs::exists(dir / "propagate_counter_a2.csv"));
    CHECK(fs::exists(dir / "propagate_counter_sweep.csv"));
    CHECK(fs::exists(dir / "manifest.json"));

    // Final transmissions ordered by separation.
    auto final_t = [&](int i) {
        const auto rows =
            read_rows(dir / ("propagate_counter_a" + std::to_string(i) + ".csv"));
        return rows.back()[3];
    };
    CHECK(final_t(0) < final_t(1));
    CHECK(final_t(1) < final_t(2));

    const auto combined = read_rows(dir / "propagate_counter_sweep.csv");
    const auto single = read_rows(dir / "propagate_counter_a0.csv");
    CHECK(combined.size() == 3 * single.size());
    CHECK(combined[0].size() == single[0].size() + 1);
}

TEST_CASE("custom-sweep scenario dispatches through run_scenario") {
    const fs::path dir = fresh_dir("custom");
    ScenarioConfig cfg = parse_config(
        "scenario = custom-sweep\n"
        "base_scenario = susceptibility-sweep\n"
        "delta1_points = 11\n"
        "sweep_axis = delta_r\n"
        "sweep_values = 0 gamma, -5 gamma\n");
    const RunManifest m = run_scenario(cfg, dir);
    CHECK(m.exit_code == kExitClean);
    CHECK(fs::exists(dir / "susceptibility_delta_r0.csv"));
    CHECK(fs::exists(dir / "susceptibility_delta_r1.csv"));
    CHECK(fs::exists(dir / "susceptibility_sweep.csv"));
}

TEST_CASE("manifest echo reproduces the run bit-exactly") {
    const fs::path dir1 = fresh_dir("echo1");
    const fs::path dir2 = fresh_dir("echo2");
    ScenarioConfig cfg = parse_config(
        "scenario = propagate-co\n"
        "step_frac = 0.02\n"
        "L = 3 sigma\n");
    run_scenario(cfg, dir1);

    // Re-parse the echoed config out of the manifest and re-run.
    const std::string manifest = slurp(dir1 / "manifest.json");
    const auto key = std::string("\"config\": \"");
    const auto start = manifest.find(key) + key.size();
    const auto end = manifest.find("\",", start);
    std::string echoed = manifest.substr(start, end - start);
    // Undo JSON escaping of newlines.
    std::string text;
    for (std::size_t i = 0; i < echoed.size(); ++i) {
        if (echoed[i] == '\\' && i + 1 < echoed.size() && echoed[i + 1] == 'n') {
            text += '\n';
            ++i;
        } else {
            text += echoed[i];
        }
    }
    run_scenario(parse_config(text), dir2);
    CHECK(slurp(dir1 / "propagate_co.csv") == slurp(dir2 / "propagate_co.csv"));
}

TEST_CASE("sweep manifest echo re-runs the whole sweep") {
    const fs::path dir1 = fresh_dir("sweep_echo1");
    const fs::path dir2 = fresh_dir("sweep_echo2");
    ScenarioConfig cfg = parse_config(
        "scenario = custom-sweep\n"
        "base_scenario = susceptibility-sweep\n"
        "delta1_points = 11\n"
        "sweep_axis = delta_r\n"
        "sweep_values = 0 gamma, -5 gamma\n");
    const RunManifest m = run_scenario(cfg, dir1);
    const ScenarioConfig echoed = parse_config(m.config_echo);
    CHECK(echoed.kind == ScenarioKind::custom_sweep);
    REQUIRE(echoed.sweep_values.size() == 2);
    run_scenario(echoed, dir2);
    CHECK(slurp(dir1 / "susceptibility_sweep.csv") ==
          slurp(dir2 / "susceptibility_sweep.csv"));
}

TEST_CASE("physics aborts surface in the manifest and exit code") {
    const fs::path dir = fresh_dir("abort");
    ScenarioConfig cfg = parse_config(
        "scenario = propagate-counter\n"
        "delta1 = -2 gamma\n"
        "delta2 = 2 gamma\n"
        "a = 0.58 sigma\n"
        "step_frac = 0.01\n");
    const RunManifest m = run_scenario(cfg, dir);
    CHECK(m.exit_code == kExitPhysicsAbort);
    CHECK(m.status == "superluminal_abort");
    CHECK(fs::exists(dir / "propagate_counter.csv"));  // partial output kept
}

TEST_CASE("sweep output is identical under a thread cap") {
    const fs::path dir1 = fresh_dir("threads1");
    const fs::path dir2 = fresh_dir("threads2");
    ScenarioConfig cfg = parse_config(
        "scenario = propagate-counter\n"
        "step_frac = 0.02\n"
        "L = 3 sigma\n");
    const std::vector<double> values = {1.0 * cfg.sigma, 1.5 * cfg.sigma};
    sweep(cfg, "a", values, dir1);
    setenv("RYDXPM_THREADS", "1", 1);
    sweep(cfg, "a", values, dir2);
    unsetenv("RYDXPM_THREADS");
    for (const char* f : {"propagate_counter_a0.csv", "propagate_counter_a1.csv",
                          "propagate_counter_sweep.csv"}) {
        CHECK(slurp(dir1 / f) == slurp(dir2 / f));
    }
}

TEST_CASE("presets are complete and parse cleanly") {
    REQUIRE(presets().size() == 7);
    for (const Preset& p : presets()) {
        const ScenarioConfig cfg = parse_config(p.config_text);
        (void)cfg;
        CHECK_FALSE(p.description.empty());
    }
    CHECK(find_preset("pulse-motion").id == "pulse-motion");
    CHECK_THROWS_AS(find_preset("nope"), std::invalid_argument);
}

TEST_CASE("phase map export writes the dense grid") {
    const fs::path dir = fresh_dir("phase_map");
    ScenarioConfig cfg = parse_config(
        "scenario = xpm\n"
        "L_min = 3 sigma\n"
        "L_max = 3 sigma\n"
        "L_points = 1\n"
        "step_frac = 0.02\n"
        "export_phase_map = on\n");
    const RunManifest m = run_scenario(cfg, dir);
    CHECK(m.exit_code == kExitClean);
    const auto rows = read_rows(dir / "phase_map.csv");
    CHECK(rows.size() == static_cast<std::size_t>(cfg.grid_n) * cfg.grid_n);
}
