// Scenario configuration: a documented key = value [unit] text format with
// unit validation at parse time, defaults for every key, and a canonical
// echo that reproduces the resolved values exactly.
//
// Example:
//   scenario = propagate-counter
//   gamma    = 5.75 MHz        # stored as an angular rate
//   delta1   = 2 gamma
//   sigma    = 11.1 um
//   a        = 1.5 sigma
//   L        = 8 sigma
//   c6       = 8500 GHz_um6
//
// Rates accept gamma | MHz | GHz | rad/s, lengths um | nm | m | sigma,
// velocities m/s. The echo emits SI base units so a re-parse reproduces
// every double bit-exactly.
#pragma once

#include <string>
#include <vector>

#include "rydxpm/atomic_response.hpp"
#include "rydxpm/interaction.hpp"
#include "rydxpm/pulse_dynamics.hpp"

namespace rydxpm {

enum class ScenarioKind {
    susceptibility_sweep,
    blockade_sweep,
    propagate_counter,
    propagate_co,
    xpm,
    slow_pass,
    custom_sweep,
};

enum class C6Convention {
    angular,   // the quoted GHz are an angular rate: c6 = value * 1e9 rad/s um^6
    ordinary,  // the quoted GHz are an ordinary frequency: multiply by 2 pi
};

std::string to_string(ScenarioKind kind);
std::string to_string(C6Convention convention);
std::string to_string(Geometry geometry);
std::string to_string(ResponseMode mode);

/// Fully resolved configuration; every dimensioned value is SI.
struct ScenarioConfig {
    ScenarioKind kind = ScenarioKind::propagate_counter;
    ScenarioKind base_kind = ScenarioKind::propagate_counter;  // custom-sweep target
    Geometry geometry = Geometry::counter;

    double gamma = 0.0;      // rad/s
    double omega_c = 0.0;    // rad/s
    double delta1 = 0.0;     // rad/s
    double delta2 = 0.0;     // rad/s
    double gamma_rg = 0.0;   // rad/s
    double g2n_ratio = 0.0;  // N g^2 / Omega_c^2
    double chi_amp = 0.0;    // rad/s; 0 requests calibration to target_vg
    double lambda_p = 0.0;   // m
    double c6_ghz_um6 = 0.0; // as stated in the config
    C6Convention c6_convention = C6Convention::angular;
    double sigma = 0.0;      // m
    double a = 0.0;          // m
    double L = 0.0;          // m
    double step_frac = 0.0;
    double target_vg = 0.0;  // m/s
    double vg_scale = 0.0;
    int grid_n = 0;
    bool feedback = true;
    bool absorption = true;
    bool export_phase_map = false;
    ResponseMode response = ResponseMode::quasi_static;
    double delta_r = 0.0;      // rad/s, susceptibility-sweep shift
    double delta1_min = 0.0, delta1_max = 0.0;  // rad/s
    int delta1_points = 0;
    double delta_r_min = 0.0, delta_r_max = 0.0;  // rad/s
    int delta_r_points = 0;
    double L_min = 0.0, L_max = 0.0;  // m
    int L_points = 0;

    std::string sweep_axis;             // empty when not sweeping
    std::vector<double> sweep_values;   // SI values for the axis

    SystemParams system_params() const;
    InteractionParams interaction_params() const;
    SimOptions sim_options() const;
};

/// All defaults resolved; equivalent to parsing an empty document.
ScenarioConfig default_config();

/// Parses and validates; throws ParseError with line/column on any problem.
ScenarioConfig parse_config(const std::string& text);

/// Canonical text form; parse(echo_config(c)) reproduces c exactly.
std::string echo_config(const ScenarioConfig& cfg);

/// Names a config field that sweep() may vary; throws std::invalid_argument
/// for unknown axes. Returns a copy with the axis set to the SI value.
ScenarioConfig with_axis_value(const ScenarioConfig& cfg, const std::string& axis,
                               double value_si);

/// Parses a comma-separated "value [unit]" list for the given axis.
std::vector<double> parse_axis_values(const ScenarioConfig& cfg,
                                      const std::string& axis,
                                      const std::string& list_text);

}  // namespace rydxpm
