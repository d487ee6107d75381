#include "rydxpm/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <sstream>
#include <stdexcept>

#include "rydxpm/errors.hpp"
#include "rydxpm/units.hpp"

namespace rydxpm {

namespace {

enum class Dim {
    rate,             // gamma | MHz | GHz | rad/s
    rate_absolute,    // MHz | GHz | rad/s (the reference rate itself)
    length,           // um | nm | m | sigma
    length_absolute,  // um | nm | m (the reference length itself)
    velocity,         // m/s
    scalar,           // unitless
    c6coef,           // GHz_um6
    integer,
    boolean,
    token,
    value_list,
};

struct RawEntry {
    std::string value;
    std::string unit;
    int line = 0;
    int column = 0;
};

const std::map<std::string, Dim>& key_table() {
    static const std::map<std::string, Dim> table = {
        {"scenario", Dim::token},
        {"base_scenario", Dim::token},
        {"geometry", Dim::token},
        {"gamma", Dim::rate_absolute},
        {"omega_c", Dim::rate},
        {"delta1", Dim::rate},
        {"delta2", Dim::rate},
        {"gamma_rg", Dim::rate},
        {"chi_amp", Dim::rate},
        {"delta_r", Dim::rate},
        {"delta_r_min", Dim::rate},
        {"delta_r_max", Dim::rate},
        {"delta1_min", Dim::rate},
        {"delta1_max", Dim::rate},
        {"g2n_ratio", Dim::scalar},
        {"lambda_p", Dim::length_absolute},
        {"c6", Dim::c6coef},
        {"c6_convention", Dim::token},
        {"sigma", Dim::length_absolute},
        {"a", Dim::length},
        {"L", Dim::length},
        {"L_min", Dim::length},
        {"L_max", Dim::length},
        {"step_frac", Dim::scalar},
        {"vg_scale", Dim::scalar},
        {"target_vg", Dim::velocity},
        {"grid_n", Dim::integer},
        {"delta1_points", Dim::integer},
        {"delta_r_points", Dim::integer},
        {"L_points", Dim::integer},
        {"feedback", Dim::boolean},
        {"absorption", Dim::boolean},
        {"export_phase_map", Dim::boolean},
        {"response_mode", Dim::token},
        {"sweep_axis", Dim::token},
        {"sweep_values", Dim::value_list},
    };
    return table;
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& tok, int line, int col) {
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end == tok.c_str() || *end != '\0' || !std::isfinite(v)) {
        throw ParseError("expected a number, got '" + tok + "'", line, col);
    }
    return v;
}

double resolve_rate(double v, const std::string& unit, double gamma, bool allow_gamma,
                    int line, int col) {
    if (unit == "gamma") {
        if (!allow_gamma) {
            throw ParseError("the reference rate cannot be given in units of itself",
                             line, col);
        }
        return v * gamma;
    }
    if (unit == "MHz") return units::mhz_to_rad_per_s(v);
    if (unit == "GHz") return units::ghz_to_rad_per_s(v);
    if (unit == "rad/s") return v;
    throw ParseError("expected a rate unit (gamma|MHz|GHz|rad/s), got '" + unit + "'",
                     line, col);
}

double resolve_length(double v, const std::string& unit, double sigma,
                      bool allow_sigma, int line, int col) {
    if (unit == "sigma") {
        if (!allow_sigma) {
            throw ParseError("the reference length cannot be given in units of itself",
                             line, col);
        }
        return v * sigma;
    }
    if (unit == "um") return v * units::micrometer;
    if (unit == "nm") return v * units::nanometer;
    if (unit == "m") return v;
    throw ParseError("expected a length unit (um|nm|m|sigma), got '" + unit + "'",
                     line, col);
}

double resolve_value(Dim dim, const std::string& value, const std::string& unit,
                     double gamma, double sigma, int line, int col) {
    const double v = parse_number(value, line, col);
    switch (dim) {
        case Dim::rate:
            if (unit.empty()) {
                throw ParseError("rate values require a unit", line, col);
            }
            return resolve_rate(v, unit, gamma, true, line, col);
        case Dim::rate_absolute:
            if (unit.empty()) {
                throw ParseError("rate values require a unit", line, col);
            }
            return resolve_rate(v, unit, gamma, false, line, col);
        case Dim::length:
            if (unit.empty()) {
                throw ParseError("length values require a unit", line, col);
            }
            return resolve_length(v, unit, sigma, true, line, col);
        case Dim::length_absolute:
            if (unit.empty()) {
                throw ParseError("length values require a unit", line, col);
            }
            return resolve_length(v, unit, sigma, false, line, col);
        case Dim::velocity:
            if (unit != "m/s") {
                throw ParseError("expected velocity unit m/s, got '" + unit + "'",
                                 line, col);
            }
            return v;
        case Dim::c6coef:
            if (unit != "GHz_um6") {
                throw ParseError("expected unit GHz_um6, got '" + unit + "'", line,
                                 col);
            }
            return v;
        case Dim::scalar:
            if (!unit.empty()) {
                throw ParseError("'" + unit + "' given for a unitless value", line,
                                 col);
            }
            return v;
        default:
            throw ParseError("internal: resolve_value on non-numeric key", line, col);
    }
}

ScenarioKind parse_scenario_kind(const std::string& tok, int line, int col) {
    if (tok == "susceptibility-sweep") return ScenarioKind::susceptibility_sweep;
    if (tok == "blockade-sweep") return ScenarioKind::blockade_sweep;
    if (tok == "propagate-counter") return ScenarioKind::propagate_counter;
    if (tok == "propagate-co") return ScenarioKind::propagate_co;
    if (tok == "xpm") return ScenarioKind::xpm;
    if (tok == "slow-pass") return ScenarioKind::slow_pass;
    if (tok == "custom-sweep") return ScenarioKind::custom_sweep;
    throw ParseError("unknown scenario '" + tok + "'", line, col);
}

bool parse_bool(const std::string& tok, int line, int col) {
    if (tok == "on" || tok == "true") return true;
    if (tok == "off" || tok == "false") return false;
    throw ParseError("expected on|off|true|false, got '" + tok + "'", line, col);
}

int parse_int(const std::string& tok, int line, int col) {
    char* end = nullptr;
    const long v = std::strtol(tok.c_str(), &end, 10);
    if (end == tok.c_str() || *end != '\0') {
        throw ParseError("expected an integer, got '" + tok + "'", line, col);
    }
    return static_cast<int>(v);
}

struct AxisInfo {
    Dim dim;
    double ScenarioConfig::* field;
};

const std::map<std::string, AxisInfo>& axis_table() {
    static const std::map<std::string, AxisInfo> table = {
        {"a", {Dim::length, &ScenarioConfig::a}},
        {"sigma", {Dim::length_absolute, &ScenarioConfig::sigma}},
        {"L", {Dim::length, &ScenarioConfig::L}},
        {"c6", {Dim::c6coef, &ScenarioConfig::c6_ghz_um6}},
        {"delta_r", {Dim::rate, &ScenarioConfig::delta_r}},
        {"delta1", {Dim::rate, &ScenarioConfig::delta1}},
        {"delta2", {Dim::rate, &ScenarioConfig::delta2}},
        {"omega_c", {Dim::rate, &ScenarioConfig::omega_c}},
        {"gamma_rg", {Dim::rate, &ScenarioConfig::gamma_rg}},
        {"chi_amp", {Dim::rate, &ScenarioConfig::chi_amp}},
        {"step_frac", {Dim::scalar, &ScenarioConfig::step_frac}},
        {"vg_scale", {Dim::scalar, &ScenarioConfig::vg_scale}},
        {"target_vg", {Dim::velocity, &ScenarioConfig::target_vg}},
    };
    return table;
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void validate_config(const ScenarioConfig& c,
                     const std::map<std::string, RawEntry>& raw) {
    auto fail = [&](const std::string& key, const std::string& msg) {
        auto it = raw.find(key);
        const int line = it == raw.end() ? 0 : it->second.line;
        const int col = it == raw.end() ? 0 : it->second.column;
        throw ParseError(key + " " + msg, line, col);
    };
    if (!(c.gamma > 0.0)) fail("gamma", "must be positive");
    if (!(c.sigma > 0.0)) fail("sigma", "must be positive");
    if (!(c.lambda_p > 0.0)) fail("lambda_p", "must be positive");
    if (c.omega_c < 0.0) fail("omega_c", "must be >= 0");
    if (c.gamma_rg < 0.0) fail("gamma_rg", "must be >= 0");
    if (c.g2n_ratio < 0.0) fail("g2n_ratio", "must be >= 0");
    if (c.chi_amp < 0.0) fail("chi_amp", "must be >= 0");
    if (c.c6_ghz_um6 < 0.0) fail("c6", "must be >= 0");
    if (c.a < 0.0) fail("a", "must be >= 0");
    if (!(c.L > 0.0)) fail("L", "must be positive");
    if (!(c.step_frac > 0.0 && c.step_frac <= 0.1)) {
        fail("step_frac", "must be in (0, 0.1]");
    }
    if (!(c.target_vg > 0.0 && c.target_vg <= units::c_light)) {
        fail("target_vg", "must be in (0, c]");
    }
    if (!(c.vg_scale > 0.0 && c.vg_scale <= 1.0)) {
        fail("vg_scale", "must be in (0, 1]");
    }
    if (c.grid_n < 41 || c.grid_n % 2 == 0) fail("grid_n", "must be odd and >= 41");
    if (c.delta1_points < 2) fail("delta1_points", "must be >= 2");
    if (c.delta_r_points < 2) fail("delta_r_points", "must be >= 2");
    if (c.L_points < 1) fail("L_points", "must be >= 1");
    if (!(c.L_min > 0.0) || c.L_max < c.L_min) fail("L_min", "requires 0 < L_min <= L_max");
    if (c.kind == ScenarioKind::custom_sweep) {
        if (c.sweep_axis.empty()) fail("sweep_axis", "required for custom-sweep");
        if (c.sweep_values.empty()) fail("sweep_values", "required for custom-sweep");
        if (c.base_kind == ScenarioKind::custom_sweep) {
            fail("base_scenario", "cannot itself be custom-sweep");
        }
    }
    if (!c.sweep_axis.empty() && axis_table().find(c.sweep_axis) == axis_table().end()) {
        fail("sweep_axis", "'" + c.sweep_axis + "' is not sweepable");
    }
}

}  // namespace

std::string to_string(ScenarioKind kind) {
    switch (kind) {
        case ScenarioKind::susceptibility_sweep: return "susceptibility-sweep";
        case ScenarioKind::blockade_sweep: return "blockade-sweep";
        case ScenarioKind::propagate_counter: return "propagate-counter";
        case ScenarioKind::propagate_co: return "propagate-co";
        case ScenarioKind::xpm: return "xpm";
        case ScenarioKind::slow_pass: return "slow-pass";
        case ScenarioKind::custom_sweep: return "custom-sweep";
    }
    return "?";
}

std::string to_string(C6Convention convention) {
    return convention == C6Convention::angular ? "angular" : "ordinary";
}

std::string to_string(Geometry geometry) {
    return geometry == Geometry::counter ? "counter" : "co";
}

std::string to_string(ResponseMode mode) {
    return mode == ResponseMode::time_dependent ? "time-dependent" : "quasi-static";
}

SystemParams ScenarioConfig::system_params() const {
    SystemParams p{};
    p.gamma = gamma;
    p.gamma_rg = gamma_rg;
    p.omega_c = omega_c;
    p.delta1 = delta1;
    p.delta2 = delta2;
    p.g2n = g2n_ratio * omega_c * omega_c;
    p.chi_amp = chi_amp;
    p.lambda_p = lambda_p;
    return p;
}

InteractionParams ScenarioConfig::interaction_params() const {
    const double scale = (c6_convention == C6Convention::ordinary)
                             ? units::two_pi
                             : 1.0;
    return {c6_ghz_um6 * 1e9 * scale * units::um6, a};
}

SimOptions ScenarioConfig::sim_options() const {
    SimOptions o;
    o.feedback = feedback;
    o.absorption = absorption;
    o.response = response;
    return o;
}

ScenarioConfig default_config() {
    ScenarioConfig c;
    c.gamma = units::mhz_to_rad_per_s(5.75);
    c.omega_c = 2.0 * c.gamma;
    c.delta1 = 2.0 * c.gamma;
    c.delta2 = -2.0 * c.gamma;
    c.gamma_rg = 1e-3 * c.gamma;
    c.g2n_ratio = 0.75e7;
    c.chi_amp = 0.0;
    c.lambda_p = 795.0 * units::nanometer;  // Rb D1 line
    c.c6_ghz_um6 = 8500.0;
    c.c6_convention = C6Convention::angular;
    c.sigma = 11.1 * units::micrometer;
    c.a = 1.5 * c.sigma;
    c.L = 8.0 * c.sigma;
    c.step_frac = 0.005;
    c.target_vg = 10.0;
    c.vg_scale = 1e-3;
    c.grid_n = 41;
    c.delta_r = 0.0;
    c.delta1_min = -10.0 * c.gamma;
    c.delta1_max = 10.0 * c.gamma;
    c.delta1_points = 401;
    c.delta_r_min = -50.0 * c.gamma;
    c.delta_r_max = 0.0;
    c.delta_r_points = 201;
    c.L_min = 1.0 * c.sigma;
    c.L_max = 8.0 * c.sigma;
    c.L_points = 15;
    return c;
}

ScenarioConfig parse_config(const std::string& text) {
    std::map<std::string, RawEntry> raw;

    std::istringstream stream(text);
    std::string full_line;
    int line_no = 0;
    while (std::getline(stream, full_line)) {
        ++line_no;
        std::string line = full_line;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line = line.substr(0, hash);
        }
        if (trim(line).empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ParseError("expected 'key = value'", line_no, 1);
        }
        const std::string key = trim(line.substr(0, eq));
        if (key.empty()) throw ParseError("missing key", line_no, 1);
        if (key_table().find(key) == key_table().end()) {
            throw ParseError("unknown key '" + key + "'", line_no, 1);
        }
        if (raw.count(key)) {
            throw ParseError("duplicate key '" + key + "'", line_no, 1);
        }

        RawEntry entry;
        entry.line = line_no;
        const std::string rhs = trim(line.substr(eq + 1));
        const auto value_pos = line.find_first_not_of(" \t", eq + 1);
        entry.column = value_pos == std::string::npos
                           ? static_cast<int>(eq) + 2
                           : static_cast<int>(value_pos) + 1;
        if (rhs.empty()) throw ParseError("missing value", line_no, entry.column);

        if (key_table().at(key) == Dim::value_list) {
            entry.value = rhs;
        } else {
            const auto space = rhs.find_first_of(" \t");
            if (space == std::string::npos) {
                entry.value = rhs;
            } else {
                entry.value = rhs.substr(0, space);
                entry.unit = trim(rhs.substr(space + 1));
            }
        }
        raw.emplace(key, entry);
    }

    ScenarioConfig cfg = default_config();

    auto has = [&](const std::string& k) { return raw.count(k) != 0; };
    auto entry = [&](const std::string& k) -> const RawEntry& { return raw.at(k); };

    // Reference quantities first: other keys may be stated in their units.
    if (has("gamma")) {
        const RawEntry& e = entry("gamma");
        const double old_gamma = cfg.gamma;
        cfg.gamma = resolve_value(Dim::rate_absolute, e.value, e.unit, 0.0, 0.0,
                                  e.line, e.column);
        // Defaults tied to gamma follow it unless stated explicitly.
        const double r = cfg.gamma / old_gamma;
        cfg.omega_c *= r;
        cfg.delta1 *= r;
        cfg.delta2 *= r;
        cfg.gamma_rg *= r;
        cfg.delta1_min *= r;
        cfg.delta1_max *= r;
        cfg.delta_r_min *= r;
        cfg.delta_r_max *= r;
    }
    if (has("sigma")) {
        const RawEntry& e = entry("sigma");
        const double old_sigma = cfg.sigma;
        cfg.sigma = resolve_value(Dim::length_absolute, e.value, e.unit, 0.0, 0.0,
                                  e.line, e.column);
        const double r = cfg.sigma / old_sigma;
        cfg.a *= r;
        cfg.L *= r;
        cfg.L_min *= r;
        cfg.L_max *= r;
    }

    auto number = [&](const std::string& k, double& out) {
        if (!has(k)) return;
        const RawEntry& e = entry(k);
        out = resolve_value(key_table().at(k), e.value, e.unit, cfg.gamma, cfg.sigma,
                            e.line, e.column);
    };
    auto integer = [&](const std::string& k, int& out) {
        if (!has(k)) return;
        const RawEntry& e = entry(k);
        if (!e.unit.empty()) {
            throw ParseError("'" + e.unit + "' given for an integer value", e.line,
                             e.column);
        }
        out = parse_int(e.value, e.line, e.column);
    };
    auto boolean = [&](const std::string& k, bool& out) {
        if (!has(k)) return;
        const RawEntry& e = entry(k);
        out = parse_bool(e.value, e.line, e.column);
    };

    number("omega_c", cfg.omega_c);
    number("delta1", cfg.delta1);
    number("delta2", cfg.delta2);
    number("gamma_rg", cfg.gamma_rg);
    number("chi_amp", cfg.chi_amp);
    number("delta_r", cfg.delta_r);
    number("delta_r_min", cfg.delta_r_min);
    number("delta_r_max", cfg.delta_r_max);
    number("delta1_min", cfg.delta1_min);
    number("delta1_max", cfg.delta1_max);
    number("g2n_ratio", cfg.g2n_ratio);
    number("lambda_p", cfg.lambda_p);
    number("c6", cfg.c6_ghz_um6);
    number("a", cfg.a);
    number("L", cfg.L);
    number("L_min", cfg.L_min);
    number("L_max", cfg.L_max);
    number("step_frac", cfg.step_frac);
    number("vg_scale", cfg.vg_scale);
    number("target_vg", cfg.target_vg);
    integer("grid_n", cfg.grid_n);
    integer("delta1_points", cfg.delta1_points);
    integer("delta_r_points", cfg.delta_r_points);
    integer("L_points", cfg.L_points);
    boolean("feedback", cfg.feedback);
    boolean("absorption", cfg.absorption);
    boolean("export_phase_map", cfg.export_phase_map);

    if (has("scenario")) {
        const RawEntry& e = entry("scenario");
        cfg.kind = parse_scenario_kind(e.value, e.line, e.column);
    }
    if (has("base_scenario")) {
        const RawEntry& e = entry("base_scenario");
        cfg.base_kind = parse_scenario_kind(e.value, e.line, e.column);
    }
    if (has("geometry")) {
        const RawEntry& e = entry("geometry");
        if (e.value == "counter") {
            cfg.geometry = Geometry::counter;
        } else if (e.value == "co") {
            cfg.geometry = Geometry::co;
        } else {
            throw ParseError("expected counter|co, got '" + e.value + "'", e.line,
                             e.column);
        }
    }
    if (has("c6_convention")) {
        const RawEntry& e = entry("c6_convention");
        if (e.value == "angular") {
            cfg.c6_convention = C6Convention::angular;
        } else if (e.value == "ordinary") {
            cfg.c6_convention = C6Convention::ordinary;
        } else {
            throw ParseError("expected angular|ordinary, got '" + e.value + "'",
                             e.line, e.column);
        }
    }
    if (has("response_mode")) {
        const RawEntry& e = entry("response_mode");
        if (e.value == "time-dependent") {
            cfg.response = ResponseMode::time_dependent;
        } else if (e.value == "quasi-static") {
            cfg.response = ResponseMode::quasi_static;
        } else {
            throw ParseError("expected time-dependent|quasi-static, got '" + e.value +
                             "'", e.line, e.column);
        }
    }
    if (has("sweep_axis")) {
        cfg.sweep_axis = entry("sweep_axis").value;
    }
    if (has("sweep_values")) {
        const RawEntry& e = entry("sweep_values");
        if (cfg.sweep_axis.empty()) {
            throw ParseError("sweep_values requires sweep_axis", e.line, e.column);
        }
        if (axis_table().find(cfg.sweep_axis) == axis_table().end()) {
            throw ParseError("sweep_axis '" + cfg.sweep_axis + "' is not sweepable",
                             e.line, e.column);
        }
        cfg.sweep_values.clear();
        std::stringstream list(e.value);
        std::string item;
        while (std::getline(list, item, ',')) {
            item = trim(item);
            if (item.empty()) {
                throw ParseError("empty entry in sweep_values", e.line, e.column);
            }
            const auto space = item.find_first_of(" \t");
            const std::string val =
                space == std::string::npos ? item : item.substr(0, space);
            const std::string unit =
                space == std::string::npos ? "" : trim(item.substr(space + 1));
            cfg.sweep_values.push_back(
                resolve_value(axis_table().at(cfg.sweep_axis).dim, val, unit,
                              cfg.gamma, cfg.sigma, e.line, e.column));
        }
        if (cfg.sweep_values.empty()) {
            throw ParseError("sweep_values is empty", e.line, e.column);
        }
    }

    validate_config(cfg, raw);
    return cfg;
}

std::string echo_config(const ScenarioConfig& c) {
    std::ostringstream out;
    out << "# canonical echo; SI base units, exact round-trip\n";
    out << "scenario = " << to_string(c.kind) << "\n";
    out << "base_scenario = " << to_string(c.base_kind) << "\n";
    out << "geometry = " << to_string(c.geometry) << "\n";
    out << "gamma = " << fmt17(c.gamma) << " rad/s\n";
    out << "omega_c = " << fmt17(c.omega_c) << " rad/s\n";
    out << "delta1 = " << fmt17(c.delta1) << " rad/s\n";
    out << "delta2 = " << fmt17(c.delta2) << " rad/s\n";
    out << "gamma_rg = " << fmt17(c.gamma_rg) << " rad/s\n";
    out << "g2n_ratio = " << fmt17(c.g2n_ratio) << "\n";
    out << "chi_amp = " << fmt17(c.chi_amp) << " rad/s\n";
    out << "lambda_p = " << fmt17(c.lambda_p) << " m\n";
    out << "c6 = " << fmt17(c.c6_ghz_um6) << " GHz_um6\n";
    out << "c6_convention = " << to_string(c.c6_convention) << "\n";
    out << "sigma = " << fmt17(c.sigma) << " m\n";
    out << "a = " << fmt17(c.a) << " m\n";
    out << "L = " << fmt17(c.L) << " m\n";
    out << "step_frac = " << fmt17(c.step_frac) << "\n";
    out << "target_vg = " << fmt17(c.target_vg) << " m/s\n";
    out << "vg_scale = " << fmt17(c.vg_scale) << "\n";
    out << "grid_n = " << c.grid_n << "\n";
    out << "feedback = " << (c.feedback ? "on" : "off") << "\n";
    out << "absorption = " << (c.absorption ? "on" : "off") << "\n";
    out << "export_phase_map = " << (c.export_phase_map ? "on" : "off") << "\n";
    out << "response_mode = " << to_string(c.response) << "\n";
    out << "delta_r = " << fmt17(c.delta_r) << " rad/s\n";
    out << "delta1_min = " << fmt17(c.delta1_min) << " rad/s\n";
    out << "delta1_max = " << fmt17(c.delta1_max) << " rad/s\n";
    out << "delta1_points = " << c.delta1_points << "\n";
    out << "delta_r_min = " << fmt17(c.delta_r_min) << " rad/s\n";
    out << "delta_r_max = " << fmt17(c.delta_r_max) << " rad/s\n";
    out << "delta_r_points = " << c.delta_r_points << "\n";
    out << "L_min = " << fmt17(c.L_min) << " m\n";
    out << "L_max = " << fmt17(c.L_max) << " m\n";
    out << "L_points = " << c.L_points << "\n";
    if (!c.sweep_axis.empty()) {
        out << "sweep_axis = " << c.sweep_axis << "\n";
        out << "sweep_values = ";
        const std::string unit = [&] {
            switch (axis_table().at(c.sweep_axis).dim) {
                case Dim::rate: return " rad/s";
                case Dim::length:
                case Dim::length_absolute: return " m";
                case Dim::velocity: return " m/s";
                case Dim::c6coef: return " GHz_um6";
                default: return "";
            }
        }();
        for (std::size_t i = 0; i < c.sweep_values.size(); ++i) {
            if (i) out << ", ";
            out << fmt17(c.sweep_values[i]) << unit;
        }
        out << "\n";
    }
    return out.str();
}

ScenarioConfig with_axis_value(const ScenarioConfig& cfg, const std::string& axis,
                               double value_si) {
    const auto it = axis_table().find(axis);
    if (it == axis_table().end()) {
        throw std::invalid_argument("unknown sweep axis '" + axis + "'");
    }
    ScenarioConfig out = cfg;
    out.*(it->second.field) = value_si;
    return out;
}

std::vector<double> parse_axis_values(const ScenarioConfig& cfg,
                                      const std::string& axis,
                                      const std::string& list_text) {
    const auto it = axis_table().find(axis);
    if (it == axis_table().end()) {
        throw std::invalid_argument("unknown sweep axis '" + axis + "'");
    }
    std::vector<double> values;
    std::stringstream list(list_text);
    std::string item;
    while (std::getline(list, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        const auto space = item.find_first_of(" \t");
        const std::string val = space == std::string::npos ? item : item.substr(0, space);
        const std::string unit =
            space == std::string::npos ? "" : trim(item.substr(space + 1));
        values.push_back(
            resolve_value(it->second.dim, val, unit, cfg.gamma, cfg.sigma, 0, 0));
    }
    if (values.empty()) {
        throw std::invalid_argument("no values given for sweep axis '" + axis + "'");
    }
    return values;
}

}  // namespace rydxpm
