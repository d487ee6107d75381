// Command-line front end: run / sweep / presets.
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "rydxpm/errors.hpp"
#include "rydxpm/scenario.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read config file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

rydxpm::ScenarioConfig load_config(const std::string& config_path,
                                   const std::string& preset_id,
                                   double step_frac_override) {
    std::string text;
    if (!preset_id.empty()) {
        text = rydxpm::find_preset(preset_id).config_text;
        if (!config_path.empty()) {
            throw std::runtime_error("--config and --preset are mutually exclusive");
        }
    } else if (!config_path.empty()) {
        text = read_file(config_path);
    }
    rydxpm::ScenarioConfig cfg = rydxpm::parse_config(text);
    if (step_frac_override > 0.0) cfg.step_frac = step_frac_override;
    return cfg;
}

void print_manifest_summary(const rydxpm::RunManifest& m) {
    std::cout << "scenario: " << m.scenario << "\n";
    std::cout << "status: " << m.status << "\n";
    for (const rydxpm::OutputFile& f : m.outputs) {
        std::cout << "wrote " << f.file << " (" << f.rows << " rows)\n";
    }
    for (const std::string& n : m.notes) std::cout << "note: " << n << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    // --seedless is reserved and never takes a value, not even its own.
    for (int i = 1; i < argc; ++i) {
        if (std::string(argv[i]).rfind("--seedless=", 0) == 0) {
            std::cerr << "error: --seedless takes no value\n";
            return rydxpm::kExitParseError;
        }
    }

    CLI::App app{"rydxpm: interacting slow-light pulse pair simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::string preset_id;
    std::string out_dir = "out";
    double step_frac = 0.0;
    bool seedless = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "configuration file");
        cmd->add_option("--preset", preset_id, "named preset id");
        cmd->add_option("--out", out_dir, "output directory")->capture_default_str();
        cmd->add_option("--step-frac", step_frac,
                        "override the grid step (fraction of sigma)");
        // Reserved: the simulator is deterministic and uses no randomness.
        cmd->add_flag("--seedless", seedless, "reserved; no RNG exists anywhere")
            ->disable_flag_override();
    };

    CLI::App* run_cmd = app.add_subcommand("run", "run one scenario");
    add_common(run_cmd);

    CLI::App* sweep_cmd = app.add_subcommand("sweep", "re-run a scenario per value");
    add_common(sweep_cmd);
    std::string axis;
    std::string values_text;
    sweep_cmd->add_option("--axis", axis, "config key to vary")->required();
    sweep_cmd->add_option("--values", values_text,
                          "comma-separated 'value unit' list")->required();

    CLI::App* presets_cmd = app.add_subcommand("presets", "preset utilities");
    CLI::App* list_cmd = presets_cmd->add_subcommand("list", "list preset ids");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : rydxpm::kExitParseError;
    }

    try {
        if (run_cmd->parsed()) {
            const rydxpm::ScenarioConfig cfg =
                load_config(config_path, preset_id, step_frac);
            const rydxpm::RunManifest m = rydxpm::run_scenario(cfg, out_dir);
            print_manifest_summary(m);
            return m.exit_code;
        }
        if (sweep_cmd->parsed()) {
            rydxpm::ScenarioConfig cfg = load_config(config_path, preset_id, step_frac);
            if (cfg.kind == rydxpm::ScenarioKind::custom_sweep) {
                cfg.kind = cfg.base_kind;
            }
            const std::vector<double> values =
                rydxpm::parse_axis_values(cfg, axis, values_text);
            const rydxpm::RunManifest m = rydxpm::sweep(cfg, axis, values, out_dir);
            print_manifest_summary(m);
            return m.exit_code;
        }
        if (presets_cmd->parsed()) {
            if (!list_cmd->parsed()) {
                std::cerr << "usage: rydxpm presets list\n";
                return rydxpm::kExitParseError;
            }
            for (const rydxpm::Preset& p : rydxpm::presets()) {
                std::printf("%-22s %s\n", p.id.c_str(), p.description.c_str());
            }
            return 0;
        }
    } catch (const rydxpm::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return rydxpm::kExitParseError;
    } catch (const rydxpm::AccuracyError& e) {
        std::cerr << "accuracy failure: " << e.what() << "\n";
        return rydxpm::kExitAccuracyFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
