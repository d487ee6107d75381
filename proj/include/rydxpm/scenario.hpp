// Scenario orchestration: dispatches a parsed configuration to the physics
// modules, writes deterministic CSV outputs plus a JSON run manifest, fans
// parameter sweeps out across OpenMP threads (capped by RYDXPM_THREADS),
// and holds the named presets.
#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "rydxpm/config.hpp"

namespace rydxpm {

inline constexpr const char* kLibraryVersion = "0.1.0";

/// Exit codes shared by the library-level runs and the command-line tool.
enum ExitCode : int {
    kExitClean = 0,
    kExitParseError = 2,
    kExitPhysicsAbort = 3,
    kExitAccuracyFailure = 4,
};

struct ColumnSchema {
    std::string name;
    std::string description;
};

struct OutputFile {
    std::string file;
    std::vector<ColumnSchema> columns;
    long rows = 0;
};

struct RunManifest {
    std::string version = kLibraryVersion;
    std::string scenario;
    std::string status = "completed";  // completed | superluminal_abort |
                                       // extinction_abort | accuracy_error
    int exit_code = kExitClean;
    double wall_time_s = 0.0;
    std::string config_echo;           // canonical, re-parseable
    std::vector<OutputFile> outputs;
    std::vector<std::string> notes;    // convergence flags, abort reasons, ...

    std::string to_json() const;
};

/// Runs one scenario, writing its data files and manifest.json into out_dir
/// (created if absent). Physics aborts are recorded in the manifest with the
/// partial outputs kept; they do not throw.
RunManifest run_scenario(const ScenarioConfig& cfg,
                         const std::filesystem::path& out_dir);

/// Re-runs the base scenario once per axis value, one output set per value
/// plus a combined long-format file. Values run concurrently (one thread per
/// value, capped by RYDXPM_THREADS); a failing value does not abort its
/// siblings. Output is deterministic regardless of the thread count.
RunManifest sweep(const ScenarioConfig& cfg, const std::string& axis,
                  const std::vector<double>& values_si,
                  const std::filesystem::path& out_dir);

struct Preset {
    std::string id;
    std::string description;
    std::string config_text;
};

const std::vector<Preset>& presets();

/// Throws std::invalid_argument for an unknown id.
const Preset& find_preset(const std::string& id);

}  // namespace rydxpm
