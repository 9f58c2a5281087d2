#pragma once

#include "kse/analysis.hpp"

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace kse::experiment {

using analysis::Complex;

enum class Mode { kSolve, kConvergeSpaceTime, kConvergeTime, kStability, kGreTable };

std::string to_string(Mode mode);
Mode parse_mode(std::string_view text);

/// A validated experiment description. Grid sizes are given either as node
/// counts (`n`) or spacings (`h`), never both.
struct ExperimentConfig {
    Mode mode = Mode::kSolve;
    int problem = 0;  // 0 only in stability mode
    std::vector<std::size_t> n;
    std::vector<double> h;
    std::vector<double> k;
    double final_time = 0.0;
    std::optional<double> beta;
    std::vector<double> times;  // explicit snapshot / GRE times
    double snapshot_every = 0.0;
    std::vector<Complex> y;
    analysis::Window window;
    std::size_t resolution = analysis::kDefaultScanResolution;
    std::string output;

    bool operator==(const ExperimentConfig&) const = default;
};

/// Invalid or inconsistent configuration; maps to exit code 2.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Output directory or file could not be written; maps to exit code 4.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parses a flat JSON object. Unknown keys are rejected.
ExperimentConfig parse_config(std::string_view text);
/// Canonical JSON text; parse_config(serialize_config(c)) == c.
std::string serialize_config(const ExperimentConfig& config);

/// Applies "key=value" on top of config text; value is JSON, or a bare
/// string if it does not parse as JSON.
std::string apply_overrides(std::string_view text, const std::vector<std::string>& assignments);

/// "-20i", "5i", "-2", "1-3i", "i".
Complex parse_complex(std::string_view text);
std::string format_complex(Complex y);

/// Built-in experiment configs, by name.
std::vector<std::string> preset_names();
ExperimentConfig preset(std::string_view name);

struct RunOutcome {
    int exit_code = 0;  // 0 ok, 3 numerical instability
    std::string report_json;
};

/// Runs the experiment and writes report.json, timings.json, table.csv and
/// field or stability CSVs into `out_dir`. On instability the partial report
/// is still written and exit_code is 3.
RunOutcome run(const ExperimentConfig& config, const std::filesystem::path& out_dir);

/// CLI exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitUnstable = 3;
inline constexpr int kExitIo = 4;

}  // namespace kse::experiment
