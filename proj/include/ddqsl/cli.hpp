#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ddqsl::cli {

enum class Command {
    population_trace,   // P(t) over [0, tau] for one or more pulse counts
    qslt_sweep,         // speed-limit time vs pulse count
    population_sweep,   // final population vs pulse count
    nonmarkov_sweep,    // backflow components vs pulse count
    verify,             // analytic path vs integrator, closed form vs dense
};

// Raw command-line surface: empty optionals mean "not given on the command
// line", so config-file values know where they may apply (flags win).
struct Options {
    Command command = Command::verify;
    std::optional<double> gamma0;
    std::optional<double> lambda;
    std::optional<double> tau;
    std::optional<int> n;
    std::optional<int> n_max;
    std::optional<int> grid;
    std::optional<std::string> preset;
    std::optional<std::string> out;
    std::optional<std::string> config_path;
    bool inject_wrong_sign = false;
};

// Fully resolved, validated run parameters.
struct RunConfig {
    Command command = Command::verify;
    std::vector<double> gamma0_series;  // one entry; two for two-regime presets
    double lambda = 1.0;
    double tau = 10.0;
    std::vector<int> trace_ns;  // population-trace: one trace per entry
    int n_min = 0;              // sweeps: inclusive pulse-count range
    int n_max = 25;
    int grid = 1000;   // time steps per trace / verification grid points
    std::string out;   // output path; empty writes to stdout
    bool per_trace_files = false;  // append _n{k} before the extension per trace
    bool inject_wrong_sign = false;  // verify negative control: freeze the
                                     // integrator's pulse coupling
};

// Parse a flat key = value config file ('#' comments and blank lines
// allowed).  Returns the raw pairs; resolve() decides which apply.
std::map<std::string, std::string> parse_config_file(const std::string& path);

// Fold config-file values into unset options, expand the preset, fill
// defaults, and validate cross-field rules (preset/command pairing, preset
// parameter conflicts, non-empty ranges, required output paths).
RunConfig resolve(const Options& opts);

// Decimal form used for every CSV cell: up to 17 significant digits, enough
// to reproduce the double exactly, independent of locale.
std::string csv_number(double v);

// Execute the resolved command.  Returns the process exit code: 0 on
// success, 2 on a verification breach.  Validation problems and I/O failures
// are reported by exception (ValidationError family -> exit 1, IoError ->
// exit 3, mapped by the binary's main).
int run(const RunConfig& cfg);

}  // namespace ddqsl::cli
