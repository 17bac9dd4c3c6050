#pragma once

#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "vlcsec/region.hpp"
#include "vlcsec/scenario.hpp"

namespace vlcsec {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SweepSpec {
    std::string variable;   // p | a | xi | ratio | alpha
    double start = 0.0;
    double stop = 0.0;
    int points = 0;
    bool db_scale = false;  // grid in dB (p and a only)
};

struct OutputSpec {
    std::string path;
    std::string format = "csv";
};

// Parsed and validated run configuration. Intensities are stored linearly;
// dB inputs are converted at parse time (value = 10^{dB/10}).
struct RunConfig {
    Scenario scenario;
    bool has_eve = false;
    std::string mode;       // "avg" | "peak"
    double xi = 0.0;
    double P = 0.0;
    double A = 0.0;         // peak mode only
    std::optional<SweepSpec> sweep;
    std::optional<FloorGrid> region;
    std::optional<OutputSpec> output;
};

struct CliOptions {
    bool shannon = false;
    double quad_tol = 1e-8;
    int threads = 1;
    std::optional<std::string> out;
    std::string format = "csv";
};

// Parses the INI-style configuration text (sections [scenario],
// [constraints], [sweep], [region], [output]); unknown keys, unit conflicts
// and constraint violations are rejected with line/field identification.
RunConfig parse_config(const std::string& text);

// Canonical text form; parse(serialize(cfg)) reproduces cfg exactly.
std::string serialize(const RunConfig& cfg);

// Conventional reference curve: 0.5 ln(1 + H_B^2 xi^2 P^2 / sigma_B^2),
// the Gaussian capacity of the main channel with the mean intensity taken
// as the signal amplitude. Emitted only on request and labeled as a
// convention.
double shannon_limit(double H_B, double xi, double P, double sigma_B);

int cmd_bounds(const RunConfig& cfg, const CliOptions& opt, std::ostream& out, std::ostream& err);
int cmd_sweep(const RunConfig& cfg, const CliOptions& opt, std::ostream& out, std::ostream& err);
int cmd_tables(const CliOptions& opt, std::ostream& out, std::ostream& err);
int cmd_region(const RunConfig& cfg, const CliOptions& opt, std::ostream& out, std::ostream& err);
int cmd_oracle(const RunConfig& cfg, const CliOptions& opt, std::ostream& out, std::ostream& err);

// Full argv-level entry point (subcommand + flags). Returns the process
// exit code: 0 success, 1 validation error, 2 numerical failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace vlcsec
