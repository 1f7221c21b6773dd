#pragma once
// Command implementations behind the CLI: configuration record, state-spec
// parsing, and the data-emitting subcommands.
//
// Exit codes: 0 success, 2 usage/config error, 3 numerical failure.

#include <string>
#include <vector>

#include "mlgosc/io.hpp"

namespace mlgosc {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;

struct RunConfig {
    std::string command;          // correlator | inequalities | optimize | dwell | gaussian-table
    std::string coupling = "delta";      // "delta" or "gaussian:SIGMA"
    double omega = 1.0;
    std::string state = "fock:0";        // fock:n | coherent:x0,p0 | pstate:n
    std::string family = "stat3";        // mlg3 | mlg4 | stat3 | stat4 | lg2
    double grid_min = 0.0;               // omega*tau grid (endpoints included)
    double grid_max = 6.283185307179586;
    int grid_points = 200;
    int max_level = 40;
    double tail_tol = 1e-8;
    double sigma = 0.5;                  // gaussian-table only
    double domain_half_width = 4.0;      // optimizer box half width
    int domain_grid = 41;
    std::string dwell_method = "spectral";  // spectral | windowpi
    bool oscillatory = false;            // correlator: add oscillatory-part column
    bool map_standard = false;           // correlator: add mapped standard correlator
    std::string output;                  // output path, "-" = stdout
    std::string format = "csv";          // csv | json

    // key=value serialization; round-trips unchanged.
    std::string to_key_values() const;
    static RunConfig from_key_values(const std::string& text);
};

CouplingSpec parse_coupling(const std::string& text);
StateVector parse_state(const std::string& text, const OscillatorConfig& config);
Family parse_family(const std::string& text);

int cmd_correlator(const RunConfig& config, std::ostream& err);
int cmd_inequalities(const RunConfig& config, std::ostream& err);
int cmd_optimize(const RunConfig& config, std::ostream& err);
int cmd_dwell(const RunConfig& config, std::ostream& err);
int cmd_gaussian_table(const RunConfig& config, std::ostream& err);

int run_command(const RunConfig& config, std::ostream& err);

}  // namespace mlgosc
