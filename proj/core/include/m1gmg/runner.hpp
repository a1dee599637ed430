#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "m1gmg/constants.hpp"

namespace m1gmg {

/// Flat key = value run configuration. Every key can also be passed on the
/// command line as --key value; flags override the file, which overrides the
/// defaults below.
struct RunConfig {
    std::string problem = "beam";   ///< beam | riemann
    std::string solver = "gmg";     ///< explicit | jacobi | gmg
    int nx = 128;
    int ny = 128;
    double cfl = 2000.0;            ///< time step in units of h / c
    int l_max = 4;                  ///< multigrid depth (1 = plain Jacobi)
    int nu0 = 3;
    int nul = 1;
    int nu_coarse = 2;
    int pseudo_m = 3;
    double dtau_im0 = 1e-3;
    double eps_outer = 1e-2;
    double eps_jacobi = 1e-6;
    double eps_i = 1e-3;
    double eps_d = 1e-6;
    int max_cycles = 100000;
    int max_iters = 200000;
    std::string bc = "default";     ///< riemann only: periodic | zero-gradient
    std::string output_dir = "out";
    double c = 2.99792458e10;
    double a_r = 7.5657e-15;
    int threads = 1;
    double t_final = 1e-11;
    double safety = 0.9;

    PhysicalConstants constants() const { return {c, a_r}; }
};

using KeyValue = std::pair<std::string, std::string>;

/// Parses `text` (lines of key = value, # comments) over the defaults, then
/// applies `overrides`. Unknown keys and malformed values raise ConfigError
/// naming the key and line. Validates ranges and grid divisibility.
RunConfig parse_config(const std::string& text, const std::vector<KeyValue>& overrides = {});

RunConfig parse_config_file(const std::string& path, const std::vector<KeyValue>& overrides = {});

/// All keys with their default values, one per line, in config file syntax.
std::string list_defaults();

/// Outcome of one CLI run. Everything needed to judge success plus the
/// throughput and memory accounting.
struct RunReport {
    bool tolerances_met = false;
    int steps = 0;
    std::int64_t iterations_or_cycles = 0;
    double final_residual = 0.0;  ///< normalized, last solve
    double max_conservation_error = 0.0;
    double wall_seconds = 0.0;
    double cell_updates_per_second = 0.0;
    std::uint64_t cell_updates = 0;
    std::uint64_t subcycle_aborts = 0;
    std::size_t field_bytes = 0;

    std::string to_text() const;
};

/// Executes the configured problem/solver, writing snapshot.csv, residual.csv,
/// conservation.csv (periodic runs), cut.csv (beam) and report.txt into
/// cfg.output_dir.
RunReport run(const RunConfig& cfg);

}  // namespace m1gmg
