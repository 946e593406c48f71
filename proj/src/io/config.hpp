#pragma once

#include <map>
#include <memory>
#include <string>

#include "core/grid.hpp"
#include "ns/stepper.hpp"
#include "solvers/poisson.hpp"

namespace nsbench {

enum class CaseKind { Cavity, Chamber, PoissonMms };

const char* case_name(CaseKind k);
CaseKind case_from_name(const std::string& name);

/// Everything a run, race or sweep needs, with defaults mirroring the
/// reference cavity setup: v_w = 1, dt = sigma * Re * dx^2, 100000 cycles,
/// snapshots every 500 cycles.
struct CaseConfig {
    CaseKind kind = CaseKind::Cavity;
    double lx = 1.0, ly = 1.0;
    int nx = 60, ny = 60;
    double re = 100.0;
    double vw = 1.0;
    double dt = 0.0; // 0 = derive from sigma
    double sigma = 0.0025;
    long cycles = 100000;
    long anim_freq = 500;

    SolverConfig solver;
    std::string solvers; // comma list for race/sweep; empty = all methods
    double omega_start = 1.0, omega_stop = 1.95, omega_step = 0.05;
    int repetitions = 3;

    std::string out_dir = ".";
    std::string mask_path;
    int monitor_i = 0, monitor_j = 0; // 1-based over the full grid; 0 = centre/quarter default
    bool force = false;
    bool paper_code_compat = false;
    bool until_steady = false;
    double steady_eps = 1e-6;
    long steady_window = 500;

    friend bool operator==(const CaseConfig&, const CaseConfig&) = default;
};

/// Parses and validates a key=value map; errors name the offending key.
CaseConfig load_config(const std::map<std::string, std::string>& kv);

/// Canonical full-precision key=value form; load_config(serialize(c)) == c.
std::map<std::string, std::string> serialize(const CaseConfig& c);

void save_config_file(const CaseConfig& c, const std::string& path);
CaseConfig load_config_file(const std::string& path);
std::map<std::string, std::string> read_config_file(const std::string& path);

/// Grid, boundary conditions and step parameters resolved from a config.
struct ResolvedCase {
    CaseConfig cfg;
    std::shared_ptr<StaggeredGrid> grid;
    BoundarySpec bcs;
    TimeStepParams params;
    int monitor_i = 0, monitor_j = 0; // zero-based
    long active_cells = 0;
};

/// Builds the case. Refuses a time step beyond the explicit-step bound
/// unless cfg.force is set.
ResolvedCase resolve_case(const CaseConfig& cfg);

/// Masked rectangle at 0.25 m spacing with a one-cell inlet gap high on the
/// left wall and a one-cell outlet gap low on the right wall.
ResolvedCase build_chamber_case(const CaseConfig& cfg);

} // namespace nsbench
