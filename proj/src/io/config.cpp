#include "io/config.hpp"

#include <cmath>
#include <fstream>
#include <json.hpp>

#include "core/errors.hpp"
#include "io/csv.hpp"

namespace nsbench {

const char* case_name(CaseKind k) {
    switch (k) {
    case CaseKind::Cavity: return "cavity";
    case CaseKind::Chamber: return "chamber";
    case CaseKind::PoissonMms: return "poisson-mms";
    }
    return "?";
}

CaseKind case_from_name(const std::string& name) {
    if (name == "cavity") return CaseKind::Cavity;
    if (name == "chamber") return CaseKind::Chamber;
    if (name == "poisson-mms" || name == "mms") return CaseKind::PoissonMms;
    throw ConfigError("unknown case '" + name + "' (valid: cavity, chamber, poisson-mms)");
}

namespace {

constexpr double kChamberSpacing = 0.25;

double to_double(const std::string& key, const std::string& v) {
    try {
        return parse_double(v);
    } catch (const IoError&) {
        throw ConfigError("key '" + key + "': cannot parse number '" + v + "'");
    }
}

long to_long(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        const long x = std::stol(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': cannot parse integer '" + v + "'");
    }
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw ConfigError("key '" + key + "': cannot parse boolean '" + v + "'");
}

std::pair<int, int> to_int_pair(const std::string& key, const std::string& v, char sep) {
    const auto pos = v.find(sep);
    if (pos == std::string::npos)
        throw ConfigError("key '" + key + "': expected two integers separated by '" +
                          std::string(1, sep) + "'");
    return {static_cast<int>(to_long(key, v.substr(0, pos))),
            static_cast<int>(to_long(key, v.substr(pos + 1)))};
}

} // namespace

CaseConfig load_config(const std::map<std::string, std::string>& kv) {
    if (!kv.count("case"))
        throw ConfigError("missing required key: case (one of cavity, chamber, poisson-mms)");

    CaseConfig c;
    c.kind = case_from_name(kv.at("case"));
    if (c.kind == CaseKind::Chamber) {
        c.lx = 6.25;
        c.ly = 4.25;
        c.nx = c.ny = 0; // derived from lengths and the fixed spacing
    } else if (c.kind == CaseKind::PoissonMms) {
        c.nx = c.ny = 33;
    }

    bool nx_set = false, ny_set = false;
    for (const auto& [key, value] : kv) {
        if (key == "case") continue;
        else if (key == "lx") c.lx = to_double(key, value);
        else if (key == "ly") c.ly = to_double(key, value);
        else if (key == "nx") { c.nx = static_cast<int>(to_long(key, value)); nx_set = true; }
        else if (key == "ny") { c.ny = static_cast<int>(to_long(key, value)); ny_set = true; }
        else if (key == "re") c.re = to_double(key, value);
        else if (key == "vw") c.vw = to_double(key, value);
        else if (key == "dt") c.dt = to_double(key, value);
        else if (key == "sigma") c.sigma = to_double(key, value);
        else if (key == "cycles") c.cycles = to_long(key, value);
        else if (key == "anim_freq") c.anim_freq = to_long(key, value);
        else if (key == "solver") c.solver.method = method_from_name(value);
        else if (key == "solvers") c.solvers = value;
        else if (key == "omega") c.solver.omega = to_double(key, value);
        else if (key == "tol") c.solver.tol = to_double(key, value);
        else if (key == "max_iter") c.solver.max_iter = to_long(key, value);
        else if (key == "norm") c.solver.norm = norm_from_name(value);
        else if (key == "mg_levels") c.solver.mg.levels = static_cast<int>(to_long(key, value));
        else if (key == "mg_smooth") {
            const auto [pre, post] = to_int_pair(key, value, ':');
            c.solver.mg.pre_smooth = pre;
            c.solver.mg.post_smooth = post;
        }
        else if (key == "mg_coarse_sweeps") c.solver.mg.coarse_sweeps = static_cast<int>(to_long(key, value));
        else if (key == "record_residuals") c.solver.record_residuals = to_bool(key, value);
        else if (key == "omega_sweep") {
            const auto p1 = value.find(':');
            const auto p2 = value.find(':', p1 == std::string::npos ? p1 : p1 + 1);
            if (p1 == std::string::npos || p2 == std::string::npos)
                throw ConfigError("key 'omega_sweep': expected start:stop:step");
            c.omega_start = to_double(key, value.substr(0, p1));
            c.omega_stop = to_double(key, value.substr(p1 + 1, p2 - p1 - 1));
            c.omega_step = to_double(key, value.substr(p2 + 1));
        }
        else if (key == "repetitions") c.repetitions = static_cast<int>(to_long(key, value));
        else if (key == "out_dir") c.out_dir = value;
        else if (key == "mask") c.mask_path = value;
        else if (key == "monitor") {
            const auto [mi, mj] = to_int_pair(key, value, ',');
            c.monitor_i = mi;
            c.monitor_j = mj;
        }
        else if (key == "force") c.force = to_bool(key, value);
        else if (key == "paper_code_compat") c.paper_code_compat = to_bool(key, value);
        else if (key == "until_steady") c.until_steady = to_bool(key, value);
        else if (key == "steady_eps") c.steady_eps = to_double(key, value);
        else if (key == "steady_window") c.steady_window = to_long(key, value);
        else throw ConfigError("unknown config key '" + key + "'");
    }
    if (c.kind == CaseKind::PoissonMms && nx_set && !ny_set) c.ny = c.nx;

    if (c.kind != CaseKind::Chamber) {
        if (c.nx < 1) throw ConfigError("key 'nx': need at least one interior cell");
        if (c.ny < 1) throw ConfigError("key 'ny': need at least one interior cell");
    }
    if (c.lx <= 0.0) throw ConfigError("key 'lx': must be positive");
    if (c.ly <= 0.0) throw ConfigError("key 'ly': must be positive");
    if (c.re <= 0.0) throw ConfigError("key 're': Reynolds number must be positive");
    if (c.dt < 0.0) throw ConfigError("key 'dt': must be positive");
    if (c.sigma <= 0.0 || c.sigma > 0.25)
        throw ConfigError("key 'sigma': safety factor must lie in (0, 0.25]");
    if (c.cycles < 0) throw ConfigError("key 'cycles': must be non-negative");
    if (c.anim_freq < 1) throw ConfigError("key 'anim_freq': must be at least 1");
    if (c.repetitions < 1) throw ConfigError("key 'repetitions': must be at least 1");
    if (c.omega_step <= 0.0) throw ConfigError("key 'omega_sweep': step must be positive");
    if (!(c.omega_start > 0.0 && c.omega_stop < 2.0 && c.omega_start <= c.omega_stop))
        throw ConfigError("key 'omega_sweep': range must lie inside (0,2)");
    if (c.steady_window < 1) throw ConfigError("key 'steady_window': must be at least 1");
    if (c.steady_eps <= 0.0) throw ConfigError("key 'steady_eps': must be positive");
    return c;
}

std::map<std::string, std::string> serialize(const CaseConfig& c) {
    std::map<std::string, std::string> kv;
    kv["case"] = case_name(c.kind);
    kv["lx"] = format_double(c.lx);
    kv["ly"] = format_double(c.ly);
    if (c.kind != CaseKind::Chamber || c.nx > 0) {
        kv["nx"] = std::to_string(c.nx);
        kv["ny"] = std::to_string(c.ny);
    }
    kv["re"] = format_double(c.re);
    kv["vw"] = format_double(c.vw);
    if (c.dt > 0.0) kv["dt"] = format_double(c.dt);
    kv["sigma"] = format_double(c.sigma);
    kv["cycles"] = std::to_string(c.cycles);
    kv["anim_freq"] = std::to_string(c.anim_freq);
    kv["solver"] = method_name(c.solver.method);
    if (!c.solvers.empty()) kv["solvers"] = c.solvers;
    kv["omega"] = format_double(c.solver.omega);
    kv["tol"] = format_double(c.solver.tol);
    kv["max_iter"] = std::to_string(c.solver.max_iter);
    kv["norm"] = norm_name(c.solver.norm);
    kv["mg_levels"] = std::to_string(c.solver.mg.levels);
    kv["mg_smooth"] = std::to_string(c.solver.mg.pre_smooth) + ":" + std::to_string(c.solver.mg.post_smooth);
    kv["mg_coarse_sweeps"] = std::to_string(c.solver.mg.coarse_sweeps);
    kv["record_residuals"] = c.solver.record_residuals ? "true" : "false";
    kv["omega_sweep"] = format_double(c.omega_start) + ":" + format_double(c.omega_stop) + ":" +
                        format_double(c.omega_step);
    kv["repetitions"] = std::to_string(c.repetitions);
    kv["out_dir"] = c.out_dir;
    if (!c.mask_path.empty()) kv["mask"] = c.mask_path;
    if (c.monitor_i > 0 || c.monitor_j > 0)
        kv["monitor"] = std::to_string(c.monitor_i) + "," + std::to_string(c.monitor_j);
    kv["force"] = c.force ? "true" : "false";
    kv["paper_code_compat"] = c.paper_code_compat ? "true" : "false";
    kv["until_steady"] = c.until_steady ? "true" : "false";
    kv["steady_eps"] = format_double(c.steady_eps);
    kv["steady_window"] = std::to_string(c.steady_window);
    return kv;
}

void save_config_file(const CaseConfig& c, const std::string& path) {
    nlohmann::json j;
    for (const auto& [k, v] : serialize(c))
        j[k] = v;
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot open " + path + " for writing");
    out << j.dump(2) << '\n';
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open config file " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("malformed config file " + path + ": " + e.what());
    }
    if (!j.is_object())
        throw ConfigError("config file " + path + " must hold a JSON object");
    std::map<std::string, std::string> kv;
    for (const auto& [k, v] : j.items()) {
        if (v.is_string()) kv[k] = v.get<std::string>();
        else kv[k] = v.dump();
    }
    return kv;
}

CaseConfig load_config_file(const std::string& path) {
    return load_config(read_config_file(path));
}

namespace {

ResolvedCase finish_resolve(CaseConfig cfg, std::shared_ptr<StaggeredGrid> grid, BoundarySpec bcs) {
    ResolvedCase rc;
    rc.cfg = std::move(cfg);
    rc.grid = std::move(grid);
    rc.bcs = bcs;

    rc.params.re = rc.cfg.re;
    rc.params.sigma = rc.cfg.sigma;
    rc.params.paper_code_compat = rc.cfg.paper_code_compat;
    rc.params.dt = rc.cfg.dt > 0.0
                       ? rc.cfg.dt
                       : rc.cfg.sigma * rc.cfg.re * rc.grid->dx * rc.grid->dx;

    const StabilityReport st = stability_check(rc.params, *rc.grid);
    if (!st.ok && !rc.cfg.force)
        throw ConfigError("key 'dt': time step ratio " + format_double(st.ratio) +
                          " exceeds the explicit-step bound " + format_double(st.limit) +
                          " (pass force to run anyway)");

    const int m = rc.grid->m, n = rc.grid->n;
    if (rc.cfg.monitor_i > 0 || rc.cfg.monitor_j > 0) {
        if (rc.cfg.monitor_i < 1 || rc.cfg.monitor_i > m || rc.cfg.monitor_j < 1 ||
            rc.cfg.monitor_j > n)
            throw ConfigError("key 'monitor': point outside the grid");
        rc.monitor_i = rc.cfg.monitor_i - 1;
        rc.monitor_j = rc.cfg.monitor_j - 1;
    } else {
        rc.monitor_i = static_cast<int>(std::lround(m / 2.0)) - 1;
        rc.monitor_j = static_cast<int>(std::lround(n / 4.0)) - 1;
    }
    rc.active_cells = rc.grid->active_count();
    return rc;
}

std::vector<std::string> load_mask_rows(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("key 'mask': cannot open file " + path);
    return read_mask_rows(in);
}

} // namespace

ResolvedCase build_chamber_case(const CaseConfig& cfg_in) {
    CaseConfig cfg = cfg_in;
    int nx = cfg.nx, ny = cfg.ny;
    if (nx <= 0 || ny <= 0) {
        const double fx = cfg.lx / kChamberSpacing;
        const double fy = cfg.ly / kChamberSpacing;
        nx = static_cast<int>(std::lround(fx));
        ny = static_cast<int>(std::lround(fy));
        if (nx < 3 || ny < 3 || std::fabs(fx - nx) > 1e-9 || std::fabs(fy - ny) > 1e-9)
            throw ConfigError("key 'lx'/'ly': chamber lengths must be multiples of the 0.25 spacing");
        cfg.nx = nx;
        cfg.ny = ny;
    }

    auto grid = std::make_shared<StaggeredGrid>(build_grid(cfg.lx, cfg.ly, nx, ny));
    if (!cfg.mask_path.empty()) {
        const auto rows = load_mask_rows(cfg.mask_path);
        try {
            apply_mask(*grid, rows);
        } catch (const ConfigError& e) {
            throw ConfigError("key 'mask': " + std::string(e.what()) +
                              " (mask is inconsistent with the grid spacing)");
        }
    } else {
        grid->cell(0, grid->n - 2) = CellType::Inlet;  // gap CA, top of the left wall
        grid->cell(grid->m - 1, 1) = CellType::Outlet; // gap BD, bottom of the right wall
    }

    BoundarySpec bcs; // no-slip walls; mask cells carry the inlet/outlet
    bcs.inflow_speed = cfg.vw;
    return finish_resolve(std::move(cfg), std::move(grid), bcs);
}

ResolvedCase resolve_case(const CaseConfig& cfg) {
    if (cfg.kind == CaseKind::Chamber)
        return build_chamber_case(cfg);

    auto grid = std::make_shared<StaggeredGrid>(build_grid(cfg.lx, cfg.ly, cfg.nx, cfg.ny));
    if (!cfg.mask_path.empty())
        apply_mask(*grid, load_mask_rows(cfg.mask_path));

    BoundarySpec bcs = BoundarySpec::cavity(cfg.vw);
    return finish_resolve(cfg, std::move(grid), bcs);
}

} // namespace nsbench
