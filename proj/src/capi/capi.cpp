#include "nsbench.h"

#include <cstring>
#include <map>
#include <string>

#include "bench/bench.hpp"
#include "core/errors.hpp"
#include "io/config.hpp"
#include "io/run.hpp"

using namespace nsbench;

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

template <typename Fn>
nsb_status guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const InvalidArgument& e) {
        set_error(e.what());
        return NSB_ERR_INVALID_ARGUMENT;
    } catch (const ConfigError& e) {
        set_error(e.what());
        return NSB_ERR_CONFIG;
    } catch (const IoError& e) {
        set_error(e.what());
        return NSB_ERR_IO;
    } catch (const SingularLine& e) {
        set_error(e.what());
        return NSB_ERR_SINGULAR;
    } catch (const InvalidHierarchy& e) {
        set_error(e.what());
        return NSB_ERR_CONFIG;
    } catch (const StepFailure& e) {
        set_error(e.what());
        return NSB_ERR_NO_CONVERGENCE;
    } catch (const std::exception& e) {
        set_error(e.what());
        return NSB_ERR_INTERNAL;
    } catch (...) {
        set_error("unknown failure");
        return NSB_ERR_INTERNAL;
    }
}

const std::map<std::string, std::string>& known_keys() {
    // probe values so immediate validation can reject bad key names early
    static const std::map<std::string, std::string> keys = serialize(CaseConfig{});
    return keys;
}

std::vector<SolverConfig> solver_list(const CaseConfig& cfg, bool sweepable_only) {
    std::vector<Method> methods;
    if (cfg.solvers.empty()) {
        if (sweepable_only)
            methods = {Method::Sor, Method::SlorA, Method::SlorB, Method::Adi};
        else
            methods = {Method::Jacobi, Method::GaussSeidel, Method::Sor, Method::SlorA,
                       Method::SlorB, Method::Adi, Method::Multigrid};
    } else {
        std::size_t pos = 0;
        while (pos <= cfg.solvers.size()) {
            const auto c = cfg.solvers.find(',', pos);
            const std::string name = cfg.solvers.substr(pos, c - pos);
            if (!name.empty()) methods.push_back(method_from_name(name));
            if (c == std::string::npos) break;
            pos = c + 1;
        }
        if (methods.empty())
            throw ConfigError("key 'solvers': no solver names given");
    }
    std::vector<SolverConfig> configs;
    for (Method m : methods) {
        SolverConfig sc = cfg.solver;
        sc.method = m;
        configs.push_back(sc);
    }
    return configs;
}

} // namespace

struct nsb_config {
    std::map<std::string, std::string> kv;
};

struct nsb_report {
    std::vector<nsb_report_row> rows;
    ComparisonReport race;            // filled by nsb_race
    std::vector<OmegaSweep> sweeps;   // filled by nsb_sweep_omega
};

extern "C" {

const char* nsb_status_name(nsb_status s) {
    switch (s) {
    case NSB_OK: return "ok";
    case NSB_ERR_INVALID_ARGUMENT: return "invalid-argument";
    case NSB_ERR_CONFIG: return "configuration-error";
    case NSB_ERR_IO: return "io-error";
    case NSB_ERR_SINGULAR: return "singular-line";
    case NSB_ERR_NO_CONVERGENCE: return "no-convergence";
    case NSB_ERR_INTERNAL: return "internal-error";
    }
    return "?";
}

const char* nsb_last_error(void) { return g_last_error.c_str(); }

nsb_status nsb_config_create(nsb_config** out) {
    return guarded([&] {
        if (!out) throw InvalidArgument("nsb_config_create: out is null");
        *out = new nsb_config();
        return NSB_OK;
    });
}

void nsb_config_free(nsb_config* c) { delete c; }

nsb_status nsb_config_set(nsb_config* c, const char* key, const char* value) {
    return guarded([&] {
        if (!c || !key || !value) throw InvalidArgument("nsb_config_set: null argument");
        const std::string k(key);
        if (k != "case" && !known_keys().count(k))
            throw ConfigError("unknown config key '" + k + "'");
        // surface bad enum values (solver/case/norm names) at set time
        if (k == "solver") method_from_name(value);
        if (k == "case") case_from_name(value);
        if (k == "norm") norm_from_name(value);
        c->kv[k] = value;
        return NSB_OK;
    });
}

nsb_status nsb_config_get(const nsb_config* c, const char* key, char* buf, size_t bufsz) {
    return guarded([&] {
        if (!c || !key || !buf || bufsz == 0)
            throw InvalidArgument("nsb_config_get: null argument");
        const auto it = c->kv.find(key);
        std::string v;
        if (it != c->kv.end()) {
            v = it->second;
        } else {
            const auto& defaults = known_keys();
            const auto dit = defaults.find(key);
            if (dit == defaults.end())
                throw ConfigError("unknown config key '" + std::string(key) + "'");
            v = dit->second;
        }
        if (v.size() + 1 > bufsz)
            throw InvalidArgument("nsb_config_get: buffer too small");
        std::memcpy(buf, v.c_str(), v.size() + 1);
        return NSB_OK;
    });
}

nsb_status nsb_config_load(nsb_config* c, const char* path) {
    return guarded([&] {
        if (!c || !path) throw InvalidArgument("nsb_config_load: null argument");
        for (const auto& [k, v] : read_config_file(path))
            c->kv[k] = v;
        load_config(c->kv); // validate the merged result
        return NSB_OK;
    });
}

nsb_status nsb_config_save(const nsb_config* c, const char* path) {
    return guarded([&] {
        if (!c || !path) throw InvalidArgument("nsb_config_save: null argument");
        save_config_file(load_config(c->kv), path);
        return NSB_OK;
    });
}

nsb_status nsb_run(const nsb_config* c, nsb_run_summary* out) {
    return guarded([&] {
        if (!c || !out) throw InvalidArgument("nsb_run: null argument");
        const CaseConfig cfg = load_config(c->kv);
        if (cfg.kind == CaseKind::PoissonMms)
            throw ConfigError("case 'poisson-mms' has no time marching; use the mms entry point");
        const ResolvedCase rc = resolve_case(cfg);
        const RunSummary s = simulate(rc, true, nullptr);
        out->cycles_run = s.cycles_run;
        out->final_time = s.final_time;
        out->monitor_u = s.monitor_u;
        out->max_divergence = s.max_divergence;
        out->reached_steady = s.reached_steady ? 1 : 0;
        out->active_cells = s.active_cells;
        out->total_poisson_iterations = s.total_poisson_iterations;
        return NSB_OK;
    });
}

nsb_status nsb_race(const nsb_config* c, nsb_report** out) {
    return guarded([&] {
        if (!c || !out) throw InvalidArgument("nsb_race: null argument");
        const CaseConfig cfg = load_config(c->kv);
        const BenchProblem problem = make_bench_problem(problem_source_for(cfg.kind), cfg);

        ExperimentSpec spec;
        spec.problem = problem_source_for(cfg.kind);
        spec.configs = solver_list(cfg, false);
        spec.repetitions = cfg.repetitions;

        auto rep = std::make_unique<nsb_report>();
        rep->race = race(spec, problem);
        for (const ReportRow& r : rep->race.rows) {
            nsb_report_row row{};
            std::snprintf(row.method, sizeof row.method, "%s", r.method.c_str());
            row.omega = r.omega;
            row.iterations = r.iterations;
            row.work_units = r.work_units;
            row.wall_seconds = r.wall_seconds;
            row.converged = r.converged ? 1 : 0;
            rep->rows.push_back(row);
        }
        *out = rep.release();
        return NSB_OK;
    });
}

nsb_status nsb_sweep_omega(const nsb_config* c, nsb_report** out) {
    return guarded([&] {
        if (!c || !out) throw InvalidArgument("nsb_sweep_omega: null argument");
        const CaseConfig cfg = load_config(c->kv);
        const BenchProblem problem = make_bench_problem(problem_source_for(cfg.kind), cfg);

        auto rep = std::make_unique<nsb_report>();
        for (const SolverConfig& sc : solver_list(cfg, true)) {
            OmegaSweep sweep =
                relaxation_sweep(problem, sc, cfg.omega_start, cfg.omega_stop, cfg.omega_step);
            for (const OmegaPoint& pt : sweep.points) {
                nsb_report_row row{};
                std::snprintf(row.method, sizeof row.method, "%s", method_name(sc.method));
                row.omega = pt.omega;
                row.iterations = pt.iterations;
                row.work_units = pt.work_units;
                row.wall_seconds = 0.0;
                row.converged = pt.converged ? 1 : 0;
                rep->rows.push_back(row);
            }
            rep->sweeps.push_back(std::move(sweep));
        }
        *out = rep.release();
        return NSB_OK;
    });
}

long nsb_report_size(const nsb_report* r) { return r ? static_cast<long>(r->rows.size()) : 0; }

nsb_status nsb_report_get(const nsb_report* r, long index, nsb_report_row* out) {
    return guarded([&] {
        if (!r || !out) throw InvalidArgument("nsb_report_get: null argument");
        if (index < 0 || index >= static_cast<long>(r->rows.size()))
            throw InvalidArgument("nsb_report_get: index out of range");
        *out = r->rows[static_cast<std::size_t>(index)];
        return NSB_OK;
    });
}

nsb_status nsb_report_emit(const nsb_report* r, const char* dir) {
    return guarded([&] {
        if (!r || !dir) throw InvalidArgument("nsb_report_emit: null argument");
        if (!r->sweeps.empty()) {
            for (const OmegaSweep& s : r->sweeps)
                emit_sweep(s, dir);
            return NSB_OK;
        }
        emit_report(r->race, dir);
        return NSB_OK;
    });
}

void nsb_report_free(nsb_report* r) { delete r; }

nsb_status nsb_mms(const nsb_config* c, nsb_mms_summary* out) {
    return guarded([&] {
        if (!c || !out) throw InvalidArgument("nsb_mms: null argument");
        CaseConfig cfg = load_config(c->kv);
        const MmsResult res = mms_verify(cfg.nx, cfg.ny, cfg.solver);
        out->max_error = res.max_error;
        out->iterations = res.iterations;
        out->work_units = res.work_units;
        out->converged = res.converged ? 1 : 0;
        out->n_reductions = 0;
        for (double f : res.reduction_factors) {
            if (out->n_reductions >= 64) break;
            out->reductions[out->n_reductions++] = f;
        }
        return NSB_OK;
    });
}

} // extern "C"
