#include "m1gmg/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "m1gmg/closure.hpp"
#include "m1gmg/errors.hpp"
#include "m1gmg/explicit_solver.hpp"
#include "m1gmg/jacobi.hpp"
#include "m1gmg/multigrid.hpp"
#include "m1gmg/problems.hpp"

namespace m1gmg {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return {};
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

int parse_int(const std::string& v, const std::string& key, const std::string& where) {
    std::size_t pos = 0;
    int out = 0;
    try {
        out = std::stoi(v, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (v.empty() || pos != v.size())
        throw ConfigError(where + ": invalid integer for " + key + ": '" + v + "'");
    return out;
}

double parse_double(const std::string& v, const std::string& key, const std::string& where) {
    std::size_t pos = 0;
    double out = 0.0;
    try {
        out = std::stod(v, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (v.empty() || pos != v.size())
        throw ConfigError(where + ": invalid number for " + key + ": '" + v + "'");
    return out;
}

void apply_kv(RunConfig& c, const std::string& key, const std::string& val,
              const std::string& where) {
    if (key == "problem")
        c.problem = val;
    else if (key == "solver")
        c.solver = val;
    else if (key == "nx")
        c.nx = parse_int(val, key, where);
    else if (key == "ny")
        c.ny = parse_int(val, key, where);
    else if (key == "cfl")
        c.cfl = parse_double(val, key, where);
    else if (key == "l_max")
        c.l_max = parse_int(val, key, where);
    else if (key == "nu0")
        c.nu0 = parse_int(val, key, where);
    else if (key == "nul")
        c.nul = parse_int(val, key, where);
    else if (key == "nu_coarse")
        c.nu_coarse = parse_int(val, key, where);
    else if (key == "pseudo_m")
        c.pseudo_m = parse_int(val, key, where);
    else if (key == "dtau_im0")
        c.dtau_im0 = parse_double(val, key, where);
    else if (key == "eps_outer")
        c.eps_outer = parse_double(val, key, where);
    else if (key == "eps_jacobi")
        c.eps_jacobi = parse_double(val, key, where);
    else if (key == "eps_i")
        c.eps_i = parse_double(val, key, where);
    else if (key == "eps_d")
        c.eps_d = parse_double(val, key, where);
    else if (key == "max_cycles")
        c.max_cycles = parse_int(val, key, where);
    else if (key == "max_iters")
        c.max_iters = parse_int(val, key, where);
    else if (key == "bc")
        c.bc = val;
    else if (key == "output_dir")
        c.output_dir = val;
    else if (key == "c")
        c.c = parse_double(val, key, where);
    else if (key == "a_r")
        c.a_r = parse_double(val, key, where);
    else if (key == "threads")
        c.threads = parse_int(val, key, where);
    else if (key == "t_final")
        c.t_final = parse_double(val, key, where);
    else if (key == "safety")
        c.safety = parse_double(val, key, where);
    else
        throw ConfigError(where + ": unknown key '" + key + "'");
}

void require(bool ok, const std::string& msg) {
    if (!ok) throw ConfigError(msg);
}

void validate(const RunConfig& c) {
    require(c.problem == "beam" || c.problem == "riemann",
            "problem must be beam or riemann, got '" + c.problem + "'");
    require(c.solver == "explicit" || c.solver == "jacobi" || c.solver == "gmg",
            "solver must be explicit, jacobi or gmg, got '" + c.solver + "'");
    require(c.nx >= 2 && c.ny >= 2, "nx and ny must be at least 2");
    require(c.cfl > 0.0, "cfl must be positive");
    require(c.l_max >= 1, "l_max must be at least 1");
    require(c.nu0 >= 1 && c.nul >= 1 && c.nu_coarse >= 1 && c.pseudo_m >= 1,
            "nu0, nul, nu_coarse and pseudo_m must be at least 1");
    require(c.dtau_im0 > 0.0, "dtau_im0 must be positive");
    require(c.eps_outer > 0.0 && c.eps_jacobi > 0.0 && c.eps_i > 0.0 && c.eps_d > 0.0,
            "tolerances must be positive");
    require(c.max_cycles >= 1 && c.max_iters >= 1, "iteration caps must be at least 1");
    require(c.bc == "default" || c.bc == "periodic" || c.bc == "zero-gradient",
            "bc must be default, periodic or zero-gradient, got '" + c.bc + "'");
    require(c.problem != "beam" || c.bc == "default", "the beam problem fixes its own bc");
    require(!c.output_dir.empty(), "output_dir must not be empty");
    require(c.c > 0.0 && c.a_r > 0.0, "c and a_r must be positive");
    require(c.threads >= 1, "threads must be at least 1");
    require(c.t_final > 0.0, "t_final must be positive");
    require(c.safety > 0.0 && c.safety <= 1.0, "safety must be in (0, 1]");
    if (c.solver == "gmg") {
        int nx = c.nx, ny = c.ny;
        for (int l = 1; l < c.l_max; ++l) {
            require(nx % 2 == 0 && ny % 2 == 0 && nx / 2 >= 2 && ny / 2 >= 2,
                    "grid " + std::to_string(c.nx) + "x" + std::to_string(c.ny) +
                        " does not support l_max = " + std::to_string(c.l_max));
            nx /= 2;
            ny /= 2;
        }
    }
}

std::string fmt_g(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g", x);
    return buf;
}

void write_file(const std::string& dir, const char* name, const std::string& content) {
    const std::string path = dir + "/" + name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open " + path + " for writing");
    out << content;
    if (!out.good()) throw ConfigError("failed writing " + path);
}

bool all_periodic(const BoundaryCondition& bc) {
    return bc.left.kind == BCKind::periodic && bc.right.kind == BCKind::periodic &&
           bc.bottom.kind == BCKind::periodic && bc.top.kind == BCKind::periodic;
}

std::string snapshot_csv(const Field& f, const PhysicalConstants& pc) {
    const GridLevel& g = f.grid();
    std::string s = "x,y,E,Fx,Fy,f\n";
    s.reserve(s.size() + static_cast<std::size_t>(g.cells()) * 112);
    char line[256];
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const RadState& u = f.at(i, j);
            std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                          g.xc(i), g.yc(j), u.E, u.F.x, u.F.y, reduced_flux(u, pc));
            s += line;
        }
    return s;
}

}  // namespace

RunConfig parse_config(const std::string& text, const std::vector<KeyValue>& overrides) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        const std::string where = "line " + std::to_string(lineno);
        if (eq == std::string::npos) throw ConfigError(where + ": expected key = value");
        apply_kv(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)), where);
    }
    for (const auto& [k, v] : overrides) apply_kv(cfg, k, v, "command line");
    validate(cfg);
    return cfg;
}

RunConfig parse_config_file(const std::string& path, const std::vector<KeyValue>& overrides) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), overrides);
}

std::string list_defaults() {
    const RunConfig d;
    std::string s;
    s += "problem = " + d.problem + "\n";
    s += "solver = " + d.solver + "\n";
    s += "nx = " + std::to_string(d.nx) + "\n";
    s += "ny = " + std::to_string(d.ny) + "\n";
    s += "cfl = " + fmt_g(d.cfl) + "\n";
    s += "l_max = " + std::to_string(d.l_max) + "\n";
    s += "nu0 = " + std::to_string(d.nu0) + "\n";
    s += "nul = " + std::to_string(d.nul) + "\n";
    s += "nu_coarse = " + std::to_string(d.nu_coarse) + "\n";
    s += "pseudo_m = " + std::to_string(d.pseudo_m) + "\n";
    s += "dtau_im0 = " + fmt_g(d.dtau_im0) + "\n";
    s += "eps_outer = " + fmt_g(d.eps_outer) + "\n";
    s += "eps_jacobi = " + fmt_g(d.eps_jacobi) + "\n";
    s += "eps_i = " + fmt_g(d.eps_i) + "\n";
    s += "eps_d = " + fmt_g(d.eps_d) + "\n";
    s += "max_cycles = " + std::to_string(d.max_cycles) + "\n";
    s += "max_iters = " + std::to_string(d.max_iters) + "\n";
    s += "bc = " + d.bc + "\n";
    s += "output_dir = " + d.output_dir + "\n";
    s += "c = " + fmt_g(d.c) + "\n";
    s += "a_r = " + fmt_g(d.a_r) + "\n";
    s += "threads = " + std::to_string(d.threads) + "\n";
    s += "t_final = " + fmt_g(d.t_final) + "\n";
    s += "safety = " + fmt_g(d.safety) + "\n";
    return s;
}

std::string RunReport::to_text() const {
    char buf[512];
    std::string s;
    s += std::string("tolerances_met: ") + (tolerances_met ? "yes" : "no") + "\n";
    s += "steps: " + std::to_string(steps) + "\n";
    s += "iterations_or_cycles: " + std::to_string(iterations_or_cycles) + "\n";
    std::snprintf(buf, sizeof buf,
                  "final_residual: %.6g\nmax_conservation_error: %.6g\n"
                  "wall_seconds: %.4g\ncell_updates_per_second: %.4g\n",
                  final_residual, max_conservation_error, wall_seconds,
                  cell_updates_per_second);
    s += buf;
    s += "cell_updates: " + std::to_string(cell_updates) + "\n";
    s += "subcycle_aborts: " + std::to_string(subcycle_aborts) + "\n";
    s += "field_bytes: " + std::to_string(field_bytes) + "\n";
    return s;
}

RunReport run(const RunConfig& cfg) {
    using clock = std::chrono::steady_clock;
    const PhysicalConstants pc = cfg.constants();
#ifdef _OPENMP
    omp_set_num_threads(std::max(1, cfg.threads));
#endif

    const ProblemSpec spec =
        cfg.problem == "beam"
            ? beam_spec(cfg.nx, cfg.ny, pc)
            : riemann_spec(cfg.nx, cfg.ny, pc,
                           cfg.bc == "zero-gradient" ? BCKind::zero_gradient
                                                     : BCKind::periodic);
    std::filesystem::create_directories(cfg.output_dir);

    Field v = initial_field(spec);
    validate_admissible(v, pc, kAdmissibleTol, "initial state");
    const bool conservative = all_periodic(spec.bc) && !spec.steady;
    const double ref_total = total_energy(v);
    const double dt_nominal = cfg.cfl * spec.grid.h / pc.c;

    RunReport rep;
    SweepCounters counters;
    std::string residual_csv;
    std::string conservation_csv = "step,rel_error\n";
    std::int64_t res_rows = 0;
    bool all_converged = true;
    char line[256];

    const auto t0 = clock::now();

    if (cfg.solver == "explicit") {
        if (cfg.cfl > 0.5 && spec.grid.dim() == 2)
            std::fprintf(stderr,
                         "warning: explicit solver at cfl = %g exceeds the tested 2D "
                         "stability margin of 0.5\n",
                         cfg.cfl);
        ExplicitWorkspace ws(v);
        rep.field_bytes = v.bytes() + (ws.fx.size() + ws.fy.size()) * sizeof(RadState);
        if (spec.steady) {
            // march to steady state: ten crossing times with a stall early-out
            const double t_end = 10.0 * (spec.grid.nx * spec.grid.h) / pc.c;
            Field prev = v;
            double t = 0.0;
            while (t < t_end * (1.0 - 1e-12)) {
                const double sdt = std::min(dt_nominal, t_end - t);
                prev.raw() = v.raw();
                explicit_step(v, sdt, pc, ws, &counters);
                t += sdt;
                ++rep.steps;
                double dmax = 0.0;
                for (int j = 0; j < spec.grid.ny; ++j)
                    for (int i = 0; i < spec.grid.nx; ++i)
                        dmax = std::max(dmax, std::abs(v.at(i, j).E - prev.at(i, j).E));
                if (dmax <= 1e-13 * spec.e_ref) break;
            }
        } else {
            double t = 0.0;
            while (t < spec.t_final * (1.0 - 1e-12)) {
                const double sdt = std::min(dt_nominal, spec.t_final - t);
                explicit_step(v, sdt, pc, ws, &counters);
                t += sdt;
                ++rep.steps;
                if (conservative) {
                    const double err = conservation_error(v, ref_total);
                    rep.max_conservation_error = std::max(rep.max_conservation_error, err);
                    std::snprintf(line, sizeof line, "%d,%.17g\n", rep.steps, err);
                    conservation_csv += line;
                }
            }
        }
        rep.iterations_or_cycles = rep.steps;
    } else if (cfg.solver == "jacobi") {
        const int dim = spec.grid.dim();
        Field b(spec.grid, spec.bc), next(spec.grid, spec.bc), resid(spec.grid, spec.bc);
        std::vector<CellContribution> contrib(v.raw().size());
        rep.field_bytes = 4 * v.bytes() + contrib.size() * sizeof(CellContribution);
        JacobiOptions jopts{cfg.eps_jacobi, cfg.max_iters, true};
        residual_csv = "iter_or_cycle,residual\n";

        double t = 0.0;
        const double t_end = spec.steady ? dt_nominal : spec.t_final;
        while (t < t_end * (1.0 - 1e-12)) {
            const double sdt = std::min(dt_nominal, t_end - t);
            const ImplicitOperator op{pc, sdt, spec.grid.h, dim, 0.0};
            b.raw() = v.raw();
            const JacobiResult res =
                jacobi_solve(v, b, op, jopts, {next, resid, contrib}, &counters);
            t += sdt;
            ++rep.steps;
            for (const double r : res.history) {
                std::snprintf(line, sizeof line, "%lld,%.17g\n",
                              static_cast<long long>(res_rows++), r);
                residual_csv += line;
            }
            rep.iterations_or_cycles += res.iterations;
            rep.final_residual =
                res.final_residual / std::max(res.initial_residual, 1e-300);
            if (!res.converged) {
                all_converged = false;
                break;
            }
            if (conservative) {
                const double err = conservation_error(v, ref_total);
                rep.max_conservation_error = std::max(rep.max_conservation_error, err);
                std::snprintf(line, sizeof line, "%d,%.17g\n", rep.steps, err);
                conservation_csv += line;
            }
        }
    } else {
        Hierarchy H = build_hierarchy(spec.grid, spec.bc, cfg.l_max, pc);
        Field b(spec.grid, spec.bc);
        rep.field_bytes = H.field_bytes() + b.bytes() + v.bytes();
        MgConfig mg;
        mg.nu0 = cfg.nu0;
        mg.nul = cfg.nul;
        mg.nu_coarse = cfg.nu_coarse;
        mg.pseudo_m = cfg.pseudo_m;
        mg.dtau_im0 = cfg.dtau_im0;
        mg.eps_outer = cfg.eps_outer;
        mg.eps_i = cfg.eps_i;
        mg.eps_d = cfg.eps_d;
        mg.max_cycles = cfg.max_cycles;
        mg.safety = cfg.safety;
        residual_csv = "iter_or_cycle,residual,dtau_im\n";

        double t = 0.0;
        const double t_end = spec.steady ? dt_nominal : spec.t_final;
        while (t < t_end * (1.0 - 1e-12)) {
            const double sdt = std::min(dt_nominal, t_end - t);
            b.raw() = v.raw();
            const OuterResult res = outer_drive(H, b, v, sdt, mg, counters);
            t += sdt;
            ++rep.steps;
            for (const CycleEntry& e : res.report.entries) {
                std::snprintf(line, sizeof line, "%lld,%.17g,%.17g\n",
                              static_cast<long long>(res_rows++), e.residual, e.dtau_im);
                residual_csv += line;
            }
            rep.iterations_or_cycles += res.cycles;
            rep.final_residual =
                res.final_residual / std::max(res.initial_residual, 1e-300);
            if (!res.converged) {
                all_converged = false;
                break;
            }
            if (conservative) {
                const double err = conservation_error(v, ref_total);
                rep.max_conservation_error = std::max(rep.max_conservation_error, err);
                std::snprintf(line, sizeof line, "%d,%.17g\n", rep.steps, err);
                conservation_csv += line;
            }
        }
    }

    rep.wall_seconds = std::chrono::duration<double>(clock::now() - t0).count();
    rep.cell_updates = counters.cell_updates;
    rep.subcycle_aborts = counters.subcycle_aborts;
    rep.cell_updates_per_second =
        rep.wall_seconds > 0.0 ? static_cast<double>(counters.cell_updates) / rep.wall_seconds
                               : 0.0;
    rep.tolerances_met = all_converged;

    write_file(cfg.output_dir, "snapshot.csv", snapshot_csv(v, pc));
    if (!residual_csv.empty()) write_file(cfg.output_dir, "residual.csv", residual_csv);
    if (conservative) write_file(cfg.output_dir, "conservation.csv", conservation_csv);
    if (cfg.problem == "beam") {
        std::string cut = "x,E_normalized\n";
        for (const auto& [x, e] : midline_cut(v, spec.e_ref)) {
            std::snprintf(line, sizeof line, "%.17g,%.17g\n", x, e);
            cut += line;
        }
        write_file(cfg.output_dir, "cut.csv", cut);
    }
    write_file(cfg.output_dir, "report.txt", rep.to_text());
    return rep;
}

}  // namespace m1gmg
