#include "m1gmg/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "m1gmg/errors.hpp"

namespace m1gmg {

namespace {

inline RadState sweep_cell(const RadState& b, const RadState& acc, double inv_d, double s) {
    return inv_d * (b + s * acc);
}

}  // namespace

void compute_contributions(const Field& v, const ImplicitOperator& op,
                           std::vector<CellContribution>& contrib) {
    const GridLevel& g = v.grid();
#pragma omp parallel for schedule(static)
    for (int j = -1; j <= g.ny; ++j)
        for (int i = -1; i <= g.nx; ++i)
            contrib[v.idx(i, j)] = cell_contributions(v.at(i, j), op);
}

void apply_operator(Field& v, const ImplicitOperator& op, Field& out,
                    std::vector<CellContribution>& contrib) {
    fill_ghosts(v);
    compute_contributions(v, op, contrib);
    const GridLevel& g = v.grid();
    const int dim = g.dim();
    const double d = op.diag(), s = op.off_scale();
#pragma omp parallel for schedule(static)
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            out.at(i, j) = d * v.at(i, j) - s * gather_neighbors(v, contrib, i, j, dim);
}

double residual_norm(const Field& r, const PhysicalConstants& pc) {
    const GridLevel& g = r.grid();
    const double inv_c2 = 1.0 / (pc.c * pc.c);
    double acc = 0.0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const RadState& s = r.at(i, j);
            acc += s.E * s.E + dot(s.F, s.F) * inv_c2;
        }
    return std::sqrt(acc);
}

void residual_field(Field& v, const Field& b, const ImplicitOperator& op, Field& r,
                    std::vector<CellContribution>& contrib) {
    fill_ghosts(v);
    compute_contributions(v, op, contrib);
    const GridLevel& g = v.grid();
    const int dim = g.dim();
    const double d = op.diag(), s = op.off_scale();
#pragma omp parallel for schedule(static)
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            r.at(i, j) = b.at(i, j) - (d * v.at(i, j) - s * gather_neighbors(v, contrib, i, j, dim));
}

void jacobi_sweep(Field& v, const Field& b, const ImplicitOperator& op, Field& out,
                  std::vector<CellContribution>& contrib, SweepCounters* counters) {
    fill_ghosts(v);
    compute_contributions(v, op, contrib);
    const GridLevel& g = v.grid();
    const int dim = g.dim();
    const double s = op.off_scale(), inv_d = 1.0 / op.diag();
#pragma omp parallel for schedule(static)
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            out.at(i, j) = sweep_cell(b.at(i, j), gather_neighbors(v, contrib, i, j, dim), inv_d, s);
    validate_admissible(out, op.pc, kAdmissibleTol, "jacobi_sweep");
    if (counters) counters->cell_updates += static_cast<std::uint64_t>(g.cells());
}

JacobiResult jacobi_solve(Field& v, const Field& b, const ImplicitOperator& op,
                          const JacobiOptions& opts, JacobiScratch ws,
                          SweepCounters* counters) {
    const GridLevel& g = v.grid();
    const int dim = g.dim();
    const double d = op.diag(), s = op.off_scale(), inv_d = 1.0 / d;

    JacobiResult res;
    double r0 = 0.0;
    for (int k = 0;; ++k) {
        fill_ghosts(v);
        compute_contributions(v, op, ws.contrib);
        // one pass produces both the residual of v and the candidate iterate
#pragma omp parallel for schedule(static)
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) {
                const RadState acc = gather_neighbors(v, ws.contrib, i, j, dim);
                ws.resid.at(i, j) = b.at(i, j) - (d * v.at(i, j) - s * acc);
                ws.next.at(i, j) = sweep_cell(b.at(i, j), acc, inv_d, s);
            }
        const double rn = residual_norm(ws.resid, op.pc);
        if (k == 0) {
            res.initial_residual = rn;
            r0 = std::max(rn, 1e-300);
        }
        if (opts.record_history) res.history.push_back(rn / r0);
        res.final_residual = rn;
        res.iterations = k;
        if (opts.eps > 0.0 && rn <= opts.eps * r0) {
            res.converged = true;
            break;
        }
        if (k >= opts.max_iter) break;
        validate_admissible(ws.next, op.pc, kAdmissibleTol, "jacobi_solve");
        std::swap(v.raw(), ws.next.raw());
        if (counters) counters->cell_updates += static_cast<std::uint64_t>(g.cells());
    }
    return res;
}

void jacobi_fixed_sweeps(Field& v, const Field& b, const ImplicitOperator& op, int n,
                         Field& scratch, std::vector<CellContribution>& contrib,
                         SweepCounters* counters) {
    const GridLevel& g = v.grid();
    const int dim = g.dim();
    const double s = op.off_scale(), inv_d = 1.0 / op.diag();
    for (int k = 0; k < n; ++k) {
        fill_ghosts(v);
        compute_contributions(v, op, contrib);
#pragma omp parallel for schedule(static)
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i)
                scratch.at(i, j) = sweep_cell(b.at(i, j), gather_neighbors(v, contrib, i, j, dim), inv_d, s);
        validate_admissible(scratch, op.pc, kAdmissibleTol, "jacobi_fixed_sweeps");
        std::swap(v.raw(), scratch.raw());
        if (counters) counters->cell_updates += static_cast<std::uint64_t>(g.cells());
    }
}

}  // namespace m1gmg
