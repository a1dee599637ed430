#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "m1gmg/hierarchy.hpp"
#include "m1gmg/jacobi.hpp"

namespace m1gmg {

struct MgConfig {
    int nu0 = 3;            ///< finest-level smoothing sweeps, pre and post
    int nul = 1;            ///< Jacobi sweeps in the implicit pseudo-time stage
    int nu_coarse = 2;      ///< implicit-stage sweeps on the coarsest level
    int pseudo_m = 3;       ///< pseudo-time iterations per smoother call
    double dtau_im0 = 1e-3; ///< initial implicit pseudo-time step
    double eps_outer = 1e-2;
    double eps_i = 1e-3;    ///< grow dtau_im while the residual still moves
    double eps_d = 1e-6;    ///< halve dtau_im when it stalls
    int max_cycles = 100000;
    double safety = 0.9;    ///< fraction of the admissible explicit sub-step taken
};

struct CycleEntry {
    int cycle = 0;
    double residual = 0.0;  ///< normalized by the initial residual
    double dtau_im = 0.0;
    double wall_ms = 0.0;
};

struct CycleReport {
    std::vector<CycleEntry> entries;  ///< entry 0 is the initial residual (1.0)
    bool converged = false;
    std::uint64_t subcycle_aborts = 0;

    std::string to_csv() const;
};

struct OuterResult {
    bool converged = false;
    int cycles = 0;
    double initial_residual = 0.0;
    double final_residual = 0.0;  ///< raw norm
    CycleReport report;
};

/// Largest pseudo-time step tau such that s + tau * incr stays admissible
/// (positive energy and flux bound), multiplied by `safety` when the bound
/// is finite and capped by `remaining`. An unconstrained increment returns
/// `remaining` exactly. A state sitting on the cone boundary with an outward
/// increment returns 0, which callers treat as a sub-cycle abort.
double max_admissible_dtau(const RadState& s, const RadState& incr,
                           const PhysicalConstants& pc, double safety, double remaining);

/// m pseudo-time iterations toward A(u) = rhs on `level`, operating on
/// H.work[level].v with rhs in H.work[level].b. Each iteration advances every
/// cell explicitly by its own admissible sub-steps until Delta tau_im is
/// accumulated, then applies nul sweeps of the tau-augmented Jacobi solve.
void pseudo_time_smooth(Hierarchy& H, int level, double dt, double dtau_im,
                        const MgConfig& cfg, SweepCounters& counters);

/// v_i += s_i corr_i with s_i the 3x3 neighborhood minimum of the per-cell
/// admissible blend factor (1 where the full correction keeps the cell
/// admissible, otherwise the largest safe fraction). The neighborhood minimum
/// keeps the applied correction free of cell-parity oscillation; admissibility
/// survives any reduction of the factor since the admissible set is convex.
void admissible_correction(Field& v, const Field& corr, const PhysicalConstants& pc);

/// One full approximation scheme V-cycle on A(v) = b at `level`, recursing to
/// the coarsest grid. With a single-level hierarchy this degenerates to nu0
/// plain Jacobi sweeps.
void fas_vcycle(Hierarchy& H, int level, double dt, double dtau_im, const MgConfig& cfg,
                SweepCounters& counters);

/// Repeats V-cycles until |r| <= eps_outer |r_0| (floor 1e-300), adapting
/// dtau_im from the residual history: grow by 1.1 while successive norms
/// differ by more than eps_i relative to r_0, halve when they differ by less
/// than eps_d. The solution is left in v.
OuterResult outer_drive(Hierarchy& H, const Field& b, Field& v, double dt,
                        const MgConfig& cfg, SweepCounters& counters);

}  // namespace m1gmg
