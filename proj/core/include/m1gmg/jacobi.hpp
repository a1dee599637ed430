#pragma once

#include <cstdint>
#include <vector>

#include "m1gmg/mesh.hpp"
#include "m1gmg/operators.hpp"

namespace m1gmg {

/// Work accounting across a run. cell_updates counts interior cells touched
/// by smoothing sweeps, explicit steps and pseudo-time sub-cycle passes.
struct SweepCounters {
    std::uint64_t cell_updates = 0;
    std::uint64_t subcycle_aborts = 0;
};

/// Fills `contrib` (sized like the field including ghosts) from a ghost
/// filled iterate.
void compute_contributions(const Field& v, const ImplicitOperator& op,
                           std::vector<CellContribution>& contrib);

/// Sum of the neighbor couplings received by cell (i, j).
inline RadState gather_neighbors(const Field& v, const std::vector<CellContribution>& contrib,
                                 int i, int j, int dim) {
    RadState acc = contrib[v.idx(i - 1, j)].lx + contrib[v.idx(i + 1, j)].rx;
    if (dim == 2) acc = acc + contrib[v.idx(i, j - 1)].ly + contrib[v.idx(i, j + 1)].ry;
    return acc;
}

/// out = A(v), or (I + tau A)(v) when the operator is augmented. Fills the
/// ghosts of v (physical mode) as a side effect.
void apply_operator(Field& v, const ImplicitOperator& op, Field& out,
                    std::vector<CellContribution>& contrib);

/// L2 norm of a cellwise residual (r_E, r_F / c) over interior cells,
/// accumulated serially in a fixed order regardless of thread count.
double residual_norm(const Field& r, const PhysicalConstants& pc);

/// r = b - A(v) on interior cells.
void residual_field(Field& v, const Field& b, const ImplicitOperator& op, Field& r,
                    std::vector<CellContribution>& contrib);

/// One nonlinear Jacobi sweep: out_i = D^-1 (b_i + L(v_left) + R(v_right)
/// [+ vertical terms]). Validates that every output cell stays admissible
/// and throws AdmissibilityError otherwise.
void jacobi_sweep(Field& v, const Field& b, const ImplicitOperator& op, Field& out,
                  std::vector<CellContribution>& contrib, SweepCounters* counters = nullptr);

struct JacobiOptions {
    double eps = 1e-6;       ///< stop when |r_k| <= eps |r_0|; <= 0 disables the test
    int max_iter = 200000;
    bool record_history = false;
};

struct JacobiResult {
    bool converged = false;
    int iterations = 0;            ///< sweeps actually applied
    double initial_residual = 0.0;
    double final_residual = 0.0;   ///< raw norm at the returned iterate
    std::vector<double> history;   ///< normalized residual per iterate, entry 0 is 1
};

/// Scratch views for jacobi_solve, typically borrowed from a LevelWorkspace.
struct JacobiScratch {
    Field& next;
    Field& resid;
    std::vector<CellContribution>& contrib;
};

/// Nonlinear Jacobi solve of A(v) = b starting from the iterate already in v.
/// The stop test is relative to the initial residual with an absolute floor
/// of 1e-300; an exactly solved input returns after zero sweeps.
JacobiResult jacobi_solve(Field& v, const Field& b, const ImplicitOperator& op,
                          const JacobiOptions& opts, JacobiScratch ws,
                          SweepCounters* counters = nullptr);

/// Exactly n sweeps, no residual evaluation. Used by the multigrid smoothers
/// where the sweep count is prescribed.
void jacobi_fixed_sweeps(Field& v, const Field& b, const ImplicitOperator& op, int n,
                         Field& scratch, std::vector<CellContribution>& contrib,
                         SweepCounters* counters = nullptr);

}  // namespace m1gmg
