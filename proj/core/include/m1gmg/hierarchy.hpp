#pragma once

#include <cstddef>
#include <vector>

#include "m1gmg/mesh.hpp"
#include "m1gmg/operators.hpp"

namespace m1gmg {

/// Per-level scratch fields, allocated once when the hierarchy is built and
/// reused by every cycle.
struct LevelWorkspace {
    Field b;        ///< level right-hand side
    Field v;        ///< current iterate
    Field v_pre;    ///< iterate as restricted from above, kept for the correction
    Field r;        ///< residual / restriction target
    Field u_tilde;  ///< sub-cycled state in the pseudo-time smoother
    Field tmp;      ///< sweep double buffer and operator output
    std::vector<CellContribution> contrib;
    std::vector<double> tau;  ///< per-cell pseudo-time reached by the sub-cycle

    LevelWorkspace(const GridLevel& g, const BoundaryCondition& bc)
        : b(g, bc), v(g, bc), v_pre(g, bc), r(g, bc), u_tilde(g, bc), tmp(g, bc),
          contrib(b.raw().size()), tau(static_cast<std::size_t>(g.cells())) {}

    std::size_t bytes() const {
        return 6 * b.bytes() + contrib.size() * sizeof(CellContribution) +
               tau.size() * sizeof(double);
    }
};

struct Hierarchy {
    PhysicalConstants pc{};
    BoundaryCondition bc{};
    std::vector<GridLevel> levels;  ///< levels[0] is the finest
    std::vector<LevelWorkspace> work;

    int depth() const { return static_cast<int>(levels.size()); }
    std::size_t field_bytes() const;
};

/// Builds l_max levels by halving nx (and ny in 2D). Throws ConfigError when
/// a cell count does not halve evenly or a level would drop below 2 cells.
Hierarchy build_hierarchy(const GridLevel& fine, const BoundaryCondition& bc, int l_max,
                          const PhysicalConstants& pc);

}  // namespace m1gmg
