#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "m1gmg/mesh.hpp"

namespace m1gmg {

/// A verification problem: grid, boundary conditions, initial state and how
/// long to run it.
struct ProblemSpec {
    std::string name;
    GridLevel grid;  ///< finest level
    BoundaryCondition bc;
    bool steady = false;    ///< one large implicit step instead of a time march
    double t_final = 0.0;   ///< physical end time for time marches
    double e_ref = 0.0;     ///< normalization energy for cuts and plots
    std::function<RadState(double, double)> init;  ///< cell center -> state
};

/// Crossed beam in [-1, 1]^2: cold isotropic background at 300 K, free
/// streaming inflow at 1000 K entering the left boundary on the strip
/// y in [-0.875, -0.75] at 45 degrees. Solved to steady state.
ProblemSpec beam_spec(int nx, int ny, const PhysicalConstants& pc);

/// Four-quadrant Riemann problem in [0, 1]^2 at 1000 K: uniform energy,
/// near free-streaming flux turning by quadrant (right, down, up, left in
/// the bottom-left, bottom-right, top-left, top-right quadrants). Periodic
/// or zero-gradient on all sides; marched to t_final = 1e-11 s.
ProblemSpec riemann_spec(int nx, int ny, const PhysicalConstants& pc, BCKind side_kind);

/// Samples spec.init at every interior cell center.
Field initial_field(const ProblemSpec& spec);

/// |sum E - reference| / reference over interior cells.
double conservation_error(const Field& f, double reference_total);

/// E(x) / e_norm along the horizontal midline; for even ny the two center
/// rows are averaged. Returns (x, normalized E) pairs.
std::vector<std::pair<double, double>> midline_cut(const Field& f, double e_norm);

}  // namespace m1gmg
