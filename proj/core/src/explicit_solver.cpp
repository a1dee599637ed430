#include "m1gmg/explicit_solver.hpp"

namespace m1gmg {

void explicit_step(Field& v, double dt, const PhysicalConstants& pc,
                   ExplicitWorkspace& ws, SweepCounters* counters) {
    const GridLevel& g = v.grid();
    const double lam = dt / g.h;
    fill_ghosts(v, GhostMode::physical);

#pragma omp parallel for schedule(static)
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i <= g.nx; ++i)
            ws.fx[static_cast<std::size_t>(j) * (g.nx + 1) + i] =
                rusanov_flux(v.at(i - 1, j), v.at(i, j), pc, Axis::x);

    if (g.dim() == 2) {
#pragma omp parallel for schedule(static)
        for (int j = 0; j <= g.ny; ++j)
            for (int i = 0; i < g.nx; ++i)
                ws.fy[static_cast<std::size_t>(j) * g.nx + i] =
                    rusanov_flux(v.at(i, j - 1), v.at(i, j), pc, Axis::y);
    }

#pragma omp parallel for schedule(static)
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const std::size_t fxi = static_cast<std::size_t>(j) * (g.nx + 1) + i;
            RadState u = v.at(i, j) - lam * (ws.fx[fxi + 1] - ws.fx[fxi]);
            if (g.dim() == 2) {
                const std::size_t fyi = static_cast<std::size_t>(j) * g.nx + i;
                u = u - lam * (ws.fy[fyi + g.nx] - ws.fy[fyi]);
            }
            v.at(i, j) = u;
        }

    if (counters) counters->cell_updates += static_cast<std::uint64_t>(g.cells());
    validate_admissible(v, pc, kAdmissibleTol, "explicit_step");
}

}  // namespace m1gmg
