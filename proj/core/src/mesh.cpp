#include "m1gmg/mesh.hpp"

#include <sstream>

#include "m1gmg/errors.hpp"

namespace m1gmg {

BoundaryCondition periodic_bc() {
    SideBC s{BCKind::periodic};
    return {s, s, s, s};
}

BoundaryCondition zero_gradient_bc() {
    SideBC s{BCKind::zero_gradient};
    return {s, s, s, s};
}

namespace {

void check_pairing(const BoundaryCondition& bc) {
    if ((bc.left.kind == BCKind::periodic) != (bc.right.kind == BCKind::periodic) ||
        (bc.bottom.kind == BCKind::periodic) != (bc.top.kind == BCKind::periodic))
        throw ConfigError("periodic boundaries must be paired across the domain");
}

/// Ghost value for a non-periodic side: the inflow state on a Dirichlet
/// strip (zero state in homogeneous mode), the interior neighbor otherwise.
RadState side_value(const Field& f, const SideBC& s, int in_i, int in_j,
                    double face_coord, GhostMode mode) {
    if (s.kind == BCKind::dirichlet_inflow && face_coord >= s.strip_lo &&
        face_coord <= s.strip_hi)
        return mode == GhostMode::physical ? s.inflow : RadState{};
    return f.at(in_i, in_j);
}

}  // namespace

void fill_ghosts(Field& f, GhostMode mode) {
    const GridLevel& g = f.grid();
    const BoundaryCondition& bc = f.bc();
    check_pairing(bc);

    const int nx = g.nx, ny = g.ny;
    // x sides first, interior rows only
    for (int j = 0; j < ny; ++j) {
        const double y = g.yc(j);
        f.at(-1, j) = bc.left.kind == BCKind::periodic
                          ? f.at(nx - 1, j)
                          : side_value(f, bc.left, 0, j, y, mode);
        f.at(nx, j) = bc.right.kind == BCKind::periodic
                          ? f.at(0, j)
                          : side_value(f, bc.right, nx - 1, j, y, mode);
    }
    // y sides over every column including the x ghosts, which makes the
    // corners consistent with both conditions
    for (int i = -1; i <= nx; ++i) {
        const double x = g.xc(i);
        f.at(i, -1) = bc.bottom.kind == BCKind::periodic
                          ? f.at(i, ny - 1)
                          : side_value(f, bc.bottom, i, 0, x, mode);
        f.at(i, ny) = bc.top.kind == BCKind::periodic
                          ? f.at(i, 0)
                          : side_value(f, bc.top, i, ny - 1, x, mode);
    }
}

void validate_admissible(const Field& f, const PhysicalConstants& pc, double tol,
                         const char* where) {
    const GridLevel& g = f.grid();
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const RadState& s = f.at(i, j);
            if (!is_admissible(s, pc, tol)) {
                std::ostringstream msg;
                msg << where << ": inadmissible state at cell (" << i << ", " << j
                    << "): E = " << s.E << ", |F|/(cE) = "
                    << (s.E > 0.0 ? norm(s.F) / (pc.c * s.E) : 0.0);
                throw AdmissibilityError(msg.str());
            }
        }
}

double total_energy(const Field& f) {
    const GridLevel& g = f.grid();
    double sum = 0.0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) sum += f.at(i, j).E;
    return sum;
}

}  // namespace m1gmg
