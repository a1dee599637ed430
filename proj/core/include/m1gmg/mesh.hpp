#pragma once

#include <cstddef>
#include <vector>

#include "m1gmg/state.hpp"

namespace m1gmg {

enum class BCKind { periodic, zero_gradient, dirichlet_inflow };

/// Boundary prescription for one side of the domain. dirichlet_inflow writes
/// `inflow` into ghost cells whose face center lies in [strip_lo, strip_hi]
/// along the transverse coordinate and degrades to zero-gradient elsewhere.
struct SideBC {
    BCKind kind = BCKind::zero_gradient;
    double strip_lo = 0.0;
    double strip_hi = 0.0;
    RadState inflow{};
};

struct BoundaryCondition {
    SideBC left, right, bottom, top;
};

BoundaryCondition periodic_bc();
BoundaryCondition zero_gradient_bc();

/// One structured level of square cells: nx x ny cells of spacing h with the
/// domain corner at (x0, y0). ny == 1 selects the one dimensional variant of
/// every stencil.
struct GridLevel {
    int nx = 0;
    int ny = 0;
    double h = 0.0;
    double x0 = 0.0;
    double y0 = 0.0;
    int level = 0;

    int dim() const { return ny == 1 ? 1 : 2; }
    int cells() const { return nx * ny; }
    double xc(int i) const { return x0 + (i + 0.5) * h; }
    double yc(int j) const { return y0 + (j + 0.5) * h; }
};

/// Cell centered field with one ghost layer on each side.
class Field {
public:
    Field() = default;
    Field(const GridLevel& g, const BoundaryCondition& bc)
        : g_(g), bc_(bc), stride_(g.nx + 2),
          data_(static_cast<std::size_t>(g.nx + 2) * (g.ny + 2)) {}

    const GridLevel& grid() const { return g_; }
    const BoundaryCondition& bc() const { return bc_; }

    /// Interior indices run 0..nx-1 and 0..ny-1; ghosts sit at -1 and nx (ny).
    RadState& at(int i, int j) { return data_[idx(i, j)]; }
    const RadState& at(int i, int j) const { return data_[idx(i, j)]; }
    std::size_t idx(int i, int j) const {
        return static_cast<std::size_t>(j + 1) * stride_ + (i + 1);
    }

    std::vector<RadState>& raw() { return data_; }
    const std::vector<RadState>& raw() const { return data_; }
    std::size_t bytes() const { return data_.size() * sizeof(RadState); }

private:
    GridLevel g_{};
    BoundaryCondition bc_{};
    int stride_ = 0;
    std::vector<RadState> data_;
};

/// Ghost population mode. `physical` applies the boundary condition as given;
/// `homogeneous` is for residual-like fields, where a Dirichlet inflow strip
/// contributes the zero state instead of the prescribed inflow.
enum class GhostMode { physical, homogeneous };

/// Fills the ghost layer from the interior per the field's boundary
/// condition. Corners are made consistent by extending the x sweep values in
/// the y sweep. Idempotent for a fixed interior.
void fill_ghosts(Field& f, GhostMode mode = GhostMode::physical);

/// Throws AdmissibilityError naming `where` and the first offending cell if
/// any interior cell is outside the admissible cone.
void validate_admissible(const Field& f, const PhysicalConstants& pc, double tol,
                         const char* where);

/// Plain sum of E over interior cells.
double total_energy(const Field& f);

}  // namespace m1gmg
