#pragma once

#include <vector>

#include "m1gmg/jacobi.hpp"
#include "m1gmg/mesh.hpp"
#include "m1gmg/operators.hpp"

namespace m1gmg {

/// Physical flux along `axis`: (F_axis, c^2 P e_axis).
inline RadState physical_flux(const RadState& s, const PressureTensor& P, double c,
                              Axis axis) {
    if (axis == Axis::x) return {s.F.x, {c * c * P.xx, c * c * P.xy}};
    return {s.F.y, {c * c * P.xy, c * c * P.yy}};
}

/// Rusanov (local Lax-Friedrichs) interface flux with wave speed c:
/// 1/2 (f(l) + f(r)) - c/2 (r - l).
inline RadState rusanov_flux(const RadState& l, const RadState& r,
                             const PhysicalConstants& pc, Axis axis) {
    const RadState fl = physical_flux(l, pressure_tensor(l, pc), pc.c, axis);
    const RadState fr = physical_flux(r, pressure_tensor(r, pc), pc.c, axis);
    return 0.5 * (fl + fr) - (0.5 * pc.c) * (r - l);
}

struct ExplicitWorkspace {
    explicit ExplicitWorkspace(const Field& f)
        : fx(static_cast<std::size_t>(f.grid().nx + 1) * f.grid().ny),
          fy(static_cast<std::size_t>(f.grid().nx) * (f.grid().ny + 1)) {}

    std::vector<RadState> fx;  ///< x faces, index j * (nx + 1) + i for face i-1/2
    std::vector<RadState> fy;  ///< y faces, index j * nx + i for face j-1/2
};

/// One forward Euler step of size dt with unsplit Rusanov fluxes. Each
/// interface flux is computed once and applied to both sides, so periodic
/// runs conserve total energy to roundoff. Throws AdmissibilityError if an
/// updated cell leaves the admissible cone (CFL too large).
void explicit_step(Field& v, double dt, const PhysicalConstants& pc,
                   ExplicitWorkspace& ws, SweepCounters* counters = nullptr);

}  // namespace m1gmg
