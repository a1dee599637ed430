#pragma once

#include "m1gmg/closure.hpp"
#include "m1gmg/state.hpp"

namespace m1gmg {

/// Backward Euler Rusanov system for one level, in cellwise form
///   A(v)_i = D v_i - sum over neighbors of L/R(v_neighbor),
/// with scalar diagonal D = 1 + dim c dt / h. With tau_aug > 0 the struct
/// instead represents I + tau_aug A, which keeps the same neighbor structure
/// scaled by tau_aug and shifts the diagonal to 1 + tau_aug D.
struct ImplicitOperator {
    PhysicalConstants pc{};
    double dt = 0.0;
    double h = 0.0;
    int dim = 2;
    double tau_aug = 0.0;

    double coef() const { return 0.5 * dt / h; }
    double diag_plain() const { return 1.0 + dim * pc.c * dt / h; }
    double diag() const { return tau_aug > 0.0 ? 1.0 + tau_aug * diag_plain() : diag_plain(); }
    double off_scale() const { return tau_aug > 0.0 ? tau_aug : 1.0; }

    ImplicitOperator augmented(double tau) const {
        ImplicitOperator o = *this;
        o.tau_aug = tau;
        return o;
    }
};

enum class Axis { x, y };

/// Coupling a cell exerts on its right (x) or upper (y) neighbor:
/// energy row (dt/2h)(c E + F_axis), flux rows (c dt/2h)(F + c P e_axis).
/// Maps the admissible cone into itself (closed under the flux bound).
inline RadState op_L(const RadState& s, const PressureTensor& P, double coef, double c,
                     Axis axis) {
    if (axis == Axis::x)
        return {coef * (c * s.E + s.F.x),
                {c * coef * (s.F.x + c * P.xx), c * coef * (s.F.y + c * P.xy)}};
    return {coef * (c * s.E + s.F.y),
            {c * coef * (s.F.x + c * P.xy), c * coef * (s.F.y + c * P.yy)}};
}

/// Coupling on the left (x) or lower (y) neighbor, with the opposite signs:
/// energy row (dt/2h)(c E - F_axis), flux rows (c dt/2h)(F - c P e_axis).
inline RadState op_R(const RadState& s, const PressureTensor& P, double coef, double c,
                     Axis axis) {
    if (axis == Axis::x)
        return {coef * (c * s.E - s.F.x),
                {c * coef * (s.F.x - c * P.xx), c * coef * (s.F.y - c * P.xy)}};
    return {coef * (c * s.E - s.F.y),
            {c * coef * (s.F.x - c * P.xy), c * coef * (s.F.y - c * P.yy)}};
}

inline RadState op_L(const RadState& s, const PhysicalConstants& pc, double coef, Axis axis) {
    return op_L(s, pressure_tensor(s, pc), coef, pc.c, axis);
}

inline RadState op_R(const RadState& s, const PhysicalConstants& pc, double coef, Axis axis) {
    return op_R(s, pressure_tensor(s, pc), coef, pc.c, axis);
}

/// op_L / op_R of one cell for every direction, evaluated once per sweep and
/// gathered by the neighbors.
struct CellContribution {
    RadState lx, rx, ly, ry;
};

inline CellContribution cell_contributions(const RadState& s, const ImplicitOperator& op) {
    const PressureTensor P = pressure_tensor(s, op.pc);
    const double coef = op.coef();
    CellContribution out;
    out.lx = op_L(s, P, coef, op.pc.c, Axis::x);
    out.rx = op_R(s, P, coef, op.pc.c, Axis::x);
    if (op.dim == 2) {
        out.ly = op_L(s, P, coef, op.pc.c, Axis::y);
        out.ry = op_R(s, P, coef, op.pc.c, Axis::y);
    }
    return out;
}

}  // namespace m1gmg
