#include "m1gmg/problems.hpp"

#include <cmath>

#include "m1gmg/closure.hpp"

namespace m1gmg {

ProblemSpec beam_spec(int nx, int ny, const PhysicalConstants& pc) {
    ProblemSpec spec;
    spec.name = "beam";
    spec.grid = {nx, ny, 2.0 / nx, -1.0, -1.0, 0};
    spec.steady = true;

    const double e_cold = blackbody_energy(300.0, pc);
    const double e_beam = blackbody_energy(1000.0, pc);
    spec.e_ref = e_beam;

    const double s = std::sqrt(0.5);
    RadState beam{e_beam, {s * pc.c * e_beam, s * pc.c * e_beam}};

    spec.bc = zero_gradient_bc();
    spec.bc.left = {BCKind::dirichlet_inflow, -0.875, -0.75, beam};

    spec.init = [e_cold](double, double) { return RadState{e_cold, {0.0, 0.0}}; };
    return spec;
}

ProblemSpec riemann_spec(int nx, int ny, const PhysicalConstants& pc, BCKind side_kind) {
    ProblemSpec spec;
    spec.name = "riemann";
    spec.grid = {nx, ny, 1.0 / nx, 0.0, 0.0, 0};
    spec.steady = false;
    spec.t_final = 1e-11;

    const double e0 = blackbody_energy(1000.0, pc);
    spec.e_ref = e0;
    const double fmag = (1.0 - 1e-8) * pc.c * e0;

    spec.bc = side_kind == BCKind::periodic ? periodic_bc() : zero_gradient_bc();

    spec.init = [e0, fmag](double x, double y) {
        Vec2 dir;
        if (x < 0.5)
            dir = y < 0.5 ? Vec2{1.0, 0.0} : Vec2{0.0, 1.0};
        else
            dir = y < 0.5 ? Vec2{0.0, -1.0} : Vec2{-1.0, 0.0};
        return RadState{e0, fmag * dir};
    };
    return spec;
}

Field initial_field(const ProblemSpec& spec) {
    Field f(spec.grid, spec.bc);
    const GridLevel& g = spec.grid;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) f.at(i, j) = spec.init(g.xc(i), g.yc(j));
    return f;
}

double conservation_error(const Field& f, double reference_total) {
    return std::abs(total_energy(f) - reference_total) / reference_total;
}

std::vector<std::pair<double, double>> midline_cut(const Field& f, double e_norm) {
    const GridLevel& g = f.grid();
    std::vector<std::pair<double, double>> cut;
    cut.reserve(g.nx);
    const int jlo = (g.ny - 1) / 2;
    const int jhi = g.ny / 2;
    for (int i = 0; i < g.nx; ++i) {
        const double e = 0.5 * (f.at(i, jlo).E + f.at(i, jhi).E);
        cut.emplace_back(g.xc(i), e / e_norm);
    }
    return cut;
}

}  // namespace m1gmg
