#pragma once

#include <cmath>
#include <random>

#include "m1gmg/mesh.hpp"
#include "m1gmg/state.hpp"

namespace m1gmg::testutil {

inline constexpr double kTwoPi = 6.283185307179586;

inline RadState random_admissible(std::mt19937& rng, const PhysicalConstants& pc,
                                  double fmax = 0.95) {
    std::uniform_real_distribution<double> ud(0.0, 1.0);
    const double E = 0.5 + 1.5 * ud(rng);
    const double f = fmax * ud(rng);
    const double th = kTwoPi * ud(rng);
    return {E, {f * pc.c * E * std::cos(th), f * pc.c * E * std::sin(th)}};
}

inline Field random_admissible_field(const GridLevel& g, const BoundaryCondition& bc,
                                     const PhysicalConstants& pc, unsigned seed,
                                     double fmax = 0.95) {
    std::mt19937 rng(seed);
    Field f(g, bc);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) f.at(i, j) = random_admissible(rng, pc, fmax);
    return f;
}

// smooth admissible field for fixed-point style checks, where roughness would
// only add roundoff noise
inline Field smooth_field(const GridLevel& g, const BoundaryCondition& bc,
                          const PhysicalConstants& pc, double fmax = 0.5) {
    Field f(g, bc);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const double x = (i + 0.5) / g.nx;
            const double y = (j + 0.5) / g.ny;
            const double E = 1.0 + 0.5 * std::sin(kTwoPi * x) * std::cos(kTwoPi * y);
            const double fr = fmax * (0.5 + 0.5 * std::sin(kTwoPi * (x + y)));
            const double th = kTwoPi * (x - y);
            f.at(i, j) = {E, {fr * pc.c * E * std::cos(th), fr * pc.c * E * std::sin(th)}};
        }
    return f;
}

inline Field uniform_field(const GridLevel& g, const BoundaryCondition& bc,
                           const RadState& s) {
    Field f(g, bc);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) f.at(i, j) = s;
    return f;
}

inline double max_rel_diff(const Field& a, const Field& b, const PhysicalConstants& pc) {
    const GridLevel& g = a.grid();
    double m = 0.0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const RadState& x = a.at(i, j);
            const RadState& y = b.at(i, j);
            const double sc = std::abs(x.E) + norm(x.F) / pc.c + 1e-300;
            m = std::max(m, (std::abs(x.E - y.E) + norm(x.F - y.F) / pc.c) / sc);
        }
    return m;
}

inline bool bitwise_equal(const Field& a, const Field& b) {
    const GridLevel& g = a.grid();
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const RadState& x = a.at(i, j);
            const RadState& y = b.at(i, j);
            if (x.E != y.E || x.F.x != y.F.x || x.F.y != y.F.y) return false;
        }
    return true;
}

}  // namespace m1gmg::testutil
