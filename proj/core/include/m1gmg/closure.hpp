#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "m1gmg/state.hpp"

namespace m1gmg {

/// Reduced fluxes above 1 + kReducedFluxTol are rejected; anything between 1
/// and that bound is treated as exactly 1 (free streaming reached up to
/// roundoff).
inline constexpr double kReducedFluxTol = 1e-12;

/// Below |F| < kIsotropicEps * c * E the flux direction is considered
/// undefined and the pressure tensor falls back to the isotropic branch.
inline constexpr double kIsotropicEps = 1e-14;

/// Reduced flux f = |F| / (c E). Requires E > 0.
inline double reduced_flux(const RadState& s, const PhysicalConstants& pc) {
    if (s.E <= 0.0) throw std::domain_error("reduced_flux: E must be positive");
    return norm(s.F) / (pc.c * s.E);
}

/// Eddington factor chi(f) = (3 + 4 f^2) / (5 + 2 sqrt(4 - 3 f^2)),
/// monotone from 1/3 (isotropic) to 1 (free streaming).
inline double eddington_chi(double f) {
    if (f < -kReducedFluxTol || f > 1.0 + kReducedFluxTol)
        throw std::domain_error("eddington_chi: reduced flux outside [0, 1]");
    f = std::clamp(f, 0.0, 1.0);
    return (3.0 + 4.0 * f * f) / (5.0 + 2.0 * std::sqrt(4.0 - 3.0 * f * f));
}

/// Symmetric x-y block of the radiative pressure tensor.
struct PressureTensor {
    double xx = 0.0;
    double xy = 0.0;
    double yy = 0.0;

    Vec2 col_x() const { return {xx, xy}; }
    Vec2 col_y() const { return {xy, yy}; }
};

/// M1 closure P = E ((1 - chi)/2 I + (3 chi - 1)/2 n (x) n), n = F/|F|.
/// Coefficients are the 3-space ones; the suppressed z-z entry is
/// (1 - chi)/2 E, so the full three dimensional trace equals E identically
/// and the stored 2x2 trace is (1 + chi)/2 E.
inline PressureTensor pressure_tensor(const RadState& s, const PhysicalConstants& pc) {
    if (s.E <= 0.0) throw std::domain_error("pressure_tensor: E must be positive");
    const double fn = norm(s.F);
    if (fn < kIsotropicEps * pc.c * s.E) {
        const double p = s.E / 3.0;
        return {p, 0.0, p};
    }
    const double chi = eddington_chi(fn / (pc.c * s.E));
    const double a = 0.5 * (1.0 - chi) * s.E;
    const double b = 0.5 * (3.0 * chi - 1.0) * s.E / (fn * fn);
    return {a + b * s.F.x * s.F.x, b * s.F.x * s.F.y, a + b * s.F.y * s.F.y};
}

/// T_r = (E / a_r)^(1/4). Requires E > 0.
inline double radiative_temperature(double E, const PhysicalConstants& pc) {
    if (E <= 0.0) throw std::domain_error("radiative_temperature: E must be positive");
    return std::pow(E / pc.a_r, 0.25);
}

/// Energy density of a black body at temperature T.
inline double blackbody_energy(double T, const PhysicalConstants& pc) {
    return pc.a_r * T * T * T * T;
}

}  // namespace m1gmg
