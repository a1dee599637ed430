#pragma once

#include <cmath>

#include "m1gmg/constants.hpp"

namespace m1gmg {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 a) { return std::sqrt(a.x * a.x + a.y * a.y); }

/// Conserved radiative moments of one cell: energy density E and flux F.
struct RadState {
    double E = 0.0;
    Vec2 F{};
};

inline RadState operator+(const RadState& a, const RadState& b) { return {a.E + b.E, a.F + b.F}; }
inline RadState operator-(const RadState& a, const RadState& b) { return {a.E - b.E, a.F - b.F}; }
inline RadState operator*(double s, const RadState& a) { return {s * a.E, s * a.F}; }

/// Default relative tolerance when checking solver iterates for membership
/// in the admissible cone.
inline constexpr double kAdmissibleTol = 1e-12;

/// True if E > 0 and |F| <= c E (1 + tol). Compared in squared form to keep
/// the per-cell check cheap.
inline bool is_admissible(const RadState& s, const PhysicalConstants& pc,
                          double tol = kAdmissibleTol) {
    if (s.E <= 0.0) return false;
    const double bound = pc.c * s.E * (1.0 + tol);
    return dot(s.F, s.F) <= bound * bound;
}

}  // namespace m1gmg
