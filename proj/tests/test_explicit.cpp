#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <array>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "m1gmg/errors.hpp"
#include "m1gmg/explicit_solver.hpp"
#include "m1gmg/problems.hpp"

using namespace m1gmg;
using doctest::Approx;

namespace {

const PhysicalConstants cgs{};

// independent closure and flux evaluation, kept deliberately separate from
// the library formulas
struct Ref {
    double E, Fx, Fy;
};

Ref ref_flux_x(const Ref& s, double c) {
    const double fn = std::sqrt(s.Fx * s.Fx + s.Fy * s.Fy);
    double pxx, pxy;
    if (fn < 1e-14 * c * s.E) {
        pxx = s.E / 3.0;
        pxy = 0.0;
    } else {
        const double f = fn / (c * s.E);
        const double chi = (3.0 + 4.0 * f * f) / (5.0 + 2.0 * std::sqrt(4.0 - 3.0 * f * f));
        const double a = 0.5 * (1.0 - chi) * s.E;
        const double b = 0.5 * (3.0 * chi - 1.0) * s.E / (fn * fn);
        pxx = a + b * s.Fx * s.Fx;
        pxy = b * s.Fx * s.Fy;
    }
    return {s.Fx, c * c * pxx, c * c * pxy};
}

}  // namespace

TEST_CASE("physical flux examples") {
    const double c = cgs.c;
    RadState s{1.0, {0.0, 0.0}};
    RadState fx = physical_flux(s, pressure_tensor(s, cgs), c, Axis::x);
    CHECK(fx.E == 0.0);
    CHECK(fx.F.x == c * c * (1.0 / 3.0));
    CHECK(fx.F.y == 0.0);
    RadState fy = physical_flux(s, pressure_tensor(s, cgs), c, Axis::y);
    CHECK(fy.E == 0.0);
    CHECK(fy.F.y == c * c * (1.0 / 3.0));

    s = {1.0, {c, 0.0}};
    fx = physical_flux(s, pressure_tensor(s, cgs), c, Axis::x);
    CHECK(fx.E == c);
    CHECK(fx.F.x == Approx(c * c).epsilon(1e-14));
    CHECK(fx.F.y == 0.0);
}

TEST_CASE("interface flux is consistent") {
    std::mt19937 rng(11);
    for (int t = 0; t < 100; ++t) {
        const RadState s = testutil::random_admissible(rng, cgs, 0.999);
        for (Axis ax : {Axis::x, Axis::y}) {
            const RadState f = physical_flux(s, pressure_tensor(s, cgs), cgs.c, ax);
            const RadState g = rusanov_flux(s, s, cgs, ax);
            CHECK(g.E == f.E);
            CHECK(g.F.x == f.F.x);
            CHECK(g.F.y == f.F.y);
        }
    }
}

TEST_CASE("mirror states carry no net energy flux") {
    std::mt19937 rng(12);
    for (int t = 0; t < 100; ++t) {
        const RadState l = testutil::random_admissible(rng, cgs, 0.999);
        const RadState r{l.E, {-l.F.x, l.F.y}};
        CHECK(rusanov_flux(l, r, cgs, Axis::x).E == 0.0);
    }
}

TEST_CASE("uniform periodic field is an exact fixed point") {
    const GridLevel g{8, 8, 0.125, 0.0, 0.0, 0};
    const RadState u0{2.5, {0.3 * cgs.c, -0.4 * cgs.c}};
    Field f = testutil::uniform_field(g, periodic_bc(), u0);
    ExplicitWorkspace ws(f);
    const double dt = 0.45 * g.h / cgs.c;
    for (int k = 0; k < 3; ++k) explicit_step(f, dt, cgs, ws);
    for (int j = 0; j < 8; ++j)
        for (int i = 0; i < 8; ++i) {
            CHECK(f.at(i, j).E == u0.E);
            CHECK(f.at(i, j).F.x == u0.F.x);
            CHECK(f.at(i, j).F.y == u0.F.y);
        }
}

TEST_CASE("one dimensional update matches a hand rolled oracle") {
    const PhysicalConstants pc{1.0, 1.0};
    const int nx = 8;
    const GridLevel g{nx, 1, 1.0 / nx, 0.0, 0.0, 0};
    Field f(g, zero_gradient_bc());
    for (int i = 0; i < nx; ++i)
        f.at(i, 0) = i < nx / 2 ? RadState{1.0, {0.3, 0.2}} : RadState{0.5, {-0.2, 0.1}};

    std::vector<Ref> u(nx);
    for (int i = 0; i < nx; ++i) u[i] = {f.at(i, 0).E, f.at(i, 0).F.x, f.at(i, 0).F.y};

    ExplicitWorkspace ws(f);
    const double dt = 0.5 * g.h / pc.c;
    for (int step = 0; step < 2; ++step) {
        explicit_step(f, dt, pc, ws);

        // oracle: ghost copies, one Rusanov flux per interface, conservative update
        std::vector<Ref> ext(nx + 2);
        for (int i = 0; i < nx; ++i) ext[i + 1] = u[i];
        ext[0] = u[0];
        ext[nx + 1] = u[nx - 1];
        std::vector<Ref> flux(nx + 1);
        for (int k = 0; k <= nx; ++k) {
            const Ref& l = ext[k];
            const Ref& r = ext[k + 1];
            const Ref fl = ref_flux_x(l, pc.c);
            const Ref fr = ref_flux_x(r, pc.c);
            flux[k] = {0.5 * (fl.E + fr.E) - 0.5 * pc.c * (r.E - l.E),
                       0.5 * (fl.Fx + fr.Fx) - 0.5 * pc.c * (r.Fx - l.Fx),
                       0.5 * (fl.Fy + fr.Fy) - 0.5 * pc.c * (r.Fy - l.Fy)};
        }
        const double lam = dt / g.h;
        for (int i = 0; i < nx; ++i) {
            u[i].E -= lam * (flux[i + 1].E - flux[i].E);
            u[i].Fx -= lam * (flux[i + 1].Fx - flux[i].Fx);
            u[i].Fy -= lam * (flux[i + 1].Fy - flux[i].Fy);
        }

        for (int i = 0; i < nx; ++i) {
            CHECK(f.at(i, 0).E == Approx(u[i].E).epsilon(1e-13));
            CHECK(f.at(i, 0).F.x == Approx(u[i].Fx).epsilon(1e-13));
            CHECK(f.at(i, 0).F.y == Approx(u[i].Fy).epsilon(1e-13));
        }
    }
}

TEST_CASE("periodic march conserves the totals") {
    const ProblemSpec spec = riemann_spec(32, 32, cgs, BCKind::periodic);
    Field f = initial_field(spec);
    ExplicitWorkspace ws(f);
    const double e0 = total_energy(f);
    double fx0 = 0.0, fy0 = 0.0;
    for (int j = 0; j < 32; ++j)
        for (int i = 0; i < 32; ++i) {
            fx0 += f.at(i, j).F.x;
            fy0 += f.at(i, j).F.y;
        }

    const double dt = 0.45 * spec.grid.h / cgs.c;
    for (int k = 0; k < 5; ++k) {
        explicit_step(f, dt, cgs, ws);
        double e = 0.0, fx = 0.0, fy = 0.0;
        for (int j = 0; j < 32; ++j)
            for (int i = 0; i < 32; ++i) {
                e += f.at(i, j).E;
                fx += f.at(i, j).F.x;
                fy += f.at(i, j).F.y;
            }
        CHECK(std::abs(e - e0) <= 1e-13 * e0);
        CHECK(std::abs(fx - fx0) <= 1e-13 * cgs.c * e0);
        CHECK(std::abs(fy - fy0) <= 1e-13 * cgs.c * e0);
    }
}

TEST_CASE("march within the stability bound stays admissible") {
    const ProblemSpec spec = riemann_spec(64, 64, cgs, BCKind::periodic);
    Field f = initial_field(spec);
    ExplicitWorkspace ws(f);
    const double dt = 0.45 * spec.grid.h / cgs.c;
    for (int k = 0; k < 30; ++k) explicit_step(f, dt, cgs, ws);
    validate_admissible(f, cgs, 0.0, "after march");

    const ProblemSpec beam = beam_spec(32, 32, cgs);
    Field bf = initial_field(beam);
    ExplicitWorkspace bws(bf);
    const double bdt = 0.45 * beam.grid.h / cgs.c;
    for (int k = 0; k < 30; ++k) explicit_step(bf, bdt, cgs, bws);
    validate_admissible(bf, cgs, kAdmissibleTol, "after beam march");
}

TEST_CASE("a large time step trips the admissibility guard") {
    const ProblemSpec spec = riemann_spec(64, 64, cgs, BCKind::periodic);
    Field f = initial_field(spec);
    ExplicitWorkspace ws(f);
    const double dt = 0.9 * spec.grid.h / cgs.c;
    auto march = [&] {
        for (int k = 0; k < 400; ++k) explicit_step(f, dt, cgs, ws);
    };
    CHECK_THROWS_AS(march(), AdmissibilityError);
}
