#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "helpers.hpp"
#include "m1gmg/closure.hpp"
#include "m1gmg/constants.hpp"
#include "m1gmg/state.hpp"

using namespace m1gmg;
using doctest::Approx;

namespace {
const PhysicalConstants cgs{};
}

TEST_CASE("reduced flux basics") {
    const double c = cgs.c;
    CHECK(reduced_flux({1.0, {0.0, 0.0}}, cgs) == 0.0);
    CHECK(reduced_flux({1.0, {c, 0.0}}, cgs) == Approx(1.0).epsilon(1e-15));
    CHECK(reduced_flux({2.0, {0.0, c}}, cgs) == Approx(0.5).epsilon(1e-15));
    CHECK(reduced_flux({4.0, {3.0 * c, 4.0 * c}}, cgs) == Approx(1.25).epsilon(1e-15));
    CHECK_THROWS_AS(reduced_flux({0.0, {0.0, 0.0}}, cgs), std::domain_error);
    CHECK_THROWS_AS(reduced_flux({-1.0, {0.0, 0.0}}, cgs), std::domain_error);
}

TEST_CASE("eddington factor endpoints and frozen value") {
    CHECK(eddington_chi(0.0) == 1.0 / 3.0);
    CHECK(eddington_chi(1.0) == 1.0);
    // frozen from a 50-digit evaluation of (3 + 4 f^2) / (5 + 2 sqrt(4 - 3 f^2))
    CHECK(eddington_chi(0.5) == Approx(0.46481624151200357).epsilon(1e-15));
    CHECK(eddington_chi(0.3) == Approx(0.3791194722781356).epsilon(1e-15));
    CHECK(eddington_chi(0.75) == Approx(0.6528729116169634).epsilon(1e-15));
}

TEST_CASE("eddington factor is monotone and bounded") {
    double prev = eddington_chi(0.0);
    for (int k = 1; k <= 2000; ++k) {
        const double f = k / 2000.0;
        const double chi = eddington_chi(f);
        CHECK(chi >= prev);
        CHECK(chi >= 1.0 / 3.0);
        CHECK(chi <= 1.0);
        prev = chi;
    }
}

TEST_CASE("eddington factor clamps roundoff overshoot only") {
    CHECK(eddington_chi(1.0 + 5e-13) == 1.0);
    CHECK(eddington_chi(-5e-13) == 1.0 / 3.0);
    CHECK_THROWS_AS(eddington_chi(1.0 + 1e-11), std::domain_error);
    CHECK_THROWS_AS(eddington_chi(-1e-3), std::domain_error);
}

TEST_CASE("pressure tensor limits") {
    const double c = cgs.c;

    // isotropic: P = E/3 I, including tiny fluxes below the direction cutoff
    PressureTensor P = pressure_tensor({3.0, {0.0, 0.0}}, cgs);
    CHECK(P.xx == 1.0);
    CHECK(P.xy == 0.0);
    CHECK(P.yy == 1.0);
    P = pressure_tensor({1.0, {1e-20 * c, 0.0}}, cgs);
    CHECK(P.xx == 1.0 / 3.0);
    CHECK(P.xy == 0.0);
    CHECK(P.yy == 1.0 / 3.0);

    // free streaming along x: P = E n (x) n
    P = pressure_tensor({1.0, {c, 0.0}}, cgs);
    CHECK(P.xx == Approx(1.0).epsilon(1e-14));
    CHECK(P.xy == 0.0);
    CHECK(P.yy == 0.0);

    CHECK_THROWS_AS(pressure_tensor({0.0, {0.0, 0.0}}, cgs), std::domain_error);
}

TEST_CASE("pressure tensor at half reduced flux") {
    // frozen: chi(1/2) and (1 - chi(1/2))/2 at 50 digits
    const PressureTensor P = pressure_tensor({1.0, {0.5 * cgs.c, 0.0}}, cgs);
    CHECK(P.xx == Approx(0.46481624151200357).epsilon(1e-14));
    CHECK(P.xy == 0.0);
    CHECK(P.yy == Approx(0.26759187924399822).epsilon(1e-14));
}

TEST_CASE("pressure tensor trace convention") {
    std::mt19937 rng(41);
    for (int t = 0; t < 200; ++t) {
        const RadState s = testutil::random_admissible(rng, cgs, 0.999);
        const double chi = eddington_chi(reduced_flux(s, cgs));
        const PressureTensor P = pressure_tensor(s, cgs);
        // stored block traces to (1 + chi)/2 E; with the suppressed
        // out-of-plane entry (1 - chi)/2 E the full trace is E
        CHECK(P.xx + P.yy == Approx(0.5 * (1.0 + chi) * s.E).epsilon(1e-13));
        CHECK(P.xx + P.yy + 0.5 * (1.0 - chi) * s.E == Approx(s.E).epsilon(1e-13));
    }
}

TEST_CASE("pressure tensor rotation equivariance") {
    std::mt19937 rng(42);
    for (int t = 0; t < 200; ++t) {
        const RadState s = testutil::random_admissible(rng, cgs, 0.999);
        const RadState r{s.E, {-s.F.y, s.F.x}};  // rotate F by 90 degrees
        const PressureTensor P = pressure_tensor(s, cgs);
        const PressureTensor Q = pressure_tensor(r, cgs);
        CHECK(Q.xx == P.yy);
        CHECK(Q.yy == P.xx);
        CHECK(Q.xy == Approx(-P.xy).epsilon(1e-13));
    }
}

TEST_CASE("pressure tensor is positive semidefinite on admissible states") {
    std::mt19937 rng(43);
    for (int t = 0; t < 500; ++t) {
        const RadState s = testutil::random_admissible(rng, cgs, 1.0 - 1e-9);
        const PressureTensor P = pressure_tensor(s, cgs);
        CHECK(P.xx >= 0.0);
        CHECK(P.yy >= 0.0);
        CHECK(P.xx * P.yy - P.xy * P.xy >= -1e-14 * s.E * s.E);
    }
}

TEST_CASE("admissibility examples") {
    const double c = cgs.c;
    CHECK(is_admissible({1.0, {0.0, 0.0}}, cgs));
    CHECK(is_admissible({1.0, {c, 0.0}}, cgs));  // boundary counts as inside
    CHECK(is_admissible({2.0, {c, c}}, cgs));
    CHECK_FALSE(is_admissible({1.0, {1.001 * c, 0.0}}, cgs));
    CHECK_FALSE(is_admissible({0.0, {0.0, 0.0}}, cgs));
    CHECK_FALSE(is_admissible({-1.0, {0.0, 0.0}}, cgs));
    CHECK(is_admissible({1.0, {1.5 * c, 0.0}}, cgs, 0.6));
    CHECK_FALSE(is_admissible({1.0, {c * (1.0 + 1e-9), 0.0}}, cgs, 0.0));
}

TEST_CASE("admissibility is invariant under positive scaling") {
    std::mt19937 rng(44);
    std::uniform_real_distribution<double> ud(0.0, 1.0);
    for (int t = 0; t < 300; ++t) {
        RadState s = testutil::random_admissible(rng, cgs, 0.99);
        if (t % 2 == 1) s.F = 1.05 * s.F;  // strictly outside the cone
        const bool in = is_admissible(s, cgs);
        for (double lam : {1e-8, 0.37, 1.0, 512.0, 1e8})
            CHECK(is_admissible(lam * s, cgs) == in);
    }
}

TEST_CASE("temperature round trips") {
    CHECK(radiative_temperature(cgs.a_r, cgs) == 1.0);
    CHECK(radiative_temperature(16.0 * cgs.a_r, cgs) == Approx(2.0).epsilon(1e-15));
    CHECK(blackbody_energy(300.0, cgs) == Approx(6.128217e-05).epsilon(1e-14));
    CHECK(blackbody_energy(1000.0, cgs) == Approx(7.5657e-03).epsilon(1e-14));
    CHECK(radiative_temperature(blackbody_energy(300.0, cgs), cgs) ==
          Approx(300.0).epsilon(1e-13));
    CHECK_THROWS_AS(radiative_temperature(0.0, cgs), std::domain_error);
    CHECK_THROWS_AS(radiative_temperature(-1.0, cgs), std::domain_error);
}
