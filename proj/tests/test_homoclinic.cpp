#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "liouville/homoclinic.hpp"
#include "liouville/surface.hpp"

using namespace liouville;

namespace {

// test-side bisection oracle for the apex root u(x) = 0
double apex_root(const HomoclinicOrbit& o, double lo, double hi) {
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (o.u(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("orbit height") {
    const HomoclinicOrbit o0(0.0, 0.125, 1.0);
    CHECK(o0.height(0.0) == 1.0);  // sech 0 = 1

    const HomoclinicOrbit o1(1.0, 0.0, 1.0);
    CHECK(o1.height(10.0) ==
          doctest::Approx(2.0 / (std::exp(11.0) + std::exp(-11.0))).epsilon(1e-12));
    CHECK(o1.height(10.0) == doctest::Approx(3.3403401571e-5).epsilon(1e-9));

    // apex at the unique root of u, height = c there
    const HomoclinicOrbit o(1.0, 0.125, 1.0);
    const double xs = apex_root(o, -2.0, 0.0);
    CHECK(xs == doctest::Approx(-0.901934042042).epsilon(1e-9));
    CHECK(o.height(xs) == doctest::Approx(1.0).epsilon(1e-12));

    const HomoclinicOrbit lower(0.0, 0.125, 1.0, -1);
    CHECK(lower.height(0.0) == -1.0);
}

TEST_CASE("orbit slope") {
    const HomoclinicOrbit o(1.0, 0.125, 1.0);
    const double xs = apex_root(o, -2.0, 0.0);
    CHECK(std::abs(o.slope(xs)) < 1e-12);

    const HomoclinicOrbit o1(1.0, 0.0, 1.0);
    CHECK(o1.slope(0.0) ==
          doctest::Approx(-std::tanh(1.0) / std::cosh(1.0)).epsilon(1e-14));
    CHECK(o1.slope(0.0) == doctest::Approx(-0.493554347565).epsilon(1e-9));

    // |dy/dx| <= (5/4) c sech(u) for mu < 1/4
    const HomoclinicOrbit ob(0.7, 0.24, 1.0);
    for (int i = 0; i <= 400; ++i) {
        const double x = -20.0 + 40.0 * i / 400.0;
        CHECK(std::abs(ob.slope(x)) <= 1.25 / std::cosh(ob.u(x)) + 1e-15);
    }
}

TEST_CASE("orbit parameter validation") {
    CHECK_THROWS_AS(HomoclinicOrbit(0.0, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(HomoclinicOrbit(0.0, 0.1, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(HomoclinicOrbit(0.0, 0.1, 1.0, 2), std::invalid_argument);
    CHECK_NOTHROW(HomoclinicOrbit(0.0, 0.0, 0.5, -1));
}

TEST_CASE("residual identity for the matched well") {
    std::mt19937 rng(31u);
    std::uniform_real_distribution<double> umu(1e-3, 0.2499);
    std::uniform_real_distribution<double> ukap(-3.0, 3.0);
    std::uniform_real_distribution<double> ux(-12.0, 12.0);
    for (double c : {1.0, 0.5}) {
        for (int block = 0; block < 10; ++block) {
            const double mu = umu(rng);
            const LiouvilleSurface s = make_perturbed_torus(mu, c);
            for (int i = 0; i < 100; ++i) {
                const HomoclinicOrbit o(ukap(rng), mu, c);
                CHECK(std::abs(orbit_residual(o, s, ux(rng))) < 1e-12);
            }
        }
    }
}

TEST_CASE("residual exposes the half-sech inconsistency") {
    // (1/2) sech orbit against the y^2(1 - y^2) well: at the apex the slope
    // vanishes but g(1/2)/f(0) = (3/16)(81/64) does not
    const LiouvilleSurface s = make_perturbed_torus(0.125, 1.0);
    const HomoclinicOrbit o(0.0, 0.125, 0.5);
    CHECK(orbit_residual(o, s, 0.0) ==
          doctest::Approx(-0.1875 * 81.0 / 64.0).epsilon(1e-12));
}

TEST_CASE("residual parameter mismatch errors") {
    const LiouvilleSurface s = make_perturbed_torus(0.125);
    CHECK_THROWS_AS(orbit_residual(HomoclinicOrbit(0.0, 0.2, 1.0), s, 0.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(orbit_residual(HomoclinicOrbit(0.0, 0.125, 1.0), make_flat_torus(), 0.0),
                    std::invalid_argument);
}

TEST_CASE("height decay and symmetry") {
    const HomoclinicOrbit o(1.3, 0.2, 1.0);
    const HomoclinicOrbit mirror(-1.3, 0.2, 1.0);
    double prev_u = -1e300;
    for (int i = 0; i <= 500; ++i) {
        const double x = -25.0 + 50.0 * i / 500.0;
        CHECK(o.height(x) <= 2.0 * std::exp(-std::abs(o.u(x))) + 1e-15);
        CHECK(o.height(x) > 0.0);
        CHECK(o.height(x) <= 1.0);
        CHECK(std::abs(o.height(x) - mirror.height(-x)) <= 1e-13);
        CHECK(std::abs(o.slope(x) + mirror.slope(-x)) <= 1e-13);
        CHECK(o.u(x) > prev_u);  // u strictly increasing
        prev_u = o.u(x);
    }
    // tail cap used by the outside-the-window analysis
    const double L = 8.0;
    const double cap = std::exp(2.0 * 0.2 + 2.0 * 1.3) / std::cosh(L);
    for (int i = 0; i <= 100; ++i) {
        CHECK(o.height(L + 15.0 * i / 100.0) <= cap);
    }
}

TEST_CASE("separatrix ODE matches the closed form, mu = 0") {
    const LiouvilleSurface s = make_perturbed_torus(0.0, 1.0, true);
    const HomoclinicOrbit o(1.0, 0.0, 1.0);
    const double x0 = -5.0;  // rising branch: u(x0) = -4
    const auto curve = solve_separatrix_ode(s, x0, o.height(x0), 3.0, 1e-4);
    double worst = 0.0;
    for (const auto& pt : curve) {
        worst = std::max(worst, std::abs(pt.y - o.height(pt.x)));
    }
    CHECK(worst < 1e-6);
}

TEST_CASE("separatrix ODE matches the closed form, mu = 1/8") {
    const LiouvilleSurface s = make_perturbed_torus(0.125, 1.0);
    const HomoclinicOrbit o(1.0, 0.125, 1.0);
    const double x0 = -5.0;
    const auto curve = solve_separatrix_ode(s, x0, o.height(x0), 3.0, 1e-4);
    double worst = 0.0;
    for (const auto& pt : curve) {
        worst = std::max(worst, std::abs(pt.y - o.height(pt.x)));
    }
    CHECK(worst < 1e-5);
    CHECK(curve.front().x == -5.0);
    CHECK(curve.back().x == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("separatrix ODE degenerate and invalid starts") {
    const LiouvilleSurface s = make_perturbed_torus(0.125, 1.0);
    CHECK_THROWS_AS(solve_separatrix_ode(s, 0.0, 1.0, 2.0, 1e-3), std::invalid_argument);
    CHECK_THROWS_AS(solve_separatrix_ode(s, 0.0, 0.0, 2.0, 1e-3), std::invalid_argument);
    CHECK_THROWS_AS(solve_separatrix_ode(s, 0.0, -0.2, 2.0, 1e-3), std::invalid_argument);
    CHECK_THROWS_AS(solve_separatrix_ode(s, 0.0, 0.5, -1.0, 1e-3), std::invalid_argument);
    CHECK_THROWS_AS(solve_separatrix_ode(make_flat_torus(), 0.0, 0.5, 1.0, 1e-3),
                    std::invalid_argument);
}
