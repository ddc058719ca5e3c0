#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "liouville/surface.hpp"

using namespace liouville;

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

std::vector<double> uniform_grid(double lo, double hi, int n) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) {
        g[i] = lo + (hi - lo) * i / (n - 1);
    }
    return g;
}

// test-side finite-difference oracle, independent of derivative_selfcheck
double fd_error(const SurfaceProfile& p, int order, double x, double h) {
    auto lower = [&](double t) {
        return order == 1 ? p.value(t) : order == 2 ? p.deriv1(t) : p.deriv2(t);
    };
    auto closed = [&](double t) {
        return order == 1 ? p.deriv1(t) : order == 2 ? p.deriv2(t) : p.deriv3(t);
    };
    const double fd = (lower(x + h) - lower(x - h)) / (2.0 * h);
    return std::abs(fd - closed(x)) / std::max(1.0, std::abs(closed(x)));
}

}  // namespace

TEST_CASE("perturbed revolution profile values") {
    const SurfaceProfile f = SurfaceProfile::perturbed_revolution(0.125);
    CHECK(f.value(0.0) == doctest::Approx(64.0 / 81.0).epsilon(1e-14));
    CHECK(f.deriv1(0.0) == 0.0);
    CHECK(f.mu() == 0.125);

    // second derivative at 0: 2 mu / (1 + mu)^3
    CHECK(f.deriv2(0.0) == doctest::Approx(0.25 / (1.125 * 1.125 * 1.125)).epsilon(1e-14));

    // dense-grid max of |f''| stays below 2 mu (1 + mu)(1 - mu)^{-4} = 1152/2401
    double max_f2 = 0.0;
    for (double x : uniform_grid(0.0, kTwoPi, 20001)) {
        max_f2 = std::max(max_f2, std::abs(f.deriv2(x)));
    }
    CHECK(max_f2 <= 1152.0 / 2401.0);
    CHECK(max_f2 > 0.3);  // attained near x = pi, not a vacuous bound
}

TEST_CASE("perturbed revolution parameter gate") {
    CHECK_THROWS_AS(SurfaceProfile::perturbed_revolution(0.3), std::invalid_argument);
    CHECK_THROWS_AS(SurfaceProfile::perturbed_revolution(0.0), std::invalid_argument);
    CHECK_THROWS_AS(SurfaceProfile::perturbed_revolution(-0.1), std::invalid_argument);
    CHECK_NOTHROW(SurfaceProfile::perturbed_revolution(0.3, true));
    const SurfaceProfile rev = SurfaceProfile::perturbed_revolution(0.0, true);
    CHECK(rev.value(1.7) == 1.0);
    CHECK(rev.deriv1(1.7) == 0.0);
    CHECK_THROWS_AS(SurfaceProfile::perturbed_revolution(1.0, true), std::invalid_argument);
}

TEST_CASE("periodicity of f on a 1000-point grid") {
    const SurfaceProfile f = SurfaceProfile::perturbed_revolution(0.125);
    double worst = 0.0;
    for (double x : uniform_grid(-10.0, 10.0, 1000)) {
        worst = std::max(worst, std::abs(f.value(x + kTwoPi) - f.value(x)));
    }
    CHECK(worst <= 1e-14);
}

TEST_CASE("bound suite holds for mu across (0, 1/4)") {
    for (double mu : {0.01, 0.05, 0.125, 0.2, 0.24, 0.2499}) {
        const SurfaceProfile f = SurfaceProfile::perturbed_revolution(mu);
        const double om = 1.0 - mu;
        double m0 = 0, m1 = 0, m2 = 0, m3 = 0;
        for (double x : uniform_grid(0.0, kTwoPi, 20001)) {
            m0 = std::max(m0, std::abs(f.value(x)));
            m1 = std::max(m1, std::abs(f.deriv1(x)));
            m2 = std::max(m2, std::abs(f.deriv2(x)));
            m3 = std::max(m3, std::abs(f.deriv3(x)));
        }
        CHECK(m0 <= 1.0 / (om * om));
        CHECK(m1 <= 2.0 * mu / (om * om * om));
        CHECK(m2 <= 2.0 * mu * (1.0 + mu) / (om * om * om * om));
        CHECK(m3 <= 2.0 * mu * (1.0 + 4.0 * mu) / (om * om * om * om * om));
        // coarse constants
        CHECK(m0 <= 2.0);
        CHECK(m1 <= 2.0);
        CHECK(m2 <= 2.0);
        CHECK(m3 <= 5.0);
    }
}

TEST_CASE("third derivative agrees with finite differences") {
    const SurfaceProfile f = SurfaceProfile::perturbed_revolution(0.125);
    for (double x : uniform_grid(-3.0, 9.0, 61)) {
        CHECK(fd_error(f, 3, x, 1e-5) < 1e-6);
    }
}

TEST_CASE("quartic well values and derivatives") {
    const SurfaceProfile g1 = SurfaceProfile::quartic_well(1.0);
    CHECK(g1.value(0.0) == 0.0);
    CHECK(g1.deriv1(0.0) == 0.0);
    CHECK(g1.deriv2(0.0) == 2.0);
    CHECK(g1.value(1.0) == 0.0);
    CHECK(g1.deriv3(0.5) == -12.0);
    CHECK(g1.amplitude() == 1.0);

    const SurfaceProfile gh = SurfaceProfile::quartic_well(0.5);
    CHECK(gh.value(0.5) == 0.0);  // root of y^2 (1 - 4 y^2)

    CHECK_THROWS_AS(SurfaceProfile::quartic_well(0.0), std::invalid_argument);
    CHECK_THROWS_AS(SurfaceProfile::quartic_well(-1.0), std::invalid_argument);
}

TEST_CASE("quartic well matches the well induced by c sech") {
    // g(y) = (d/dy gamma^{-1}(y))^{-2} for gamma(x) = c sech x, recovered by
    // numerically inverting gamma on a grid.
    const double c = 0.5;
    const SurfaceProfile g = SurfaceProfile::quartic_well(c);
    auto gamma = [&](double x) { return c / std::cosh(x); };
    auto gamma_inv = [&](double y) {
        double lo = 0.0, hi = 30.0;
        for (int i = 0; i < 200; ++i) {
            const double mid = 0.5 * (lo + hi);
            (gamma(mid) > y ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    };
    for (double y : uniform_grid(0.05, 0.45, 17)) {
        const double d = 1e-5;
        const double dinv = (gamma_inv(y + d) - gamma_inv(y - d)) / (2.0 * d);
        const double induced = 1.0 / (dinv * dinv);
        CHECK(induced == doctest::Approx(g.value(y)).epsilon(1e-5));
    }
}

TEST_CASE("derivative selfcheck") {
    const SurfaceProfile f = SurfaceProfile::perturbed_revolution(0.125);
    const auto grid = uniform_grid(0.0, kTwoPi, 101);
    CHECK(derivative_selfcheck(f, 1, grid, 1e-5) < 1e-8);
    CHECK(derivative_selfcheck(f, 2, grid, 1e-5) < 1e-7);

    const SurfaceProfile c = SurfaceProfile::constant(3.5);
    CHECK(derivative_selfcheck(c, 1, grid, 1e-5) == 0.0);
    CHECK(derivative_selfcheck(c, 2, grid, 1e-5) == 0.0);
    CHECK(derivative_selfcheck(c, 3, grid, 1e-5) == 0.0);

    const SurfaceProfile q = SurfaceProfile::quartic_well(1.0);
    const auto ygrid = uniform_grid(-0.95, 0.95, 101);
    CHECK(derivative_selfcheck(q, 3, ygrid, 1e-4) < 1e-6);

    CHECK_THROWS_AS(derivative_selfcheck(f, 1, std::span<const double>{}, 1e-5),
                    std::invalid_argument);
    CHECK_THROWS_AS(derivative_selfcheck(f, 0, grid, 1e-5), std::invalid_argument);
    CHECK_THROWS_AS(derivative_selfcheck(f, 1, grid, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(derivative_selfcheck(f, 1, grid, 0.0), std::invalid_argument);
}

TEST_CASE("custom profiles") {
    auto v = [](double t) { return t * t; };
    auto d1 = [](double t) { return 2.0 * t; };
    auto d2 = [](double) { return 2.0; };
    auto d3 = [](double) { return 0.0; };
    const SurfaceProfile p = SurfaceProfile::custom(v, d1, d2, d3);
    CHECK(p.value(3.0) == 9.0);
    CHECK(p.kind() == ProfileKind::Custom);
    const auto grid = uniform_grid(-1.0, 1.0, 11);
    CHECK(derivative_selfcheck(p, 1, grid, 1e-5) < 1e-6);

    CHECK_THROWS_AS(SurfaceProfile::custom(nullptr, d1, d2, d3), std::invalid_argument);
}

TEST_CASE("surface positivity check") {
    CHECK_NOTHROW(make_perturbed_torus(0.125));
    CHECK_NOTHROW(make_flat_torus());

    // g >= 0 on the strip while f dips to -0.1: A hits zero
    CHECK_THROWS_AS(LiouvilleSurface(SurfaceProfile::constant(-0.1),
                                     SurfaceProfile::quartic_well(1.0)),
                    std::invalid_argument);
    CHECK_THROWS_AS(LiouvilleSurface(SurfaceProfile::constant(1.0),
                                     SurfaceProfile::constant(0.0), Interval{1.0, -1.0}),
                    std::invalid_argument);

    // the perturbed family keeps A > 1/2 for mu < 1/4 (g >= 0 >= -1/2, f > 1/2)
    const LiouvilleSurface s = make_perturbed_torus(0.24);
    double min_A = 1e300;
    for (double x : uniform_grid(0.0, kTwoPi, 2001)) {
        for (double y : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
            min_A = std::min(min_A, s.conformal_factor(x, y));
        }
    }
    CHECK(min_A > 0.5);
}
