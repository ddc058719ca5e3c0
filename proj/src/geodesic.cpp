#include "liouville/geodesic.hpp"

#include <cmath>
#include <stdexcept>

namespace liouville {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

double hamiltonian(const LiouvilleSurface& s, const PhasePoint& z) {
    const double A = s.conformal_factor(z.x, z.y);
    return (z.p_x * z.p_x + z.p_y * z.p_y) / (2.0 * A);
}

double second_integral(const LiouvilleSurface& s, const PhasePoint& z) {
    const double A = s.conformal_factor(z.x, z.y);
    const double p2 = z.p_x * z.p_x + z.p_y * z.p_y;
    return z.p_x * z.p_x - s.f().value(z.x) * p2 / A;
}

double clairaut_constant(const LiouvilleSurface& s, const PhasePoint& z) {
    const double p2 = z.p_x * z.p_x + z.p_y * z.p_y;
    if (!(hamiltonian(s, z) > 0.0)) {
        throw std::invalid_argument("clairaut_constant: H must be positive");
    }
    return (s.g().value(z.y) * z.p_x * z.p_x - s.f().value(z.x) * z.p_y * z.p_y) / p2;
}

PhasePoint vector_field(const LiouvilleSurface& s, const PhasePoint& z) {
    const double A = s.conformal_factor(z.x, z.y);
    const double p2 = z.p_x * z.p_x + z.p_y * z.p_y;
    const double A2 = A * A;
    return PhasePoint{z.p_x / A, z.p_y / A, p2 * s.f().deriv1(z.x) / (2.0 * A2),
                      p2 * s.g().deriv1(z.y) / (2.0 * A2)};
}

Trajectory integrate_geodesic(const LiouvilleSurface& s, const PhasePoint& z0,
                              double t_end, double h) {
    if (!(h > 0.0) || !(t_end > 0.0)) {
        throw std::invalid_argument("integrate_geodesic: h and t_end must be positive");
    }
    if (z0.p_x == 0.0 && z0.p_y == 0.0) {
        throw std::invalid_argument("integrate_geodesic: zero initial momentum");
    }

    Trajectory traj;
    traj.step = h;
    traj.H0 = hamiltonian(s, z0);
    traj.F0 = second_integral(s, z0);

    const long n = std::max(1L, std::lround(t_end / h));
    traj.t.reserve(n + 1);
    traj.state.reserve(n + 1);
    traj.t.push_back(0.0);
    traj.state.push_back(z0);

    PhasePoint z = z0;
    for (long i = 0; i < n; ++i) {
        const PhasePoint k1 = vector_field(s, z);
        const PhasePoint z2{z.x + 0.5 * h * k1.x, z.y + 0.5 * h * k1.y,
                            z.p_x + 0.5 * h * k1.p_x, z.p_y + 0.5 * h * k1.p_y};
        const PhasePoint k2 = vector_field(s, z2);
        const PhasePoint z3{z.x + 0.5 * h * k2.x, z.y + 0.5 * h * k2.y,
                            z.p_x + 0.5 * h * k2.p_x, z.p_y + 0.5 * h * k2.p_y};
        const PhasePoint k3 = vector_field(s, z3);
        const PhasePoint z4{z.x + h * k3.x, z.y + h * k3.y, z.p_x + h * k3.p_x,
                            z.p_y + h * k3.p_y};
        const PhasePoint k4 = vector_field(s, z4);

        z.x += h / 6.0 * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x);
        z.y += h / 6.0 * (k1.y + 2.0 * k2.y + 2.0 * k3.y + k4.y);
        z.p_x += h / 6.0 * (k1.p_x + 2.0 * k2.p_x + 2.0 * k3.p_x + k4.p_x);
        z.p_y += h / 6.0 * (k1.p_y + 2.0 * k2.p_y + 2.0 * k3.p_y + k4.p_y);

        traj.t.push_back((i + 1) * h);
        traj.state.push_back(z);

        if (!s.in_strip(z.y)) {
            traj.truncated = true;
            break;
        }
    }
    return traj;
}

HyperbolicityResult hyperbolicity_check(const LiouvilleSurface& s, int grid_size) {
    if (grid_size < 2) {
        throw std::invalid_argument("hyperbolicity_check: grid_size must be >= 2");
    }
    const double g1_axis = s.g().deriv1(0.0);
    const double g2_axis = s.g().deriv2(0.0);

    double margin = 0.0;
    for (int i = 0; i < grid_size; ++i) {
        const double x = kTwoPi * i / grid_size;
        const double f = s.f().value(x);
        if (!(f > 0.0)) {
            throw std::domain_error("hyperbolicity_check: f <= 0 on the axis");
        }
        const double f1 = s.f().deriv1(x);
        const double crit = g2_axis - f1 * f1 / f + s.f().deriv2(x);
        margin = (i == 0) ? crit : std::min(margin, crit);
    }
    const bool ok = std::abs(g1_axis) <= 1e-12 && margin > 0.0;
    return HyperbolicityResult{ok, margin};
}

PhasePoint unit_level_state(const LiouvilleSurface& s, double x, double y, double theta) {
    const double A = s.conformal_factor(x, y);
    const double r = std::sqrt(2.0 * A);  // H = (p_x^2 + p_y^2)/(2A) = 1
    return PhasePoint{x, y, r * std::sin(theta), r * std::cos(theta)};
}

}  // namespace liouville
