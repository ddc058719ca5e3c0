#include "liouville/homoclinic.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace liouville {

namespace {

double sech(double t) {
    return 1.0 / std::cosh(t);  // cosh overflow gives 0, the correct limit
}

// Inverse of y = c sech(w) on w >= 0.
double asech_ratio(double r) {
    r = std::min(r, 1.0);
    return std::log((1.0 + std::sqrt(std::max(0.0, 1.0 - r * r))) / r);
}

void require_matching_family(const HomoclinicOrbit& o, const LiouvilleSurface& s,
                             const char* where) {
    if (s.f().kind() != ProfileKind::PerturbedRevolution ||
        s.g().kind() != ProfileKind::QuarticWell) {
        throw std::invalid_argument(std::string(where) +
                                    ": surface is not the perturbed-revolution family");
    }
    if (s.f().mu() != o.mu()) {
        throw std::invalid_argument(std::string(where) + ": orbit mu " +
                                    std::to_string(o.mu()) + " != surface mu " +
                                    std::to_string(s.f().mu()));
    }
}

}  // namespace

HomoclinicOrbit::HomoclinicOrbit(double kappa, double mu, double amplitude, int branch)
    : kappa_(kappa), mu_(mu), amplitude_(amplitude), branch_(branch) {
    if (!std::isfinite(kappa) || !std::isfinite(mu) || !std::isfinite(amplitude)) {
        throw std::invalid_argument("HomoclinicOrbit: parameters must be finite");
    }
    if (std::abs(mu) >= 1.0) {
        throw std::invalid_argument("HomoclinicOrbit: |mu| >= 1 breaks monotonicity of u");
    }
    if (!(amplitude > 0.0)) {
        throw std::invalid_argument("HomoclinicOrbit: amplitude must be positive");
    }
    if (branch != 1 && branch != -1) {
        throw std::invalid_argument("HomoclinicOrbit: branch must be +1 or -1");
    }
}

double HomoclinicOrbit::u(double x) const { return kappa_ + x + mu_ * std::sin(x); }

double HomoclinicOrbit::height(double x) const {
    return branch_ * amplitude_ * sech(u(x));
}

double HomoclinicOrbit::slope(double x) const {
    const double uu = u(x);
    return -branch_ * amplitude_ * sech(uu) * std::tanh(uu) * (1.0 + mu_ * std::cos(x));
}

double orbit_residual(const HomoclinicOrbit& o, const LiouvilleSurface& s, double x) {
    require_matching_family(o, s, "orbit_residual");
    const double dydx = o.slope(x);
    const double f = s.f().value(x);
    return dydx * dydx - s.g().value(o.height(x)) / f;
}

std::vector<CurvePoint> solve_separatrix_ode(const LiouvilleSurface& s, double x0,
                                             double y0, double x_end, double h) {
    if (s.f().kind() != ProfileKind::PerturbedRevolution ||
        s.g().kind() != ProfileKind::QuarticWell) {
        throw std::invalid_argument(
            "solve_separatrix_ode: surface is not the perturbed-revolution family");
    }
    const double c = s.g().amplitude();
    if (!(y0 > 0.0) || y0 >= c) {
        throw std::invalid_argument(
            "solve_separatrix_ode: y0 must lie in (0, c); at y0 = c the branch is ambiguous");
    }
    if (!(h > 0.0) || !(x_end > x0)) {
        throw std::invalid_argument("solve_separatrix_ode: need h > 0 and x_end > x0");
    }

    // Modes: rising y-ODE (sign +), apex crossing in w with y = c sech(w)
    // (w' = 1/sqrt(f), exact for the quartic well), falling y-ODE (sign -).
    // The w window starts once y exceeds c sech(w_in), past the interior
    // maximum of g at y = c/sqrt(2).
    constexpr double kWin = 0.5;
    const double y_enter = c / std::cosh(kWin);

    enum class Mode { Rising, Apex, Falling };
    Mode mode = y0 >= y_enter ? Mode::Apex : Mode::Rising;

    auto slope_of = [&](double x, double y, double sign) {
        const double g = std::max(0.0, s.g().value(std::min(y, c)));
        return sign * std::sqrt(g / s.f().value(x));
    };
    auto w_rate = [&](double x) { return 1.0 / std::sqrt(s.f().value(x)); };

    const long n = std::max(1L, std::lround((x_end - x0) / h));
    const double hh = (x_end - x0) / n;

    std::vector<CurvePoint> out;
    out.reserve(n + 1);
    out.push_back({x0, y0});

    double y = y0;
    double w = mode == Mode::Apex ? -asech_ratio(y0 / c) : 0.0;
    const double tol = 1e-9 * c;

    for (long i = 0; i < n; ++i) {
        const double x = x0 + i * hh;
        if (mode == Mode::Apex) {
            const double k1 = w_rate(x);
            const double k2 = w_rate(x + 0.5 * hh);
            const double k4 = w_rate(x + hh);
            w += hh / 6.0 * (k1 + 4.0 * k2 + k4);
            y = c * sech(w);
            if (w >= kWin) {
                mode = Mode::Falling;
            }
        } else {
            const double sign = mode == Mode::Rising ? 1.0 : -1.0;
            const double k1 = slope_of(x, y, sign);
            const double k2 = slope_of(x + 0.5 * hh, y + 0.5 * hh * k1, sign);
            const double k3 = slope_of(x + 0.5 * hh, y + 0.5 * hh * k2, sign);
            const double k4 = slope_of(x + hh, y + hh * k3, sign);
            y += hh / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            if (mode == Mode::Rising && y >= y_enter) {
                mode = Mode::Apex;
                w = -asech_ratio(y / c);
            }
        }
        if (y < -tol || y > c + tol) {
            throw std::runtime_error("solve_separatrix_ode: solution left (0, c] at x = " +
                                     std::to_string(x + hh));
        }
        out.push_back({x0 + (i + 1) * hh, y});
    }
    return out;
}

}  // namespace liouville
