#pragma once

#include <vector>

#include "liouville/surface.hpp"

namespace liouville {

/** The explicit separatrix y = branch * c * sech(kappa + x + mu sin x),
 * homoclinic to the axis geodesic y = 0.
 */
class HomoclinicOrbit {
public:
    // |mu| < 1 keeps u strictly increasing; amplitude > 0; branch is +1/-1.
    HomoclinicOrbit(double kappa, double mu, double amplitude, int branch = +1);

    double kappa() const { return kappa_; }
    double mu() const { return mu_; }
    double amplitude() const { return amplitude_; }
    int branch() const { return branch_; }

    // u(x) = kappa + x + mu sin x
    double u(double x) const;
    // y(x) = branch * c * sech(u)
    double height(double x) const;
    // dy/dx = -branch * c * sech(u) tanh(u) (1 + mu cos x)
    double slope(double x) const;

private:
    double kappa_;
    double mu_;
    double amplitude_;
    int branch_;
};

/** (dy/dx)^2 - g(y(x))/f(x); identically zero in exact arithmetic when the
 * surface's quartic well has the orbit's amplitude. The surface must be the
 * matching family (perturbed-revolution f with the same mu, quartic-well g);
 * the amplitude may differ, in which case the residual measures the
 * inconsistency.
 */
double orbit_residual(const HomoclinicOrbit& o, const LiouvilleSurface& s, double x);

struct CurvePoint {
    double x;
    double y;
};

/** RK4 solution of the separatrix ODE dy/dx = +-sqrt(g(y)/f(x)), started on
 * the rising branch at (x0, y0) with 0 < y0 < c, stepped to x_end. The sign
 * flips across the apex: once y has passed the interior maximum of g the
 * solver crosses the apex in the substituted variable y = c sech(w), where
 * the same ODE is the smooth w' = 1/sqrt(f). Requires the matching family
 * (quartic-well g); y0 >= c is rejected (the square root vanishes and the
 * branch is ambiguous).
 */
std::vector<CurvePoint> solve_separatrix_ode(const LiouvilleSurface& s, double x0,
                                             double y0, double x_end, double h);

}  // namespace liouville
