#pragma once

#include <vector>

#include "liouville/surface.hpp"

namespace liouville {

/** Cotangent-bundle state (x, y, p_x, p_y) of the geodesic flow. */
struct PhasePoint {
    double x;
    double y;
    double p_x;
    double p_y;
};

// H = (p_x^2 + p_y^2) / (2 (f(x) + g(y)))
double hamiltonian(const LiouvilleSurface& s, const PhasePoint& z);

// Conserved second integral of the Liouville flow,
// F = p_x^2 - f(x) (p_x^2 + p_y^2)/A  (= p_x^2 - 2 f H).
double second_integral(const LiouvilleSurface& s, const PhasePoint& z);

// a = (g p_x^2 - f p_y^2)/(p_x^2 + p_y^2) = F/(2H), constant along geodesics;
// the orbit equation reads (dy/dx)^2 = (g(y) - a)/(f(x) + a).
double clairaut_constant(const LiouvilleSurface& s, const PhasePoint& z);

/** Hamilton's equations: returns (x_dot, y_dot, p_x_dot, p_y_dot) packed in
 * a PhasePoint. x_dot = p_x/A, y_dot = p_y/A,
 * p_x_dot = (p_x^2+p_y^2) f'(x)/(2A^2), p_y_dot = (p_x^2+p_y^2) g'(y)/(2A^2).
 */
PhasePoint vector_field(const LiouvilleSurface& s, const PhasePoint& z);

struct Trajectory {
    std::vector<double> t;           // strictly increasing, uniform spacing
    std::vector<PhasePoint> state;   // same length as t
    double step = 0.0;
    double H0 = 0.0;                 // energy at t = 0
    double F0 = 0.0;                 // second integral at t = 0
    bool truncated = false;          // left the strip before t_end
};

/** Fixed-step classical RK4 trajectory from z0 over [0, t_end].
 * Leaving y_strip is a soft truncation (partial trajectory returned,
 * truncated flag set); A <= 0 along the path aborts with std::domain_error.
 */
Trajectory integrate_geodesic(const LiouvilleSurface& s, const PhasePoint& z0,
                              double t_end, double h);

struct HyperbolicityResult {
    bool hyperbolic;
    double margin;  // min over the x-grid of g''(0) - f'(x)^2/f(x) + f''(x)
};

/** The axis y = 0 is a hyperbolic geodesic when g'(0) = 0 (to 1e-12) and the
 * margin is strictly positive. The inequality is required uniformly in x on
 * a grid of grid_size points over one period.
 */
HyperbolicityResult hyperbolicity_check(const LiouvilleSurface& s, int grid_size = 1024);

/** Momenta from the angle coordinate on the unit level: tan(theta) = p_x/p_y
 * with (p_x, p_y) normalized so that H = 1.
 */
PhasePoint unit_level_state(const LiouvilleSurface& s, double x, double y, double theta);

}  // namespace liouville
