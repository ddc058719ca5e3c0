#pragma once

#include <span>
#include <utility>

#include "liouville/surface.hpp"

namespace liouville {

/** Gaussian curvature and its coordinate gradient at one strip point. */
struct CurvatureSample {
    double x;
    double y;
    double A;    // conformal factor f(x) + g(y), > 0
    double K;    // Gaussian curvature
    double K_x;  // dK/dx
    double K_y;  // dK/dy
};

/** Closed-form K, K_x, K_y for the Liouville metric:
 *   K   = (f'^2 + g'^2)/(2 A^3) - (f'' + g'')/(2 A^2)
 *   K_x = (-f''' A^2 + 2 f' g'' A + 4 f' f'' A - 3 f' g'^2 - 3 f'^3)/(2 A^4)
 *   K_y = (-g''' A^2 + 2 f'' g' A + 4 g' g'' A - 3 f'^2 g' - 3 g'^3)/(2 A^4)
 * Throws std::domain_error when A <= 0.
 */
CurvatureSample gauss_curvature(const LiouvilleSurface& s, double x, double y);

/** Max over the grid of the relative deviation between the closed-form
 * (K_x, K_y) and central finite differences of K, step h in (0, 1e-3].
 */
double curvature_fd_check(const LiouvilleSurface& s,
                          std::span<const std::pair<double, double>> grid,
                          double h);

struct AxisScan {
    double min_K;
    double max_K;
};

/** Extrema of K(x, 0) over n uniform samples of one period [0, 2pi). */
AxisScan axis_curvature_scan(const LiouvilleSurface& s, int n);

}  // namespace liouville
