#include "liouville/curvature.hpp"

#include <cmath>
#include <stdexcept>

namespace liouville {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

CurvatureSample gauss_curvature(const LiouvilleSurface& s, double x, double y) {
    const double A = s.conformal_factor(x, y);
    const double f1 = s.f().deriv1(x), f2 = s.f().deriv2(x), f3 = s.f().deriv3(x);
    const double g1 = s.g().deriv1(y), g2 = s.g().deriv2(y), g3 = s.g().deriv3(y);

    const double A2 = A * A;
    const double A3 = A2 * A;
    const double A4 = A2 * A2;

    CurvatureSample out;
    out.x = x;
    out.y = y;
    out.A = A;
    out.K = (f1 * f1 + g1 * g1) / (2.0 * A3) - (f2 + g2) / (2.0 * A2);
    out.K_x = (-f3 * A2 + 2.0 * f1 * g2 * A + 4.0 * f1 * f2 * A - 3.0 * f1 * g1 * g1 -
               3.0 * f1 * f1 * f1) /
              (2.0 * A4);
    out.K_y = (-g3 * A2 + 2.0 * f2 * g1 * A + 4.0 * g1 * g2 * A - 3.0 * f1 * f1 * g1 -
               3.0 * g1 * g1 * g1) /
              (2.0 * A4);
    return out;
}

double curvature_fd_check(const LiouvilleSurface& s,
                          std::span<const std::pair<double, double>> grid, double h) {
    if (!(h > 0.0) || h > 1e-3) {
        throw std::invalid_argument("curvature_fd_check: h must lie in (0, 1e-3]");
    }
    double worst = 0.0;
    for (const auto& [x, y] : grid) {
        const CurvatureSample c = gauss_curvature(s, x, y);
        const double kx_fd =
            (gauss_curvature(s, x + h, y).K - gauss_curvature(s, x - h, y).K) / (2.0 * h);
        const double ky_fd =
            (gauss_curvature(s, x, y + h).K - gauss_curvature(s, x, y - h).K) / (2.0 * h);
        worst = std::max(worst,
                         std::abs(c.K_x - kx_fd) / std::max(1.0, std::abs(c.K_x)));
        worst = std::max(worst,
                         std::abs(c.K_y - ky_fd) / std::max(1.0, std::abs(c.K_y)));
    }
    return worst;
}

AxisScan axis_curvature_scan(const LiouvilleSurface& s, int n) {
    if (n < 2) {
        throw std::invalid_argument("axis_curvature_scan: n must be >= 2");
    }
    AxisScan scan{0.0, 0.0};
    for (int i = 0; i < n; ++i) {
        const double x = kTwoPi * i / n;
        const double K = gauss_curvature(s, x, 0.0).K;
        if (i == 0) {
            scan.min_K = scan.max_K = K;
        } else {
            scan.min_K = std::min(scan.min_K, K);
            scan.max_K = std::max(scan.max_K, K);
        }
    }
    return scan;
}

}  // namespace liouville
