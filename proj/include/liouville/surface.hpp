#pragma once

#include <functional>
#include <span>
#include <vector>

namespace liouville {

enum class ProfileKind { PerturbedRevolution, QuarticWell, Constant, Custom };

/** One coordinate factor of a Liouville metric (f(x) or g(y)) with
 * closed-form derivatives up to third order.
 *
 * Built-in kinds:
 *   PerturbedRevolution  f(x) = (1 + mu cos x)^{-2}, 2pi-periodic
 *   QuarticWell          g(y) = y^2 (1 - y^2/c^2), vanishing at y = 0 and |y| = c
 *   Constant             value everywhere, derivatives zero
 *   Custom               user-supplied evaluators (trusted only after
 *                        derivative_selfcheck passes)
 *
 * Profiles are immutable; all evaluators are pure functions.
 */
class SurfaceProfile {
public:
    using Evaluator = std::function<double(double)>;

    // mu outside (0, 1/4) requires allow_unsafe (the bound suite and the tail
    // analysis assume 0 < mu < 1/4; mu = 0 is the surface of revolution).
    static SurfaceProfile perturbed_revolution(double mu, bool allow_unsafe = false);
    static SurfaceProfile quartic_well(double amplitude);
    static SurfaceProfile constant(double value);
    static SurfaceProfile custom(Evaluator value, Evaluator d1, Evaluator d2, Evaluator d3);

    double value(double t) const;
    double deriv1(double t) const;
    double deriv2(double t) const;
    double deriv3(double t) const;

    ProfileKind kind() const { return kind_; }
    double mu() const;         // PerturbedRevolution only
    double amplitude() const;  // QuarticWell only

private:
    SurfaceProfile() = default;

    ProfileKind kind_ = ProfileKind::Constant;
    double mu_ = 0.0;
    double amplitude_ = 0.0;
    double const_value_ = 0.0;
    Evaluator custom_v_, custom_d1_, custom_d2_, custom_d3_;
};

struct Interval {
    double lo;
    double hi;
};

/** Liouville metric (f(x) + g(y))(dx^2 + dy^2) on a coordinate strip.
 * Positivity of A = f + g over [0, 2pi] x y_strip is checked on
 * construction by dense sampling (grid step <= 1e-3).
 */
class LiouvilleSurface {
public:
    LiouvilleSurface(SurfaceProfile f, SurfaceProfile g, Interval y_strip = {-1.0, 1.0});

    const SurfaceProfile& f() const { return f_; }
    const SurfaceProfile& g() const { return g_; }
    Interval y_strip() const { return y_strip_; }
    bool in_strip(double y) const { return y >= y_strip_.lo && y <= y_strip_.hi; }

    // A = f(x) + g(y); throws std::domain_error if A <= 0.
    double conformal_factor(double x, double y) const;

private:
    SurfaceProfile f_;
    SurfaceProfile g_;
    Interval y_strip_;
};

/** Max over the grid of |closed-form derivative - central finite difference
 * of the next-lower evaluator| / max(1, |closed-form|), for order in 1..3.
 * h must lie in (0, 1e-2]; the grid must be non-empty.
 */
double derivative_selfcheck(const SurfaceProfile& p, int order,
                            std::span<const double> grid, double h);

// The perturbed-revolution torus family: f = (1 + mu cos x)^{-2},
// g = y^2 (1 - y^2/c^2), strip [-1, 1].
LiouvilleSurface make_perturbed_torus(double mu, double amplitude = 1.0,
                                      bool allow_unsafe_mu = false);

// f == 1, g == 0: the flat torus.
LiouvilleSurface make_flat_torus();

}  // namespace liouville
