#include "liouville/surface.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace liouville {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// f(x) = (1 + mu cos x)^{-2} and its first three derivatives. The second
// derivative is -2 mu (2 mu cos^2 x - cos x - 3 mu)/(1 + mu cos x)^4; the
// third follows by differentiating it once more and is validated against
// finite differences in the tests.
double pr_value(double mu, double x) {
    const double d = 1.0 + mu * std::cos(x);
    return 1.0 / (d * d);
}

double pr_d1(double mu, double x) {
    const double d = 1.0 + mu * std::cos(x);
    return 2.0 * mu * std::sin(x) / (d * d * d);
}

double pr_d2(double mu, double x) {
    const double c = std::cos(x);
    const double d = 1.0 + mu * c;
    const double d2 = d * d;
    return -2.0 * mu * (2.0 * mu * c * c - c - 3.0 * mu) / (d2 * d2);
}

double pr_d3(double mu, double x) {
    const double c = std::cos(x);
    const double d = 1.0 + mu * c;
    const double d2 = d * d;
    const double num = 4.0 * mu * mu * c * c - 7.0 * mu * c + 1.0 - 12.0 * mu * mu;
    return -2.0 * mu * std::sin(x) * num / (d2 * d2 * d);
}

}  // namespace

SurfaceProfile SurfaceProfile::perturbed_revolution(double mu, bool allow_unsafe) {
    if (!std::isfinite(mu)) {
        throw std::invalid_argument("perturbed_revolution: mu must be finite");
    }
    if (!allow_unsafe && !(mu > 0.0 && mu < 0.25)) {
        throw std::invalid_argument(
            "perturbed_revolution: mu = " + std::to_string(mu) +
            " outside (0, 1/4); pass allow_unsafe to override");
    }
    if (std::abs(mu) >= 1.0) {
        throw std::invalid_argument("perturbed_revolution: |mu| >= 1 makes f singular");
    }
    SurfaceProfile p;
    p.kind_ = ProfileKind::PerturbedRevolution;
    p.mu_ = mu;
    return p;
}

SurfaceProfile SurfaceProfile::quartic_well(double amplitude) {
    if (!(amplitude > 0.0) || !std::isfinite(amplitude)) {
        throw std::invalid_argument("quartic_well: amplitude must be positive");
    }
    SurfaceProfile p;
    p.kind_ = ProfileKind::QuarticWell;
    p.amplitude_ = amplitude;
    return p;
}

SurfaceProfile SurfaceProfile::constant(double value) {
    if (!std::isfinite(value)) {
        throw std::invalid_argument("constant: value must be finite");
    }
    SurfaceProfile p;
    p.kind_ = ProfileKind::Constant;
    p.const_value_ = value;
    return p;
}

SurfaceProfile SurfaceProfile::custom(Evaluator value, Evaluator d1, Evaluator d2,
                                      Evaluator d3) {
    if (!value || !d1 || !d2 || !d3) {
        throw std::invalid_argument("custom: all four evaluators are required");
    }
    SurfaceProfile p;
    p.kind_ = ProfileKind::Custom;
    p.custom_v_ = std::move(value);
    p.custom_d1_ = std::move(d1);
    p.custom_d2_ = std::move(d2);
    p.custom_d3_ = std::move(d3);
    return p;
}

double SurfaceProfile::value(double t) const {
    switch (kind_) {
        case ProfileKind::PerturbedRevolution:
            return pr_value(mu_, t);
        case ProfileKind::QuarticWell:
            return t * t * (1.0 - t * t / (amplitude_ * amplitude_));
        case ProfileKind::Constant:
            return const_value_;
        case ProfileKind::Custom:
            return custom_v_(t);
    }
    return 0.0;
}

double SurfaceProfile::deriv1(double t) const {
    switch (kind_) {
        case ProfileKind::PerturbedRevolution:
            return pr_d1(mu_, t);
        case ProfileKind::QuarticWell:
            return 2.0 * t - 4.0 * t * t * t / (amplitude_ * amplitude_);
        case ProfileKind::Constant:
            return 0.0;
        case ProfileKind::Custom:
            return custom_d1_(t);
    }
    return 0.0;
}

double SurfaceProfile::deriv2(double t) const {
    switch (kind_) {
        case ProfileKind::PerturbedRevolution:
            return pr_d2(mu_, t);
        case ProfileKind::QuarticWell:
            return 2.0 - 12.0 * t * t / (amplitude_ * amplitude_);
        case ProfileKind::Constant:
            return 0.0;
        case ProfileKind::Custom:
            return custom_d2_(t);
    }
    return 0.0;
}

double SurfaceProfile::deriv3(double t) const {
    switch (kind_) {
        case ProfileKind::PerturbedRevolution:
            return pr_d3(mu_, t);
        case ProfileKind::QuarticWell:
            return -24.0 * t / (amplitude_ * amplitude_);
        case ProfileKind::Constant:
            return 0.0;
        case ProfileKind::Custom:
            return custom_d3_(t);
    }
    return 0.0;
}

double SurfaceProfile::mu() const {
    if (kind_ != ProfileKind::PerturbedRevolution) {
        throw std::logic_error("mu(): not a perturbed-revolution profile");
    }
    return mu_;
}

double SurfaceProfile::amplitude() const {
    if (kind_ != ProfileKind::QuarticWell) {
        throw std::logic_error("amplitude(): not a quartic-well profile");
    }
    return amplitude_;
}

LiouvilleSurface::LiouvilleSurface(SurfaceProfile f, SurfaceProfile g, Interval y_strip)
    : f_(std::move(f)), g_(std::move(g)), y_strip_(y_strip) {
    if (!(y_strip_.lo < y_strip_.hi)) {
        throw std::invalid_argument("LiouvilleSurface: empty y strip");
    }
    // A = f + g > 0 over [0, 2pi] x strip reduces to min f + min g > 0 on the
    // product grid. Grid step <= 1e-3 in each coordinate.
    const int nx = static_cast<int>(std::ceil(kTwoPi / 1e-3)) + 1;
    double min_f = f_.value(0.0);
    for (int i = 1; i < nx; ++i) {
        min_f = std::min(min_f, f_.value(kTwoPi * i / (nx - 1)));
    }
    const double len = y_strip_.hi - y_strip_.lo;
    const int ny = static_cast<int>(std::ceil(len / 1e-3)) + 1;
    double min_g = g_.value(y_strip_.lo);
    for (int i = 1; i < ny; ++i) {
        min_g = std::min(min_g, g_.value(y_strip_.lo + len * i / (ny - 1)));
    }
    if (!(min_f + min_g > 0.0)) {
        throw std::invalid_argument("LiouvilleSurface: f + g not positive on the strip");
    }
}

double LiouvilleSurface::conformal_factor(double x, double y) const {
    const double A = f_.value(x) + g_.value(y);
    if (!(A > 0.0)) {
        throw std::domain_error("conformal factor f + g <= 0 at (" +
                                std::to_string(x) + ", " + std::to_string(y) + ")");
    }
    return A;
}

double derivative_selfcheck(const SurfaceProfile& p, int order,
                            std::span<const double> grid, double h) {
    if (order < 1 || order > 3) {
        throw std::invalid_argument("derivative_selfcheck: order must be 1..3");
    }
    if (grid.empty()) {
        throw std::invalid_argument("derivative_selfcheck: empty grid");
    }
    if (!(h > 0.0) || h > 1e-2) {
        throw std::invalid_argument("derivative_selfcheck: h must lie in (0, 1e-2]");
    }
    auto lower = [&](double t) {
        switch (order) {
            case 1: return p.value(t);
            case 2: return p.deriv1(t);
            default: return p.deriv2(t);
        }
    };
    auto closed = [&](double t) {
        switch (order) {
            case 1: return p.deriv1(t);
            case 2: return p.deriv2(t);
            default: return p.deriv3(t);
        }
    };
    double worst = 0.0;
    for (double t : grid) {
        const double fd = (lower(t + h) - lower(t - h)) / (2.0 * h);
        const double cf = closed(t);
        const double err = std::abs(cf - fd) / std::max(1.0, std::abs(cf));
        worst = std::max(worst, err);
    }
    return worst;
}

LiouvilleSurface make_perturbed_torus(double mu, double amplitude, bool allow_unsafe_mu) {
    // the well is nonnegative exactly on [-amplitude, amplitude]
    return LiouvilleSurface(SurfaceProfile::perturbed_revolution(mu, allow_unsafe_mu),
                            SurfaceProfile::quartic_well(amplitude),
                            Interval{-amplitude, amplitude});
}

LiouvilleSurface make_flat_torus() {
    return LiouvilleSurface(SurfaceProfile::constant(1.0), SurfaceProfile::constant(0.0),
                            Interval{-1.0, 1.0});
}

}  // namespace liouville
