#include "liouville/melnikov.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>

#include "liouville/curvature.hpp"

namespace liouville {

namespace {

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

// I(x) with the orbit phase u supplied explicitly (the RK4 window integral
// evolves u alongside the accumulator).
double integrand_at(const LiouvilleSurface& s, const HomoclinicOrbit& o, double x,
                    double u) {
    const double sech_u = 1.0 / std::cosh(u);
    const double y = o.branch() * o.amplitude() * sech_u;
    const double dydx = -o.branch() * o.amplitude() * sech_u * std::tanh(u) *
                        (1.0 + o.mu() * std::cos(x));
    const CurvatureSample cs = gauss_curvature(s, x, y);
    return cs.K_x * s.g().value(y) - cs.K_y * s.f().value(x) * dydx;
}

const std::array<double, 6> kTableWindows = {1.0, 2.0, 3.0, 5.0, 10.0, 20.0};
const std::array<double, 6> kTableValues = {1.5990894,  1.0073283,  0.59562584,
                                            0.48440447, 0.47929061, 0.47929047};

const char* center_name(WindowCenter c) {
    return c == WindowCenter::Apex ? "apex" : "chart";
}

}  // namespace

TailBound tail_bound(double kappa, double L, BoundVariant variant) {
    if (!(L > 0.0)) {
        throw std::invalid_argument("tail_bound: window half-width must be positive");
    }
    const double sech_L = 1.0 / std::cosh(L);
    const double table = 1200.0 * (1.0 + 2.0 * std::exp(2.0 * std::abs(kappa))) *
                         sech_L * sech_L;
    // Lemma variant uses gamma = (1/2) sech: exactly a quarter of the table
    // variant (scaling by 0.25 is exact in binary floating point).
    const double value = variant == BoundVariant::Table ? table : 0.25 * table;
    return TailBound{kappa, L, variant, value};
}

double melnikov_integrand(const LiouvilleSurface& s, const HomoclinicOrbit& o, double x) {
    require_matching_family(o, s, "melnikov_integrand");
    return integrand_at(s, o, x, o.u(x));
}

Window window_limits(const HomoclinicOrbit& o, double L, WindowCenter center) {
    if (!(L > 0.0)) {
        throw std::invalid_argument("window_limits: L must be positive");
    }
    if (center == WindowCenter::Chart) {
        return Window{-L, L};
    }
    // Solve u(x) = -L and u(x) = +L; u is strictly increasing with
    // u' = 1 + mu cos x >= 1 - |mu| > 0, so Newton from x = target - kappa
    // converges in a few steps.
    auto solve = [&](double target) {
        double x = target - o.kappa();
        for (int it = 0; it < 100; ++it) {
            const double r = o.u(x) - target;
            if (std::abs(r) < 1e-13) {
                return x;
            }
            x -= r / (1.0 + o.mu() * std::cos(x));
        }
        throw std::runtime_error("window_limits: root solve failed");
    };
    return Window{solve(-L), solve(L)};
}

double rk4_quadrature(const std::function<double(double)>& fn, double a, double b,
                      double h) {
    if (!(h > 0.0) || !(b > a)) {
        throw std::invalid_argument("rk4_quadrature: need h > 0 and b > a");
    }
    const long n = std::max(1L, std::lround((b - a) / h));
    const double hh = (b - a) / n;
    double v = 0.0;
    for (long i = 0; i < n; ++i) {
        const double x = a + i * hh;
        const double k1 = fn(x);
        const double k2 = fn(x + 0.5 * hh);  // stages 2 and 3 coincide for V' = I(x)
        const double k4 = fn(x + hh);
        v += hh / 6.0 * (k1 + 4.0 * k2 + k4);
        if (!std::isfinite(v)) {
            throw std::runtime_error("rk4_quadrature: non-finite integrand near x = " +
                                     std::to_string(x));
        }
    }
    return v;
}

double window_integral_rk4(const LiouvilleSurface& s, const HomoclinicOrbit& o,
                           double L, double h, WindowCenter center) {
    require_matching_family(o, s, "window_integral_rk4");
    if (!(h > 0.0)) {
        throw std::invalid_argument("window_integral_rk4: h must be positive");
    }
    const Window win = window_limits(o, L, center);
    const long n = std::max(1L, std::lround((win.x_hi - win.x_lo) / h));
    const double hh = (win.x_hi - win.x_lo) / n;

    auto u_rate = [&](double x) { return 1.0 + o.mu() * std::cos(x); };

    double u = o.u(win.x_lo);
    double v = 0.0;
    for (long i = 0; i < n; ++i) {
        const double x = win.x_lo + i * hh;
        const double k1u = u_rate(x);
        const double k1v = integrand_at(s, o, x, u);
        const double k2u = u_rate(x + 0.5 * hh);
        const double k2v = integrand_at(s, o, x + 0.5 * hh, u + 0.5 * hh * k1u);
        const double k3v = integrand_at(s, o, x + 0.5 * hh, u + 0.5 * hh * k2u);
        const double k4u = u_rate(x + hh);
        const double k4v = integrand_at(s, o, x + hh, u + hh * k2u);
        v += hh / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        u += hh / 6.0 * (k1u + 4.0 * k2u + k4u);
        if (!std::isfinite(v)) {
            throw std::runtime_error(
                "window_integral_rk4: non-finite integrand near x = " + std::to_string(x));
        }
    }
    return v;
}

double simpson_refined(const std::function<double(double)>& fn, double a, double b,
                       double tol, int max_refinements) {
    if (!(tol >= 1e-12)) {
        throw std::invalid_argument("simpson_refined: tol must be >= 1e-12");
    }
    if (!(b > a)) {
        throw std::invalid_argument("simpson_refined: need b > a");
    }
    auto simpson = [&](long panels) {
        const double hh = (b - a) / (2.0 * panels);
        double odd = 0.0, even = 0.0;
        for (long i = 1; i < 2 * panels; i += 2) {
            odd += fn(a + i * hh);
        }
        for (long i = 2; i < 2 * panels; i += 2) {
            even += fn(a + i * hh);
        }
        return hh / 3.0 * (fn(a) + fn(b) + 4.0 * odd + 2.0 * even);
    };
    long panels = 64;
    double prev = simpson(panels);
    for (int r = 0; r < max_refinements; ++r) {
        panels *= 2;
        const double cur = simpson(panels);
        if (std::abs(cur - prev) < tol) {
            return cur + (cur - prev) / 15.0;  // Richardson, Simpson is order 4
        }
        prev = cur;
    }
    throw std::runtime_error("simpson_refined: no convergence after " +
                             std::to_string(max_refinements) + " refinements");
}

double window_integral_oracle(const LiouvilleSurface& s, const HomoclinicOrbit& o,
                              double L, double tol, WindowCenter center) {
    require_matching_family(o, s, "window_integral_oracle");
    const Window win = window_limits(o, L, center);
    return simpson_refined([&](double x) { return melnikov_integrand(s, o, x); },
                           win.x_lo, win.x_hi, tol);
}

MelnikovResult melnikov_value(const LiouvilleSurface& s, const HomoclinicOrbit& o,
                              double L, double h, int factor, BoundVariant variant) {
    if (factor != 1 && factor != 2) {
        throw std::invalid_argument("melnikov_value: factor must be 1 or 2");
    }
    if (!(L > std::abs(o.kappa()) + 1.0)) {
        throw std::invalid_argument(
            "melnikov_value: certification requires L > |kappa| + 1");
    }
    MelnikovResult r;
    r.kappa = o.kappa();
    r.window = L;
    r.step = h;
    r.a_value = window_integral_rk4(s, o, L, h);
    const double a_coarse = window_integral_rk4(s, o, L, 2.0 * h);
    r.quad_error = std::abs(r.a_value - a_coarse) / 15.0;
    r.tail = tail_bound(o.kappa(), L, variant);
    r.factor = factor;
    r.estimate = factor * r.a_value;
    r.certified_nonzero =
        std::abs(r.estimate) > factor * r.tail.value + r.quad_error;
    r.verdict = r.certified_nonzero ? Verdict::EntropyIncrease : Verdict::Inconclusive;
    return r;
}

std::span<const double> reference_table_windows() { return kTableWindows; }
std::span<const double> reference_table_a_values() { return kTableValues; }

TableResolution resolve_table_configuration(std::span<const double> L_list,
                                            std::span<const double> targets,
                                            double mu, double kappa) {
    if (L_list.empty() || L_list.size() != targets.size()) {
        throw std::invalid_argument(
            "resolve_table_configuration: need matching non-empty windows and targets");
    }
    // The metric stays the fixed torus family (g = y^2(1 - y^2)); only the
    // orbit amplitude is a candidate, per the gamma = (1/2) sech ambiguity.
    const LiouvilleSurface s = make_perturbed_torus(mu, 1.0, true);

    TableResolution res;
    res.windows.assign(L_list.begin(), L_list.end());
    res.targets.assign(targets.begin(), targets.end());

    for (WindowCenter center : {WindowCenter::Chart, WindowCenter::Apex}) {
        for (double c_orb : {1.0, 0.5}) {
            const HomoclinicOrbit orbit(kappa, mu, c_orb);
            std::vector<double> base(L_list.size());
            for (std::size_t i = 0; i < L_list.size(); ++i) {
                base[i] = window_integral_oracle(s, orbit, L_list[i], 1e-10, center);
            }
            for (int factor : {1, 2}) {
                ResolutionRow row;
                row.config = TableConfig{c_orb, factor, center};
                row.values.resize(base.size());
                row.max_rel_err = 0.0;
                for (std::size_t i = 0; i < base.size(); ++i) {
                    row.values[i] = factor * base[i];
                    row.max_rel_err =
                        std::max(row.max_rel_err, std::abs(row.values[i] - targets[i]) /
                                                      std::abs(targets[i]));
                }
                res.rows.push_back(std::move(row));
            }
        }
    }

    int match_count = 0;
    std::size_t best = 0;
    for (std::size_t i = 0; i < res.rows.size(); ++i) {
        if (res.rows[i].max_rel_err <= 1e-4) {
            ++match_count;
            if (match_count == 1) {
                best = i;
            }
        }
        if (res.rows[i].max_rel_err < res.rows[best].max_rel_err) {
            if (match_count == 0) {
                best = i;
            }
        }
    }
    res.matched = match_count == 1;
    res.config = res.rows[best].config;
    return res;
}

std::string TableResolution::report() const {
    std::ostringstream os;
    os << "table configuration resolution\n";
    os << "  targets:";
    for (std::size_t i = 0; i < windows.size(); ++i) {
        os << " A_" << windows[i] << "=" << targets[i];
    }
    os << "\n";
    for (const auto& row : rows) {
        os << "  " << center_name(row.config.center) << " window, orbit c="
           << row.config.orbit_amplitude << ", factor=" << row.config.factor
           << ": max rel err " << row.max_rel_err << " |";
        for (double v : row.values) {
            os << " " << v;
        }
        os << "\n";
    }
    if (matched) {
        os << "  verdict: unique match (" << center_name(config.center)
           << " window, orbit amplitude " << config.orbit_amplitude << ", factor "
           << config.factor << ")\n";
    } else {
        os << "  verdict: NO configuration matches all targets to 1e-4; best is "
           << center_name(config.center) << " window, orbit amplitude "
           << config.orbit_amplitude << ", factor " << config.factor << "\n";
    }
    return os.str();
}

const TableResolution& default_table_resolution() {
    static const TableResolution res = resolve_table_configuration(
        reference_table_windows(), reference_table_a_values());
    return res;
}

std::vector<SweepRow> kappa_sweep(const LiouvilleSurface& s, double orbit_amplitude,
                                  double kappa_min, double kappa_max, int n, double L,
                                  double h, WindowCenter center) {
    if (n < 2) {
        throw std::invalid_argument("kappa_sweep: n must be >= 2");
    }
    if (!(kappa_max > kappa_min)) {
        throw std::invalid_argument("kappa_sweep: empty kappa range");
    }
    if (s.f().kind() != ProfileKind::PerturbedRevolution) {
        throw std::invalid_argument("kappa_sweep: surface is not the perturbed family");
    }
    const double mu = s.f().mu();
    std::vector<SweepRow> rows;
    rows.reserve(n);
    const double dk = (kappa_max - kappa_min) / (n - 1);
    for (int i = 0; i < n; ++i) {
        const double kappa = kappa_min + i * dk;
        const HomoclinicOrbit o(kappa, mu, orbit_amplitude);
        rows.push_back(SweepRow{kappa, window_integral_rk4(s, o, L, h, center)});
    }
    return rows;
}

ConvergenceStudy convergence_study(const LiouvilleSurface& s, const HomoclinicOrbit& o,
                                   double L, std::span<const double> h_list,
                                   WindowCenter center) {
    if (h_list.empty()) {
        throw std::invalid_argument("convergence_study: empty step list");
    }
    for (std::size_t i = 1; i < h_list.size(); ++i) {
        if (!(h_list[i] < h_list[i - 1])) {
            throw std::invalid_argument(
                "convergence_study: steps must be strictly decreasing");
        }
    }
    ConvergenceStudy study;
    study.reference = window_integral_oracle(s, o, L, 1e-12, center);
    for (double h : h_list) {
        study.rows.push_back(
            ConvergenceRow{h, std::abs(window_integral_rk4(s, o, L, h, center) -
                                       study.reference)});
    }

    // Points at the rounding floor are excluded; then leading pre-asymptotic
    // points are dropped while their decay rate to the next point is steeper
    // than 5th order (the "initial noise" of the coarse steps).
    int lo = 0;
    int hi = static_cast<int>(study.rows.size());
    while (hi > lo && study.rows[hi - 1].abs_error <= 1e-13) {
        --hi;
    }
    while (hi - lo >= 2) {
        const double rate = std::log(study.rows[lo].abs_error /
                                     study.rows[lo + 1].abs_error) /
                            std::log(study.rows[lo].step / study.rows[lo + 1].step);
        if (rate <= 5.0) {
            break;
        }
        ++lo;
    }
    study.fit_begin = lo;
    study.fit_count = hi - lo;
    if (study.fit_count >= 2) {
        double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
        for (int i = lo; i < hi; ++i) {
            const double lx = std::log(study.rows[i].step);
            const double ly = std::log(study.rows[i].abs_error);
            sx += lx;
            sy += ly;
            sxx += lx * lx;
            sxy += lx * ly;
        }
        const double m = study.fit_count;
        study.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    } else {
        study.slope = std::numeric_limits<double>::quiet_NaN();
    }
    return study;
}

}  // namespace liouville
