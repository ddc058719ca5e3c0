#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "liouville/homoclinic.hpp"
#include "liouville/surface.hpp"

namespace liouville {

/** Where the finite window [-L, L] lives.
 *
 * Apex: |u| <= L with u = kappa + x + mu sin x, centered on the orbit's
 * apex. Under this window A_L is exactly odd in kappa, exactly 2pi-periodic,
 * and exactly zero for a surface of revolution (mu = 0).
 *
 * Chart: x in [-L, L], the literal finite-window formula. This is the
 * convention behind the published reference table (see
 * resolve_table_configuration).
 */
enum class WindowCenter { Apex, Chart };

enum class BoundVariant { Lemma, Table };

/** Rigorous bound on the Melnikov integral outside the window:
 * 1200 (1 + 2 e^{2|kappa|}) gamma(L)^2, with gamma = (1/2) sech for the
 * Lemma variant and gamma = sech for the Table variant (Lemma = Table/4
 * exactly).
 */
struct TailBound {
    double kappa;
    double window;  // L
    BoundVariant variant;
    double value;
};

TailBound tail_bound(double kappa, double L, BoundVariant variant);

/** I(x) = K_x(x,y) g(y) - K_y(x,y) f(x) dy/dx evaluated on the orbit,
 * y = height(x), dy/dx = slope(x). The surface must be the matching family
 * (same mu; quartic-well g); amplitudes may differ.
 */
double melnikov_integrand(const LiouvilleSurface& s, const HomoclinicOrbit& o, double x);

struct Window {
    double x_lo;
    double x_hi;
};

// x-limits of the window of half-width L for the given convention.
Window window_limits(const HomoclinicOrbit& o, double L, WindowCenter center);

/** A_L by classical RK4 on the coupled system u' = 1 + mu cos x,
 * V' = I(x, gamma(u)) across the window, V(x_lo) = 0. The step count is
 * (x_hi - x_lo)/h rounded to an integer. Non-finite integrand samples abort
 * with a diagnostic.
 */
double window_integral_rk4(const LiouvilleSurface& s, const HomoclinicOrbit& o,
                           double L, double h, WindowCenter center = WindowCenter::Apex);

/** Method-independent A_L: composite Simpson on the closed-form integrand,
 * refined (panel doubling + Richardson) until successive estimates differ by
 * less than tol. tol >= 1e-12; throws after 20 refinements without
 * convergence.
 */
double window_integral_oracle(const LiouvilleSurface& s, const HomoclinicOrbit& o,
                              double L, double tol, WindowCenter center = WindowCenter::Apex);

// Generic quadrature cores (also the test hooks for constant integrands).
double rk4_quadrature(const std::function<double(double)>& fn, double a, double b, double h);
double simpson_refined(const std::function<double(double)>& fn, double a, double b,
                       double tol, int max_refinements = 20);

enum class Verdict { EntropyIncrease, Inconclusive };

struct MelnikovResult {
    double kappa;
    double window;       // L
    double step;         // h
    double a_value;      // A_L
    TailBound tail;
    int factor;          // overall constant (1 or 2)
    double estimate;     // factor * a_value
    double quad_error;   // Richardson estimate |A(h) - A(2h)|/15
    bool certified_nonzero;
    Verdict verdict;
};

/** Assembles A_L, the tail bound and the quadrature error estimate;
 * certified_nonzero iff |factor * A_L| > factor * bound + quad_error.
 * A certified nonzero value yields a sign change (A_L is odd in kappa),
 * hence the entropy-increase verdict. Requires L > |kappa| + 1 so the tail
 * bound's gamma_0 argument is in the decaying tail.
 */
MelnikovResult melnikov_value(const LiouvilleSurface& s, const HomoclinicOrbit& o,
                              double L, double h, int factor, BoundVariant variant);

struct TableConfig {
    double orbit_amplitude;
    int factor;
    WindowCenter center;
};

struct ResolutionRow {
    TableConfig config;
    std::vector<double> values;  // factor * A_L per window half-width
    double max_rel_err;
};

struct TableResolution {
    bool matched;        // a unique configuration reproduces every target to 1e-4
    TableConfig config;  // the match, or the best candidate when !matched
    std::vector<double> windows;
    std::vector<double> targets;
    std::vector<ResolutionRow> rows;
    std::string report() const;
};

/** Resolves the published-table ambiguities (orbit amplitude 1 vs 1/2,
 * overall factor 1 vs 2, window convention) against the reference A_L(1)
 * column at mu = 1/8. The surface is the fixed torus family with
 * g = y^2(1 - y^2); only the orbit amplitude varies. Deterministic; always
 * produces a report.
 */
TableResolution resolve_table_configuration(std::span<const double> L_list,
                                            std::span<const double> targets,
                                            double mu = 0.125, double kappa = 1.0);

// The reference table this build resolves against (L = 1, 2, 3, 5, 10, 20).
std::span<const double> reference_table_windows();
std::span<const double> reference_table_a_values();

// Resolution at the reference defaults, computed once per process.
const TableResolution& default_table_resolution();

struct SweepRow {
    double kappa;
    double a_value;
};

/** A_L over a uniform kappa grid (n >= 2 points, endpoints included). Rows
 * are deterministic and ordered by input index. The orbit uses the surface's
 * mu and the given amplitude.
 */
std::vector<SweepRow> kappa_sweep(const LiouvilleSurface& s, double orbit_amplitude,
                                  double kappa_min, double kappa_max, int n,
                                  double L, double h,
                                  WindowCenter center = WindowCenter::Apex);

struct ConvergenceRow {
    double step;
    double abs_error;  // |A_L(h) - oracle|
};

struct ConvergenceStudy {
    std::vector<ConvergenceRow> rows;
    double reference;     // oracle value
    double slope;         // least-squares slope of ln(err) vs ln(h)
    int fit_begin;        // first row index used in the fit
    int fit_count;        // rows in the fit
};

/** RK4 error against the oracle for each step in h_list (sorted decreasing).
 * The slope fit excludes rows at the rounding floor (error <= 1e-13) and
 * leading pre-asymptotic rows whose halving ratio to the next row exceeds 32.
 */
ConvergenceStudy convergence_study(const LiouvilleSurface& s, const HomoclinicOrbit& o,
                                   double L, std::span<const double> h_list,
                                   WindowCenter center = WindowCenter::Apex);

}  // namespace liouville
