// Command-line front end: reproduces the reference table, the kappa sweep,
// the step-size convergence figure, trajectory dumps, curvature grids, and
// the full verification suite.
//
// Exit codes: 0 success, 1 verification failure, 2 usage/config error,
// 3 numerical non-convergence, 4 domain truncation.

#include <cmath>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "liouville/csv.hpp"
#include "liouville/curvature.hpp"
#include "liouville/geodesic.hpp"
#include "liouville/homoclinic.hpp"
#include "liouville/melnikov.hpp"
#include "liouville/surface.hpp"
#include "liouville/verify.hpp"

namespace {

constexpr double kPi = 3.141592653589793238462643383279;

using namespace liouville;

struct CliOptions {
    RunConfig cfg;
    int factor_flag = 0;          // 0 = use the resolution default
    std::string bound_variant = "table";
    std::string window_center = "apex";
    std::string config_path;
    bool amplitude_given = false;
    bool factor_given = false;
};

void add_common_flags(CLI::App* cmd, CliOptions& opt) {
    cmd->add_option("--mu", opt.cfg.mu, "perturbation size (default 1/8)");
    cmd->add_option("--kappa", opt.cfg.kappa, "orbit phase offset (default 1)");
    cmd->add_option("--amplitude", opt.cfg.amplitude,
                    "orbit/well amplitude c (default 1)");
    cmd->add_option("--factor", opt.factor_flag, "overall constant, 1 or 2")
        ->check(CLI::IsMember({1, 2}));
    cmd->add_option("--window", opt.cfg.window, "window half-width L (default 10)");
    cmd->add_option("--step", opt.cfg.step, "quadrature/integration step (default 1e-3)");
    cmd->add_option("--bound-variant", opt.bound_variant, "tail bound variant")
        ->check(CLI::IsMember({"table", "lemma"}));
    cmd->add_option("--window-center", opt.window_center,
                    "window convention: apex (centered on the orbit apex) or chart")
        ->check(CLI::IsMember({"apex", "chart"}));
    cmd->add_option("--out", opt.cfg.out, "output path ('-' or empty = stdout)");
    cmd->add_option("--precision", opt.cfg.precision, "significant digits (default 9)")
        ->check(CLI::Range(1, 17));
    cmd->add_flag("--allow-unsafe-mu", opt.cfg.allow_unsafe_mu,
                  "permit mu outside (0, 1/4), e.g. mu = 0");
    cmd->add_option("--config", opt.config_path,
                    "key=value config file ('#' comments); flags override");
}

std::string trimmed(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return "";
    }
    return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

double numeric(const std::string& key, const std::string& value) {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) {
        throw std::invalid_argument("config: bad numeric value for " + key);
    }
    return v;
}

// key=value pairs, one per line, '#' comments; command-line flags win.
void apply_config_file(CLI::App* cmd, CliOptions& opt) {
    std::ifstream f(opt.config_path);
    if (!f) {
        throw std::invalid_argument("config: cannot open " + opt.config_path);
    }
    auto given = [&](const char* flag) { return cmd->count(flag) > 0; };
    std::string line;
    int lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        const std::string text = trimmed(line);
        if (text.empty() || text[0] == '#') {
            continue;
        }
        const auto eq = text.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("config: line " + std::to_string(lineno) +
                                        " is not key=value");
        }
        const std::string key = trimmed(text.substr(0, eq));
        const std::string value = trimmed(text.substr(eq + 1));
        if (key == "mu") {
            if (!given("--mu")) opt.cfg.mu = numeric(key, value);
        } else if (key == "kappa") {
            if (!given("--kappa")) opt.cfg.kappa = numeric(key, value);
        } else if (key == "amplitude") {
            if (!given("--amplitude")) {
                opt.cfg.amplitude = numeric(key, value);
                opt.amplitude_given = true;
            }
        } else if (key == "factor") {
            if (!given("--factor")) {
                opt.factor_flag = static_cast<int>(numeric(key, value));
                opt.factor_given = true;
            }
        } else if (key == "window") {
            if (!given("--window")) opt.cfg.window = numeric(key, value);
        } else if (key == "step") {
            if (!given("--step")) opt.cfg.step = numeric(key, value);
        } else if (key == "bound-variant") {
            if (!given("--bound-variant")) opt.bound_variant = value;
        } else if (key == "window-center") {
            if (!given("--window-center")) opt.window_center = value;
        } else if (key == "out") {
            if (!given("--out")) opt.cfg.out = value;
        } else if (key == "precision") {
            if (!given("--precision")) opt.cfg.precision = static_cast<int>(numeric(key, value));
        } else if (key == "allow-unsafe-mu") {
            if (!given("--allow-unsafe-mu")) {
                opt.cfg.allow_unsafe_mu = value == "1" || value == "true" || value == "yes";
            }
        } else {
            throw std::invalid_argument("config: unknown key '" + key + "'");
        }
    }
}

void finalize(CLI::App* cmd, CliOptions& opt) {
    if (!opt.config_path.empty()) {
        apply_config_file(cmd, opt);
    }
    opt.amplitude_given = opt.amplitude_given || cmd->count("--amplitude") > 0;
    opt.factor_given = opt.factor_given || cmd->count("--factor") > 0;
    if (opt.factor_given) {
        opt.cfg.factor = opt.factor_flag;
    }
    if (opt.bound_variant != "table" && opt.bound_variant != "lemma") {
        throw std::invalid_argument("config: bound-variant must be table or lemma");
    }
    if (opt.window_center != "apex" && opt.window_center != "chart") {
        throw std::invalid_argument("config: window-center must be apex or chart");
    }
    opt.cfg.bound_variant =
        opt.bound_variant == "table" ? BoundVariant::Table : BoundVariant::Lemma;
    opt.cfg.window_center =
        opt.window_center == "apex" ? WindowCenter::Apex : WindowCenter::Chart;
    opt.cfg.validate();
}

void emit(const CliOptions& opt, const CsvTable& table) {
    if (opt.cfg.out.empty() || opt.cfg.out == "-") {
        std::cout << table.to_string();
        return;
    }
    std::ofstream f(opt.cfg.out, std::ios::binary);
    if (!f) {
        throw std::invalid_argument("cannot open output file " + opt.cfg.out);
    }
    f << table.to_string();
}

std::string config_comment(const CliOptions& opt, double amplitude, int factor) {
    return "mu=" + format_significant(opt.cfg.mu, 9) +
           " kappa=" + format_significant(opt.cfg.kappa, 9) +
           " amplitude=" + format_significant(amplitude, 9) +
           " factor=" + std::to_string(factor) +
           " window=" + format_significant(opt.cfg.window, 9) +
           " step=" + format_significant(opt.cfg.step, 9) +
           " center=" + (opt.cfg.window_center == WindowCenter::Apex ? "apex" : "chart");
}

int cmd_table(CliOptions& opt, const std::vector<double>& windows, bool report) {
    // Post-resolution defaults: the resolved orbit amplitude and factor
    // reproduce the reference A-column; explicit flags override.
    double amplitude = opt.cfg.amplitude;
    int factor = 1;
    if (opt.factor_given) {
        factor = *opt.cfg.factor;
    }
    if (opt.cfg.mu == 0.125 && (!opt.amplitude_given || !opt.factor_given)) {
        const TableResolution& res = default_table_resolution();
        if (!opt.amplitude_given) {
            amplitude = res.config.orbit_amplitude;
        }
        if (!opt.factor_given) {
            factor = res.config.factor;
        }
        if (report) {
            std::cerr << res.report();
        }
    }

    const LiouvilleSurface s = make_perturbed_torus(opt.cfg.mu, 1.0, true);
    CsvTable table({"L", "A_L", "bound_lemma", "bound_table"});
    table.add_comment(config_comment(opt, amplitude, factor));
    for (double L : windows) {
        const HomoclinicOrbit o(opt.cfg.kappa, opt.cfg.mu, amplitude);
        const double a =
            factor * window_integral_rk4(s, o, L, opt.cfg.step, opt.cfg.window_center);
        table.add_row({format_significant(L, opt.cfg.precision),
                       format_significant(a, opt.cfg.precision),
                       format_significant(tail_bound(opt.cfg.kappa, L, BoundVariant::Lemma).value,
                                          opt.cfg.precision),
                       format_significant(tail_bound(opt.cfg.kappa, L, BoundVariant::Table).value,
                                          opt.cfg.precision)});
    }
    emit(opt, table);
    return 0;
}

int cmd_sweep(CliOptions& opt, double kappa_min, double kappa_max, int n) {
    if (n < 2 || !(kappa_max > kappa_min)) {
        throw std::invalid_argument("sweep: need n >= 2 and kappa_max > kappa_min");
    }
    const LiouvilleSurface s =
        make_perturbed_torus(opt.cfg.mu, opt.cfg.amplitude, opt.cfg.allow_unsafe_mu);
    const auto rows = kappa_sweep(s, opt.cfg.amplitude, kappa_min, kappa_max, n,
                                  opt.cfg.window, opt.cfg.step, opt.cfg.window_center);
    CsvTable table({"kappa", "a_value"});
    table.add_comment(config_comment(opt, opt.cfg.amplitude, opt.cfg.factor.value_or(1)));
    table.add_comment("kappa in radians");
    for (const auto& row : rows) {
        table.add_row({format_significant(row.kappa, opt.cfg.precision),
                       format_significant(row.a_value, opt.cfg.precision)});
    }
    emit(opt, table);

    if (!opt.cfg.out.empty() && opt.cfg.out != "-") {
        const std::string script_path = opt.cfg.out + ".gp";
        std::ofstream gp(script_path, std::ios::binary);
        if (!gp) {
            throw std::invalid_argument("cannot open plot script " + script_path);
        }
        gp << "# gnuplot script for the kappa sweep (x axis in multiples of pi)\n"
           << "set datafile separator ','\n"
           << "set xlabel 'kappa / pi'\n"
           << "set ylabel 'A_L(kappa)'\n"
           << "set grid\n"
           << "plot '" << opt.cfg.out
           << "' using ($1/pi):2 with lines title 'A_L(kappa)'\n";
    }
    return 0;
}

int cmd_converge(CliOptions& opt, std::vector<double> steps) {
    if (steps.size() < 3) {
        throw std::invalid_argument("converge: need at least 3 step sizes");
    }
    const LiouvilleSurface s =
        make_perturbed_torus(opt.cfg.mu, opt.cfg.amplitude, opt.cfg.allow_unsafe_mu);
    const HomoclinicOrbit o(opt.cfg.kappa, opt.cfg.mu, opt.cfg.amplitude);
    const ConvergenceStudy study =
        convergence_study(s, o, opt.cfg.window, steps, opt.cfg.window_center);
    if (study.fit_count < 2 || !std::isfinite(study.slope)) {
        throw std::invalid_argument("converge: degenerate fit (all errors at the floor)");
    }
    CsvTable table({"h", "abs_error"});
    table.add_comment(config_comment(opt, opt.cfg.amplitude, opt.cfg.factor.value_or(1)));
    table.add_comment("reference = " + format_significant(study.reference, 17));
    for (const auto& row : study.rows) {
        table.add_row({format_significant(row.step, opt.cfg.precision),
                       format_significant(row.abs_error, opt.cfg.precision)});
    }
    table.add_trailing_comment("slope = " + format_significant(study.slope, opt.cfg.precision));
    emit(opt, table);
    return 0;
}

int cmd_verify(CliOptions& opt, const std::string& inject) {
    FaultInjection fault = FaultInjection::None;
    if (inject == "curvature-derivative") {
        fault = FaultInjection::CurvatureDerivative;
    } else if (!inject.empty()) {
        throw std::invalid_argument("verify: unknown fault '" + inject + "'");
    }
    const auto results = run_verification(opt.cfg, fault);
    bool all_pass = true;
    for (const auto& r : results) {
        if (r.skipped) {
            std::cout << "SKIP " << r.name << " (" << r.note << ")\n";
            continue;
        }
        std::cout << (r.pass ? "PASS " : "FAIL ") << r.name << ": measured "
                  << format_significant(r.measured, 6) << " " << r.relation;
        if (r.relation.rfind("in", 0) != 0) {
            std::cout << " " << format_significant(r.threshold, 6);
        }
        if (!r.note.empty()) {
            std::cout << " (" << r.note << ")";
        }
        std::cout << "\n";
        all_pass = all_pass && r.pass;
    }
    std::cout << (all_pass ? "verification: all checks passed\n"
                           : "verification: FAILURES present\n");
    return all_pass ? 0 : 1;
}

int cmd_geodesic(CliOptions& opt, double x0, double y0, double theta0, double t_end,
                 int stride) {
    if (!(t_end > 0.0) || stride < 1) {
        throw std::invalid_argument("geodesic: need t_end > 0 and stride >= 1");
    }
    const LiouvilleSurface s =
        make_perturbed_torus(opt.cfg.mu, opt.cfg.amplitude, opt.cfg.allow_unsafe_mu);
    const PhasePoint z0 = unit_level_state(s, x0, y0, theta0);
    const Trajectory traj = integrate_geodesic(s, z0, t_end, opt.cfg.step);

    CsvTable table({"t", "x", "y", "p_x", "p_y", "H", "F"});
    table.add_comment(config_comment(opt, opt.cfg.amplitude, opt.cfg.factor.value_or(1)));
    const int p = opt.cfg.precision;
    auto add_sample = [&](std::size_t i) {
        const PhasePoint& z = traj.state[i];
        table.add_row({format_significant(traj.t[i], p), format_significant(z.x, p),
                       format_significant(z.y, p), format_significant(z.p_x, p),
                       format_significant(z.p_y, p),
                       format_significant(hamiltonian(s, z), p),
                       format_significant(second_integral(s, z), p)});
    };
    for (std::size_t i = 0; i < traj.state.size(); i += stride) {
        add_sample(i);
    }
    if ((traj.state.size() - 1) % stride != 0) {
        add_sample(traj.state.size() - 1);
    }
    if (traj.truncated) {
        table.add_trailing_comment("truncated: trajectory left the strip at t = " +
                                   format_significant(traj.t.back(), p));
    }
    emit(opt, table);
    return traj.truncated ? 4 : 0;
}

int cmd_curvature_grid(CliOptions& opt, int nx, int ny) {
    if (nx < 2 || ny < 2) {
        throw std::invalid_argument("curvature-grid: need nx >= 2 and ny >= 2");
    }
    const LiouvilleSurface s =
        make_perturbed_torus(opt.cfg.mu, opt.cfg.amplitude, opt.cfg.allow_unsafe_mu);
    CsvTable table({"x", "y", "A", "K", "K_x", "K_y"});
    table.add_comment(config_comment(opt, opt.cfg.amplitude, opt.cfg.factor.value_or(1)));
    const int p = opt.cfg.precision;
    for (int i = 0; i < nx; ++i) {
        for (int j = 0; j < ny; ++j) {
            const double x = 2.0 * kPi * i / (nx - 1);
            const double y = s.y_strip().lo +
                             (s.y_strip().hi - s.y_strip().lo) * j / (ny - 1);
            const CurvatureSample c = gauss_curvature(s, x, y);
            table.add_row({format_significant(x, p), format_significant(y, p),
                           format_significant(c.A, p), format_significant(c.K, p),
                           format_significant(c.K_x, p), format_significant(c.K_y, p)});
        }
    }
    emit(opt, table);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Melnikov certification of separatrix splitting for the geodesic flow "
                 "of a perturbed-revolution Liouville torus under a curvature-driven "
                 "metric perturbation"};
    app.require_subcommand(1);

    CliOptions opt;

    auto* table_cmd = app.add_subcommand("table", "A_L and tail bounds per window");
    std::vector<double> windows = {1.0, 2.0, 3.0, 5.0, 10.0, 20.0};
    table_cmd->add_option("--windows", windows, "window half-widths");
    bool resolution_report = false;
    table_cmd->add_flag("--resolution-report", resolution_report,
                        "print the configuration-resolution report to stderr");
    add_common_flags(table_cmd, opt);

    auto* sweep_cmd = app.add_subcommand("sweep", "A_L as a function of kappa");
    double kappa_min = -2.0 * kPi, kappa_max = 2.0 * kPi;
    int sweep_n = 129;
    sweep_cmd->add_option("--kappa-min", kappa_min, "sweep start (radians)");
    sweep_cmd->add_option("--kappa-max", kappa_max, "sweep end (radians)");
    sweep_cmd->add_option("-n,--count", sweep_n, "number of samples (>= 2)");
    add_common_flags(sweep_cmd, opt);

    auto* conv_cmd = app.add_subcommand("converge", "RK4 error against the oracle per step size");
    std::vector<double> steps = {0.2, 0.1, 0.05, 0.025, 0.0125};
    conv_cmd->add_option("--steps", steps, "step sizes, strictly decreasing (>= 3)");
    add_common_flags(conv_cmd, opt);

    auto* verify_cmd = app.add_subcommand("verify", "run the full invariant suite");
    std::string inject;
    verify_cmd->add_option("--inject-fault", inject, "test hook: fault to inject")
        ->group("");  // hidden
    add_common_flags(verify_cmd, opt);

    auto* geo_cmd = app.add_subcommand("geodesic", "integrate one geodesic");
    double x0 = 0.0, y0 = 0.0, theta0 = 0.5 * kPi, t_end = 10.0;
    int stride = 100;
    geo_cmd->add_option("--x0", x0, "initial x");
    geo_cmd->add_option("--y0", y0, "initial y");
    geo_cmd->add_option("--theta0", theta0, "initial angle, tan(theta) = p_x/p_y");
    geo_cmd->add_option("--t-end", t_end, "integration time");
    geo_cmd->add_option("--stride", stride, "output every n-th step");
    add_common_flags(geo_cmd, opt);

    auto* grid_cmd = app.add_subcommand("curvature-grid", "K, K_x, K_y on a strip grid");
    int nx = 33, ny = 17;
    grid_cmd->add_option("--nx", nx, "grid points in x");
    grid_cmd->add_option("--ny", ny, "grid points in y");
    add_common_flags(grid_cmd, opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (table_cmd->parsed()) {
            finalize(table_cmd, opt);
            return cmd_table(opt, windows, resolution_report);
        }
        if (sweep_cmd->parsed()) {
            finalize(sweep_cmd, opt);
            return cmd_sweep(opt, kappa_min, kappa_max, sweep_n);
        }
        if (conv_cmd->parsed()) {
            finalize(conv_cmd, opt);
            return cmd_converge(opt, steps);
        }
        if (verify_cmd->parsed()) {
            finalize(verify_cmd, opt);
            return cmd_verify(opt, inject);
        }
        if (geo_cmd->parsed()) {
            finalize(geo_cmd, opt);
            return cmd_geodesic(opt, x0, y0, theta0, t_end, stride);
        }
        if (grid_cmd->parsed()) {
            finalize(grid_cmd, opt);
            return cmd_curvature_grid(opt, nx, ny);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
