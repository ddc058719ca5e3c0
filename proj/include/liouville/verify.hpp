#pragma once

#include <optional>
#include <string>
#include <vector>

#include "liouville/melnikov.hpp"

namespace liouville {

/** All knobs of a run; defaults reproduce the headline configuration
 * (mu = 1/8, kappa = 1, L = 10, h = 1e-3).
 */
struct RunConfig {
    double mu = 0.125;
    double kappa = 1.0;
    double amplitude = 1.0;            // orbit/well amplitude c
    std::optional<int> factor;         // overall constant; default from the resolution
    double window = 10.0;              // L
    double step = 1e-3;                // h
    BoundVariant bound_variant = BoundVariant::Table;
    WindowCenter window_center = WindowCenter::Apex;
    std::string out;                   // output path; empty = stdout
    int precision = 9;                 // significant digits
    bool allow_unsafe_mu = false;

    int effective_factor() const;      // factor, or the resolved default
    void validate() const;             // throws std::invalid_argument
};

enum class FaultInjection { None, CurvatureDerivative };

struct CheckResult {
    std::string name;
    double measured;
    double threshold;
    std::string relation;  // "<", "<=", ">", ...
    bool pass;
    bool skipped = false;
    std::string note;
};

/** The full invariant suite of every module, one result per invariant.
 * FaultInjection::CurvatureDerivative corrupts the second derivative of f
 * by 0.1% before the curvature checks (test hook).
 */
std::vector<CheckResult> run_verification(const RunConfig& cfg,
                                          FaultInjection fault = FaultInjection::None);

}  // namespace liouville
