#pragma once

#include <cstddef>
#include <functional>
#include <optional>

#include "scanfdr/distributions.hpp"
#include "scanfdr/mixture.hpp"

namespace scanfdr {

/// A distribution function on [0,1]; G(0) = 0, G(1) = 1.
using UnitCdf = std::function<double(double)>;

UnitCdf alt_cdf_function(const MixtureModel& model);

/// Tolerances and grid sizes of the population-level solvers.
struct SolverOptions {
    /// Uniform grid used to locate the right-most crossing of G(t) = beta t.
    std::size_t root_grid = 10'000;
    /// Uniform part of the (s, t) grid of the scan program.
    std::size_t scan_grid = 1 << 20;
    /// Log-spaced points added on (1e-12, 1/scan_grid) so features near 0 are seen.
    std::size_t scan_log_points = 2'000;
    /// Width at which interval searches stop (bisection, golden section).
    double interval_tol = 1e-12;
    /// delta at or below this is reported as degenerate.
    double degenerate_delta = 1e-6;
    /// Threshold on finite-difference slopes in the assumption-A check.
    double slope_threshold = 1e-8;
};

/// (1/pi1) (1/alpha - pi0)
double beta_constant(double alpha, double pi0);

/// Right-most t in (0,1] with G(t) = beta t, or 0 when G(t) <= beta t on the whole grid.
double delta_bh(const UnitCdf& G, double beta, const SolverOptions& opt = {});

/// Smallest positive t at which G(t) - beta t turns from non-positive to
/// positive, searched on a log grid below `upper`. Empty when G(t) > beta t
/// right from the origin (G'(0) > beta) or no such turn exists.
std::optional<double> lower_crossing(const UnitCdf& G, double beta, double upper,
                                     const SolverOptions& opt = {});

struct ScanSolution {
    double delta = 0.0;
    double s = 0.0;
    double t = 0.0;
    /// Runs of adjacent grid starts whose length is within two grid cells of the best.
    std::size_t grid_maximizer_runs = 0;
    bool degenerate = false;
};

/// max { t - s : G(t) - G(s) = beta (t - s) }, left-most maximiser.
///
/// Every grid start s is paired with the largest grid t where
/// G(t) - beta t >= G(s) - beta s (suffix maxima make this exact over the
/// whole grid of pairs); the best start is then refined by golden section,
/// each trial t found by bisection on the constraint.
ScanSolution delta_scan(const UnitCdf& G, double beta, const SolverOptions& opt = {});

/// (t - s) / (pi0 (t - s) + pi1 (G(t) - G(s))), the limit of the estimated FDR.
double fdr_bar_limit(const UnitCdf& G, double pi0, double s, double t);

struct FnrLimits {
    double bh = 1.0;
    double scan = 1.0;
};

/// 1 - beta * delta for both procedures.
FnrLimits fnr_limits(double beta, double delta_bh_value, double delta_scan_value);

/// G'(0): 1 for power-law tails (and mu = 0), +infinity for the normal family.
double alt_density_at_zero(const NullDistribution& null_dist, double mu);

struct Property1Check {
    bool holds = false;
    bool degenerate = false;
    double g_prime_zero = 0.0;
    double g_prime_delta = 0.0;
    double delta_bh = 0.0;
};

/// G'(0) < G'(delta_bh); degenerate (and false) when delta_bh = 0.
Property1Check check_property1(const NullDistribution& null_dist, double mu, double beta,
                               const SolverOptions& opt = {});
inline Property1Check check_property1(const MixtureModel& m, double beta, const SolverOptions& opt = {}) {
    return check_property1(m.null_dist, m.mu, beta, opt);
}

struct AssumptionACheck {
    bool holds = false;
    /// d/du of the limiting FDR in the left endpoint at s*.
    double slope_left = 0.0;
    /// d/du of the limiting FDR in the right endpoint at t*.
    double slope_right = 0.0;
};

/// Numerical diagnostic: delta > 0 and the limiting FDR is strictly
/// decreasing in the left endpoint at s* or strictly increasing in the right
/// endpoint at t*.
AssumptionACheck check_assumption_A(const UnitCdf& G, double pi0, const ScanSolution& sol,
                                    const SolverOptions& opt = {});

struct Thm6Limit {
    double a = 0.0;
    double limit = 0.0;
};

/// a = (1 - beta^(-1/gamma))^(-1); limit = (a/(a-1))^(gamma+1) = beta^((gamma+1)/gamma).
Thm6Limit thm6_limit(const TailSpec& tail, double beta);

struct OracleReport {
    double alpha = 0.0;
    double pi0 = 0.0;
    double beta = 0.0;
    double delta_bh = 0.0;
    double delta_scan = 0.0;
    double s_star = 0.0;
    double t_star = 0.0;
    std::size_t grid_maximizer_runs = 0;
    bool scan_degenerate = false;
    double fdr_bar_at_maximizer = 0.0;
    double fnr_bh_limit = 1.0;
    double fnr_scan_limit = 1.0;
    bool property1_holds = false;
    double g_prime_zero = 0.0;
    double g_prime_delta_bh = 0.0;
    bool assumption_A = false;
    double slope_left = 0.0;
    double slope_right = 0.0;
    std::optional<double> lower_crossing;
    std::optional<Thm6Limit> thm6;
};

OracleReport compute_oracle(const MixtureModel& model, double alpha, const SolverOptions& opt = {});

}  // namespace scanfdr
