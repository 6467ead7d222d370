#include "scanfdr/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace scanfdr {

UnitCdf alt_cdf_function(const MixtureModel& model) {
    return [null_dist = model.null_dist, mu = model.mu](double t) { return alt_pvalue_cdf(null_dist, mu, t); };
}

double beta_constant(double alpha, double pi0) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0,1)");
    if (!(pi0 > 0.0 && pi0 < 1.0)) throw std::invalid_argument("pi0 must lie in (0,1)");
    return (1.0 / (1.0 - pi0)) * (1.0 / alpha - pi0);
}

namespace {

void check_beta(double beta) {
    if (!(beta > 1.0) || !std::isfinite(beta)) {
        throw std::invalid_argument("beta must exceed 1, got " + std::to_string(beta));
    }
}

// Shrinks [lo, hi] with keep_lo(lo) true and keep_lo(hi) false down to adjacent doubles.
template <class Pred>
double bisect(double lo, double hi, Pred keep_lo) {
    for (;;) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (keep_lo(mid) ? lo : hi) = mid;
    }
    return lo;
}

// Objective differences below this are treated as ties.
constexpr double kFlatTolerance = 1e-15;

}  // namespace

double delta_bh(const UnitCdf& G, double beta, const SolverOptions& opt) {
    check_beta(beta);
    const auto excess = [&](double t) { return G(t) - beta * t; };
    const std::size_t n = std::max<std::size_t>(opt.root_grid, 2);
    // G(1) - beta < 0, so the walk down from 1 starts below the line.
    for (std::size_t i = n - 1; i >= 1; --i) {
        const double t = static_cast<double>(i) / static_cast<double>(n);
        if (excess(t) >= 0.0) {
            const double hi = static_cast<double>(i + 1) / static_cast<double>(n);
            return bisect(t, hi, [&](double x) { return excess(x) >= 0.0; });
        }
    }
    return 0.0;
}

std::optional<double> lower_crossing(const UnitCdf& G, double beta, double upper, const SolverOptions& opt) {
    check_beta(beta);
    constexpr double kFloor = 1e-15;
    if (!(upper > kFloor)) return std::nullopt;
    const auto excess = [&](double t) { return G(t) - beta * t; };
    if (excess(kFloor) > 0.0) return std::nullopt;

    const std::size_t m = std::max<std::size_t>(opt.root_grid, 2);
    const double log_lo = std::log(kFloor);
    const double step = (std::log(upper) - log_lo) / static_cast<double>(m);
    double prev = kFloor;
    for (std::size_t k = 1; k <= m; ++k) {
        const double t = k == m ? upper : std::exp(log_lo + step * static_cast<double>(k));
        if (excess(t) > 0.0) {
            return bisect(prev, t, [&](double x) { return excess(x) <= 0.0; });
        }
        prev = t;
    }
    return std::nullopt;
}

ScanSolution delta_scan(const UnitCdf& G, double beta, const SolverOptions& opt) {
    check_beta(beta);
    const auto excess = [&](double t) { return G(t) - beta * t; };

    const std::size_t n_uniform = std::max<std::size_t>(opt.scan_grid, 2);
    const double cell = 1.0 / static_cast<double>(n_uniform);

    std::vector<double> grid;
    grid.reserve(n_uniform + opt.scan_log_points + 2);
    grid.push_back(0.0);
    if (opt.scan_log_points > 0) {
        const double log_lo = std::log(1e-12);
        const double step = (std::log(cell) - log_lo) / static_cast<double>(opt.scan_log_points);
        for (std::size_t k = 0; k < opt.scan_log_points; ++k) {
            grid.push_back(std::exp(log_lo + step * static_cast<double>(k)));
        }
    }
    for (std::size_t j = 1; j <= n_uniform; ++j) grid.push_back(static_cast<double>(j) * cell);

    const std::size_t m = grid.size();
    std::vector<double> level(m);
    for (std::size_t j = 0; j < m; ++j) level[j] = excess(grid[j]);

    std::vector<double> suffix_max(m);
    suffix_max[m - 1] = level[m - 1];
    for (std::size_t j = m - 1; j-- > 0;) suffix_max[j] = std::max(level[j], suffix_max[j + 1]);

    // Largest grid index whose level is at least c (suffix_max is non-increasing).
    const auto last_at_least = [&](double c) -> std::ptrdiff_t {
        const auto it = std::partition_point(suffix_max.begin(), suffix_max.end(),
                                             [c](double v) { return v >= c; });
        return (it - suffix_max.begin()) - 1;
    };

    // Largest t >= s with G(t) - beta t >= G(s) - beta s, to bisection precision.
    const auto reach = [&](double s) {
        const double c = excess(s);
        const std::ptrdiff_t j = last_at_least(c);
        if (j == static_cast<std::ptrdiff_t>(m) - 1) return 1.0;
        double lo = s;
        std::size_t next = 0;
        if (j >= 0 && grid[static_cast<std::size_t>(j)] > s) {
            lo = grid[static_cast<std::size_t>(j)];
            next = static_cast<std::size_t>(j) + 1;
        } else {
            next = static_cast<std::size_t>(std::upper_bound(grid.begin(), grid.end(), s) - grid.begin());
            if (next >= m) return 1.0;
        }
        return bisect(lo, grid[next], [&](double x) { return excess(x) >= c; });
    };

    std::vector<double> length(m);
    std::size_t best = 0;
    for (std::size_t i = 0; i < m; ++i) {
        const std::ptrdiff_t j = last_at_least(level[i]);
        length[i] = grid[static_cast<std::size_t>(j)] - grid[i];
        if (length[i] > length[best]) best = i;
    }

    ScanSolution sol;
    const double slack = 2.0 * cell;
    const auto objective = [&](double s) { return reach(s) - s; };
    double best_s = 0.0;
    double best_val = -1.0;

    // Each run of near-maximal grid starts is refined separately; ties go to the smaller start.
    for (std::size_t i = 0; i < m;) {
        if (length[i] < length[best] - slack) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j + 1 < m && length[j + 1] >= length[best] - slack) ++j;
        ++sol.grid_maximizer_runs;

        double a = grid[i == 0 ? 0 : i - 1];
        double b = grid[std::min(j + 1, m - 1)];
        const double run_lo = a;
        constexpr double kInvPhi = 0.6180339887498949;
        double x1 = b - kInvPhi * (b - a);
        double x2 = a + kInvPhi * (b - a);
        double f1 = objective(x1);
        double f2 = objective(x2);
        while (b - a > opt.interval_tol) {
            if (f1 >= f2) {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - kInvPhi * (b - a);
                f1 = objective(x1);
            } else {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + kInvPhi * (b - a);
                f2 = objective(x2);
            }
        }
        double s = f1 >= f2 ? x1 : x2;
        double v = std::max(f1, f2);
        for (const double g : {grid[i], grid[j]}) {
            const double fg = objective(g);
            if (fg > v || (fg == v && g < s)) {
                s = g;
                v = fg;
            }
        }

        // Slide left across a flat top.
        const auto on_top = [&](double x) { return objective(x) >= v - kFlatTolerance; };
        if (on_top(run_lo)) {
            s = run_lo;
        } else if (run_lo < s) {
            s = bisect(run_lo, s, [&](double x) { return !on_top(x); });
            s = std::nextafter(s, 1.0);
        }
        v = std::max(v, objective(s));

        if (v > best_val + kFlatTolerance) {
            best_val = v;
            best_s = s;
        }
        i = j + 1;
    }

    sol.s = best_s;
    sol.t = reach(best_s);
    sol.delta = sol.t - sol.s;
    sol.degenerate = sol.delta <= opt.degenerate_delta;
    return sol;
}

double fdr_bar_limit(const UnitCdf& G, double pi0, double s, double t) {
    const double len = t - s;
    return len / (pi0 * len + (1.0 - pi0) * (G(t) - G(s)));
}

FnrLimits fnr_limits(double beta, double delta_bh_value, double delta_scan_value) {
    const auto limit = [beta](double delta) {
        double v = 1.0 - beta * delta;
        // Round-off only; a real excursion is left visible.
        if (v < 0.0 && v >= -1e-9) v = 0.0;
        if (v > 1.0 && v <= 1.0 + 1e-9) v = 1.0;
        return v;
    };
    return {limit(delta_bh_value), limit(delta_scan_value)};
}

double alt_density_at_zero(const NullDistribution& null_dist, double mu) {
    if (mu == 0.0 || null_dist.tail()) return 1.0;
    return std::numeric_limits<double>::infinity();
}

Property1Check check_property1(const NullDistribution& null_dist, double mu, double beta,
                               const SolverOptions& opt) {
    Property1Check out;
    const UnitCdf G = [&](double t) { return alt_pvalue_cdf(null_dist, mu, t); };
    out.delta_bh = delta_bh(G, beta, opt);
    out.g_prime_zero = alt_density_at_zero(null_dist, mu);
    if (out.delta_bh <= 0.0) {
        out.degenerate = true;
        return out;
    }
    out.g_prime_delta = alt_pvalue_density(null_dist, mu, out.delta_bh);
    out.holds = out.g_prime_zero < out.g_prime_delta;
    return out;
}

AssumptionACheck check_assumption_A(const UnitCdf& G, double pi0, const ScanSolution& sol,
                                    const SolverOptions& opt) {
    AssumptionACheck out;
    if (sol.degenerate || !(sol.delta > 0.0)) return out;
    const double h = 1e-6 * sol.delta;
    const auto fdr = [&](double s, double t) { return fdr_bar_limit(G, pi0, s, t); };

    {
        const double a = std::max(0.0, sol.s - h);
        const double b = std::min(sol.t, sol.s + h);
        out.slope_left = (fdr(b, sol.t) - fdr(a, sol.t)) / (b - a);
    }
    {
        const double a = std::max(sol.s, sol.t - h);
        const double b = std::min(1.0, sol.t + h);
        out.slope_right = (fdr(sol.s, b) - fdr(sol.s, a)) / (b - a);
    }
    out.holds = out.slope_left < -opt.slope_threshold || out.slope_right > opt.slope_threshold;
    return out;
}

Thm6Limit thm6_limit(const TailSpec& tail, double beta) {
    check_beta(beta);
    if (!(tail.gamma > 0.0)) throw std::invalid_argument("tail exponent gamma must be positive");
    Thm6Limit out;
    out.a = 1.0 / (1.0 - std::pow(beta, -1.0 / tail.gamma));
    // a / (a - 1) = beta^(1/gamma)
    out.limit = std::pow(beta, (tail.gamma + 1.0) / tail.gamma);
    return out;
}

OracleReport compute_oracle(const MixtureModel& model, double alpha, const SolverOptions& opt) {
    OracleReport r;
    r.alpha = alpha;
    r.pi0 = model.pi0();
    r.beta = beta_constant(alpha, r.pi0);
    const UnitCdf G = alt_cdf_function(model);

    r.delta_bh = delta_bh(G, r.beta, opt);
    const ScanSolution sol = delta_scan(G, r.beta, opt);
    r.delta_scan = sol.delta;
    r.s_star = sol.s;
    r.t_star = sol.t;
    r.grid_maximizer_runs = sol.grid_maximizer_runs;
    r.scan_degenerate = sol.degenerate;
    if (sol.delta > 0.0) r.fdr_bar_at_maximizer = fdr_bar_limit(G, r.pi0, sol.s, sol.t);

    const FnrLimits fnr = fnr_limits(r.beta, r.delta_bh, r.delta_scan);
    r.fnr_bh_limit = fnr.bh;
    r.fnr_scan_limit = fnr.scan;

    r.g_prime_zero = alt_density_at_zero(model.null_dist, model.mu);
    if (r.delta_bh > 0.0) {
        r.g_prime_delta_bh = alt_pvalue_density(model, r.delta_bh);
        r.property1_holds = r.g_prime_zero < r.g_prime_delta_bh;
    }

    const AssumptionACheck a = check_assumption_A(G, r.pi0, sol, opt);
    r.assumption_A = a.holds;
    r.slope_left = a.slope_left;
    r.slope_right = a.slope_right;

    r.lower_crossing = lower_crossing(G, r.beta, r.delta_bh, opt);
    if (model.null_dist.tail()) r.thm6 = thm6_limit(*model.null_dist.tail(), r.beta);
    return r;
}

}  // namespace scanfdr
