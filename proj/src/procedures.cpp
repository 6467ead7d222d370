#include "scanfdr/procedures.hpp"

#include <algorithm>
#include <string>

namespace scanfdr {

std::string_view to_string(Method m) {
    switch (m) {
        case Method::bh: return "bh";
        case Method::scan: return "scan";
    }
    return "?";
}

Method parse_method(std::string_view name) {
    if (name == "bh") return Method::bh;
    if (name == "scan") return Method::scan;
    throw std::invalid_argument("unknown method '" + std::string(name) + "' (expected bh or scan)");
}

namespace {

void check_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::invalid_argument("alpha must lie in (0,1), got " + std::to_string(alpha));
    }
}

// Shared feasibility predicate for the step-up, the window search and the
// brute-force oracle. No tolerance: the comparison is exact in doubles.
inline bool within_level(std::size_t n, double span, double alpha, std::size_t k) {
    return static_cast<double>(n) * span <= alpha * static_cast<double>(k);
}

RejectionOutcome make_outcome(const PValueSample& sample, Method method, double alpha, double sigma,
                              double tau, bool empty) {
    RejectionOutcome out;
    out.method = method;
    out.sigma = sigma;
    out.tau = tau;
    if (!empty) {
        const auto sorted = sample.sorted();
        const auto order = sample.original_index();
        const auto lo = std::lower_bound(sorted.begin(), sorted.end(), sigma) - sorted.begin();
        const auto hi = std::upper_bound(sorted.begin(), sorted.end(), tau) - sorted.begin();
        out.rejected.assign(order.begin() + lo, order.begin() + hi);
        std::sort(out.rejected.begin(), out.rejected.end());
    }
    out.covered_count = out.rejected.size();
    const double n = static_cast<double>(sample.size());
    out.fdr_hat = n * (tau - sigma) / static_cast<double>(std::max<std::size_t>(out.covered_count, 1));
    out.continuous_length =
        sample.empty() ? 0.0 : alpha * static_cast<double>(out.covered_count) / n;
    return out;
}

}  // namespace

double empirical_fdr_hat(const PValueSample& sample, double s, double t) {
    if (!(s >= 0.0 && t <= 1.0 && s <= t)) {
        throw std::invalid_argument("invalid interval [" + std::to_string(s) + ", " + std::to_string(t) +
                                    "]: need 0 <= s <= t <= 1");
    }
    const std::size_t r = std::max<std::size_t>(sample.count_in(s, t), 1);
    return static_cast<double>(sample.size()) * (t - s) / static_cast<double>(r);
}

RejectionOutcome bh_procedure(const PValueSample& sample, double alpha) {
    check_alpha(alpha);
    const auto p = sample.sorted();
    const std::size_t n = p.size();
    for (std::size_t k = n; k >= 1; --k) {
        if (within_level(n, p[k - 1], alpha, k)) {
            return make_outcome(sample, Method::bh, alpha, 0.0, p[k - 1], false);
        }
    }
    return make_outcome(sample, Method::bh, alpha, 0.0, 0.0, true);
}

RejectionOutcome scan_procedure(const PValueSample& sample, double alpha) {
    check_alpha(alpha);
    if (sample.empty()) throw std::invalid_argument("scan procedure needs at least one P-value");
    const auto p = sample.sorted();
    const std::size_t n = p.size();
    // Largest feasible count first; the first hit for a given k is the left-most window.
    for (std::size_t k = n; k >= 1; --k) {
        for (std::size_t i = 0; i + k <= n; ++i) {
            if (within_level(n, p[i + k - 1] - p[i], alpha, k)) {
                return make_outcome(sample, Method::scan, alpha, p[i], p[i + k - 1], false);
            }
        }
    }
    // k = 1 always succeeds (zero span).
    throw std::logic_error("scan procedure found no feasible window");
}

RejectionOutcome scan_bruteforce(const PValueSample& sample, double alpha, std::size_t cap) {
    check_alpha(alpha);
    if (sample.empty()) throw std::invalid_argument("scan procedure needs at least one P-value");
    if (sample.size() > cap) {
        throw std::length_error("brute-force scan capped at n = " + std::to_string(cap) + ", got " +
                                std::to_string(sample.size()));
    }
    const auto p = sample.sorted();
    const std::size_t n = p.size();
    std::size_t best_i = 0;
    std::size_t best_k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            const std::size_t k = j - i + 1;
            if (k > best_k && within_level(n, p[j] - p[i], alpha, k)) {
                best_k = k;
                best_i = i;
            }
        }
    }
    return make_outcome(sample, Method::scan, alpha, p[best_i], p[best_i + best_k - 1], false);
}

RejectionOutcome run_procedure(Method m, const PValueSample& sample, double alpha) {
    return m == Method::bh ? bh_procedure(sample, alpha) : scan_procedure(sample, alpha);
}

}  // namespace scanfdr
