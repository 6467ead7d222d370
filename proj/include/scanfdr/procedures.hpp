#pragma once

#include <cstddef>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "scanfdr/pvalue_sample.hpp"

namespace scanfdr {

enum class Method { bh, scan };

std::string_view to_string(Method m);
Method parse_method(std::string_view name);

/// Rejection region [sigma, tau] chosen by a procedure and what it covers.
///
/// `rejected` holds input indices (ascending) of every P-value in the closed
/// interval, so `covered_count == rejected.size()`. For BH sigma is 0.
struct RejectionOutcome {
    Method method = Method::bh;
    double sigma = 0.0;
    double tau = 0.0;
    std::vector<std::size_t> rejected;
    std::size_t covered_count = 0;
    double fdr_hat = 0.0;
    /// alpha * k / n: the length of the longest continuous interval with the
    /// same covered count that still meets the level.
    double continuous_length = 0.0;

    bool operator==(const RejectionOutcome&) const = default;
};

/// n (t - s) / (R(s,t) v 1), R counting P-values in the closed interval [s, t].
double empirical_fdr_hat(const PValueSample& sample, double s, double t);

/// Benjamini-Hochberg step-up at level alpha.
RejectionOutcome bh_procedure(const PValueSample& sample, double alpha);

/// Longest interval with estimated FDR at most alpha, left-most on ties.
///
/// The search runs over windows of consecutive order statistics: the result
/// covers the largest k for which some window p_(i)..p_(i+k-1) satisfies
/// n * (p_(i+k-1) - p_(i)) <= alpha * k, taking the smallest such i.
/// A single P-value is always feasible, so at least one hypothesis is rejected.
RejectionOutcome scan_procedure(const PValueSample& sample, double alpha);

inline constexpr std::size_t kBruteforceDefaultCap = 2000;

/// Exhaustive O(n^2) enumeration of the same windows; a test oracle.
RejectionOutcome scan_bruteforce(const PValueSample& sample, double alpha,
                                 std::size_t cap = kBruteforceDefaultCap);

RejectionOutcome run_procedure(Method m, const PValueSample& sample, double alpha);

}  // namespace scanfdr
