#pragma once

#include <optional>
#include <string_view>

namespace scanfdr {

/// Right-tail shape psi(x) ~ x^(-gamma-1) (log x)^c.
struct TailSpec {
    double gamma = 1.0;
    double c = 0.0;

    bool operator==(const TailSpec&) const = default;
};

enum class NullKind { normal, cauchy };

std::string_view to_string(NullKind k);
NullKind parse_null_kind(std::string_view name);

/// Null distribution Psi of a test statistic, with survival Psi-bar = 1 - Psi.
///
/// Normal: cdf via erfc, quantile by Wichura's AS241 rational approximation
/// (relative accuracy about 1e-16). Cauchy: closed forms, with the survival
/// side written through atan2/cot so the upper tail keeps full precision.
class NullDistribution {
public:
    static NullDistribution normal() { return NullDistribution(NullKind::normal); }
    static NullDistribution cauchy() { return NullDistribution(NullKind::cauchy); }

    explicit NullDistribution(NullKind kind);

    NullKind kind() const noexcept { return kind_; }
    /// Power-law tail, present for Cauchy (gamma = 1, c = 0), absent for normal.
    const std::optional<TailSpec>& tail() const noexcept { return tail_; }

    double cdf(double x) const;
    double survival(double x) const;
    double density(double x) const;
    /// Inverse of cdf on (0,1); domain_error outside.
    double quantile(double u) const;
    /// Inverse of survival on (0,1); maps P-values back to statistics.
    double inverse_survival(double t) const;

    bool operator==(const NullDistribution&) const = default;

private:
    NullKind kind_;
    std::optional<TailSpec> tail_;
};

/// Standard normal quantile (AS241).
double normal_quantile(double u);

}  // namespace scanfdr
