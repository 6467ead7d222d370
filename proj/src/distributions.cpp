#include "scanfdr/distributions.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace scanfdr {

std::string_view to_string(NullKind k) {
    return k == NullKind::normal ? "normal" : "cauchy";
}

NullKind parse_null_kind(std::string_view name) {
    if (name == "normal") return NullKind::normal;
    if (name == "cauchy") return NullKind::cauchy;
    throw std::invalid_argument("unknown null distribution '" + std::string(name) +
                                "' (expected normal or cauchy)");
}

NullDistribution::NullDistribution(NullKind kind) : kind_(kind) {
    if (kind == NullKind::cauchy) tail_ = TailSpec{1.0, 0.0};
}

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kInvSqrt2Pi = 0.39894228040143267794;

void check_open_unit(double u, const char* what) {
    if (!(u > 0.0 && u < 1.0)) {
        throw std::domain_error(std::string(what) + " argument must lie in (0,1), got " +
                                std::to_string(u));
    }
}

}  // namespace

// Wichura, Algorithm AS241 (PPND16), Applied Statistics 37 (1988).
double normal_quantile(double u) {
    check_open_unit(u, "normal quantile");
    const double q = u - 0.5;
    if (std::fabs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        return q *
               (((((((2509.0809287301226727 * r + 33430.575583588128105) * r + 67265.770927008700853) * r +
                    45921.953931549871457) * r + 13731.693765509461125) * r + 1971.5909503065514427) * r +
                 133.14166789178437745) * r + 3.387132872796366608) /
               (((((((5226.495278852545925 * r + 28729.085735721942674) * r + 39307.89580009271061) * r +
                    21213.794301586595867) * r + 5394.1960214247511077) * r + 687.1870074920579083) * r +
                 42.313330701600911252) * r + 1.0);
    }
    double r = q < 0.0 ? u : 1.0 - u;
    r = std::sqrt(-std::log(r));
    double x;
    if (r <= 5.0) {
        r -= 1.6;
        x = (((((((7.7454501427834140764e-4 * r + 0.0227238449892691845833) * r + 0.24178072517745061177) * r +
                 1.27045825245236838258) * r + 3.64784832476320460504) * r + 5.7694972214606914055) * r +
              4.6303378461565452959) * r + 1.42343711074968357734) /
            (((((((1.05075007164441684324e-9 * r + 5.475938084995344946e-4) * r + 0.0151986665636164571966) * r +
                 0.14810397642748007459) * r + 0.68976733498510000455) * r + 1.6763848301838038494) * r +
              2.05319162663775882187) * r + 1.0);
    } else {
        r -= 5.0;
        x = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r + 0.0012426609473880784386) * r +
                 0.026532189526576123093) * r + 0.29656057182850489123) * r + 1.7848265399172913358) * r +
              5.4637849111641143699) * r + 6.6579046435011037772) /
            (((((((2.04426310338993978564e-15 * r + 1.4215117583164458887e-7) * r + 1.8463183175100546818e-5) * r +
                 7.868691311456132591e-4) * r + 0.0148753612908506148525) * r + 0.13692988092273580531) * r +
              0.59983220655588793769) * r + 1.0);
    }
    return q < 0.0 ? -x : x;
}

double NullDistribution::cdf(double x) const {
    if (kind_ == NullKind::normal) return 0.5 * std::erfc(-x * kInvSqrt2);
    return std::atan2(1.0, -x) / std::numbers::pi;
}

double NullDistribution::survival(double x) const {
    if (kind_ == NullKind::normal) return 0.5 * std::erfc(x * kInvSqrt2);
    return std::atan2(1.0, x) / std::numbers::pi;
}

double NullDistribution::density(double x) const {
    if (kind_ == NullKind::normal) return kInvSqrt2Pi * std::exp(-0.5 * x * x);
    return 1.0 / (std::numbers::pi * (1.0 + x * x));
}

double NullDistribution::quantile(double u) const {
    check_open_unit(u, "quantile");
    if (kind_ == NullKind::normal) return normal_quantile(u);
    // cdf(x) = atan2(1,-x)/pi  =>  x = -cot(pi u), split so the argument of tan stays small.
    if (u <= 0.5) return -1.0 / std::tan(std::numbers::pi * u);
    return 1.0 / std::tan(std::numbers::pi * (1.0 - u));
}

double NullDistribution::inverse_survival(double t) const {
    check_open_unit(t, "inverse survival");
    // Both families are symmetric about 0.
    return -quantile(t);
}

}  // namespace scanfdr
