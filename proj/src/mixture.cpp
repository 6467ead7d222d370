#include "scanfdr/mixture.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <limits>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>

namespace scanfdr {

MixtureModel MixtureModel::create(NullDistribution null_dist, double mu, double eps) {
    if (!(mu > 0.0) || !std::isfinite(mu)) {
        throw std::invalid_argument("mu must be a positive finite effect size, got " + std::to_string(mu));
    }
    if (!(eps > 0.0 && eps < 1.0)) {
        throw std::invalid_argument("eps must lie in (0,1), got " + std::to_string(eps));
    }
    return MixtureModel{null_dist, mu, eps};
}

namespace {

double parse_number(std::string_view key, std::string_view value) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc{} || ptr != value.data() + value.size() || value.empty()) {
        throw std::invalid_argument("model spec: cannot parse " + std::string(key) + "='" +
                                    std::string(value) + "'");
    }
    return v;
}

}  // namespace

MixtureModel parse_model_spec(std::string_view spec) {
    std::optional<NullKind> kind;
    std::optional<double> mu;
    std::optional<double> eps;

    std::istringstream in{std::string(spec)};
    std::string token;
    while (in >> token) {
        const auto eq = token.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("model spec: expected key=value, got '" + token + "'");
        }
        const std::string_view key = std::string_view(token).substr(0, eq);
        const std::string_view value = std::string_view(token).substr(eq + 1);
        if (key == "model") {
            kind = parse_null_kind(value);
        } else if (key == "mu") {
            mu = parse_number(key, value);
        } else if (key == "eps") {
            eps = parse_number(key, value);
        } else {
            throw std::invalid_argument("model spec: unknown key '" + std::string(key) + "'");
        }
    }
    if (!kind || !mu || !eps) {
        throw std::invalid_argument("model spec must set model, mu and eps");
    }
    return MixtureModel::create(NullDistribution(*kind), *mu, *eps);
}

std::string format_model_spec(const MixtureModel& model) {
    std::ostringstream out;
    out << std::setprecision(std::numeric_limits<double>::max_digits10) << "model="
        << to_string(model.null_dist.kind()) << " mu=" << model.mu << " eps=" << model.eps;
    return out.str();
}

double alt_pvalue_cdf(const NullDistribution& null_dist, double mu, double t) {
    if (!(t >= 0.0 && t <= 1.0)) throw std::domain_error("G(t) needs t in [0,1]");
    if (t == 0.0) return 0.0;
    if (t == 1.0) return 1.0;
    return null_dist.survival(null_dist.inverse_survival(t) - mu);
}

double alt_pvalue_density(const NullDistribution& null_dist, double mu, double t) {
    if (!(t >= 0.0 && t <= 1.0)) throw std::domain_error("G'(t) needs t in [0,1]");
    if (mu == 0.0) return 1.0;
    if (null_dist.tail() && t < 1e-12) return 1.0;
    if (null_dist.kind() == NullKind::normal) {
        if (t == 0.0) return std::numeric_limits<double>::infinity();
        if (t == 1.0) return 0.0;
        const double z = null_dist.inverse_survival(t);
        return std::exp(mu * z - 0.5 * mu * mu);
    }
    if (t == 1.0) return 1.0;
    // Cauchy: (1 + x^2) / (1 + (x - mu)^2), the density ratio without the 1/pi factors.
    const double x = null_dist.inverse_survival(t);
    const double d = x - mu;
    return (1.0 + x * x) / (1.0 + d * d);
}

std::size_t alternative_count(std::size_t n, double eps) {
    return static_cast<std::size_t>(std::llround(static_cast<double>(n) * eps));
}

std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t n, std::uint64_t rep) noexcept {
    return mix64(mix64(mix64(master) ^ n) ^ rep);
}

namespace {

// Uniform on the open interval (0,1) from the top 53 bits.
double open_uniform(std::mt19937_64& rng) {
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace

LabeledSample sample_labeled(const MixtureModel& model, std::size_t n, std::uint64_t seed) {
    if (n == 0) throw std::invalid_argument("sample size must be at least 1");
    std::mt19937_64 rng(mix64(seed));

    const std::size_t n_alt = alternative_count(n, model.eps);
    std::vector<bool> is_null(n, true);
    std::fill(is_null.begin(), is_null.begin() + static_cast<std::ptrdiff_t>(n_alt), false);
    std::shuffle(is_null.begin(), is_null.end(), rng);

    std::vector<double> p(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double u = open_uniform(rng);
        if (is_null[i]) {
            p[i] = u;
        } else {
            const double x = model.mu + model.null_dist.quantile(u);
            p[i] = model.null_dist.survival(x);
        }
    }
    return LabeledSample{PValueSample(std::move(p), std::move(is_null)), seed, model};
}

}  // namespace scanfdr
