#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "scanfdr/distributions.hpp"
#include "scanfdr/pvalue_sample.hpp"

namespace scanfdr {

/// Location mixture: statistics are Psi-distributed under the null and
/// Psi(. - mu)-distributed under the alternative, with alternative fraction eps.
struct MixtureModel {
    NullDistribution null_dist = NullDistribution::normal();
    double mu = 1.0;
    double eps = 0.1;

    /// Validates mu > 0 and 0 < eps < 1.
    static MixtureModel create(NullDistribution null_dist, double mu, double eps);

    double pi0() const noexcept { return 1.0 - eps; }
    double pi1() const noexcept { return eps; }

    bool operator==(const MixtureModel&) const = default;
};

/// Parses `model=<normal|cauchy> mu=<float> eps=<float>` (keys in any order).
MixtureModel parse_model_spec(std::string_view spec);
std::string format_model_spec(const MixtureModel& model);

/// G(t) = Psi-bar(Psi-bar^{-1}(t) - mu), the P-value cdf under the alternative.
/// Accepts any mu >= 0 so the degenerate mu = 0 case (G(t) = t) is reachable.
double alt_pvalue_cdf(const NullDistribution& null_dist, double mu, double t);
inline double alt_pvalue_cdf(const MixtureModel& m, double t) { return alt_pvalue_cdf(m.null_dist, m.mu, t); }

/// G'(t) = psi(x - mu) / psi(x) with x = Psi-bar^{-1}(t).
///
/// For power-law tails the t -> 0 limit is 1, returned for t < 1e-12; for
/// the normal family G'(0) is +infinity.
double alt_pvalue_density(const NullDistribution& null_dist, double mu, double t);
inline double alt_pvalue_density(const MixtureModel& m, double t) {
    return alt_pvalue_density(m.null_dist, m.mu, t);
}

/// One replication's data: P-values with truth labels and the seed that made them.
struct LabeledSample {
    PValueSample sample;
    std::uint64_t seed = 0;
    MixtureModel model;
};

/// Number of alternatives in a sample of size n: round(n * eps).
std::size_t alternative_count(std::size_t n, double eps);

/// Draws round(n*eps) alternative statistics mu + Z (Z ~ Psi) and maps them to
/// P-values Psi-bar(mu + Z); the rest are null P-values drawn as Uniform(0,1).
/// Labels are placed in a seed-determined random order.
LabeledSample sample_labeled(const MixtureModel& model, std::size_t n, std::uint64_t seed);

/// SplitMix64 finaliser.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Per-replication seed: mix64(mix64(mix64(master) ^ n) ^ rep), each step
/// also adding the golden-ratio increment.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t n, std::uint64_t rep) noexcept;

}  // namespace scanfdr
