#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "scanfdr/distributions.hpp"
#include "scanfdr/mixture.hpp"

using namespace scanfdr;

namespace {

std::vector<double> open_grid() {
    std::vector<double> u{1e-6, 1e-5, 1e-4, 1e-3};
    for (int i = 1; i < 100; ++i) u.push_back(i / 100.0);
    for (double v : {1e-3, 1e-4, 1e-5, 1e-6}) u.push_back(1.0 - v);
    return u;
}

}  // namespace

TEST_CASE("normal cdf against quadrature and reference values") {
    const auto N = NullDistribution::normal();
    for (double x = -8.0; x <= 8.0; x += 0.25) {
        CAPTURE(x);
        CHECK(std::fabs(N.cdf(x) - oracles::normal_cdf_quadrature(x)) <= 1e-12);
    }
    // 20-digit values.
    CHECK(N.cdf(-8.0) == doctest::Approx(6.2209605742717841235e-16).epsilon(1e-12));
    CHECK(N.cdf(-3.0) == doctest::Approx(0.0013498980316300945267).epsilon(1e-13));
    CHECK(N.cdf(-1.2) == doctest::Approx(0.11506967022170826802).epsilon(1e-13));
    CHECK(N.cdf(1.5) == doctest::Approx(0.933192798731141934).epsilon(1e-14));
    CHECK(N.survival(2.5) == doctest::Approx(1.0 - 0.99379033467422386483).epsilon(1e-12));
}

TEST_CASE("normal quantile reference values") {
    CHECK(normal_quantile(1e-10) == doctest::Approx(-6.3613409024040562047).epsilon(1e-14));
    CHECK(normal_quantile(0.001) == doctest::Approx(-3.0902323061678135415).epsilon(1e-14));
    CHECK(normal_quantile(0.3) == doctest::Approx(-0.52440051270804078404).epsilon(1e-14));
    CHECK(normal_quantile(0.975) == doctest::Approx(1.9599639845400542355).epsilon(1e-14));
    CHECK(NullDistribution::normal().quantile(0.5) == 0.0);
}

TEST_CASE("distribution function contracts") {
    for (const auto& d : {NullDistribution::normal(), NullDistribution::cauchy()}) {
        CAPTURE(to_string(d.kind()));
        for (const double u : open_grid()) {
            CHECK(std::fabs(d.cdf(d.quantile(u)) - u) <= 1e-8);
            CHECK(std::fabs(d.survival(d.inverse_survival(u)) - u) <= 1e-8);
        }
        const double h = 1e-5;
        double prev = 0.0;
        for (double x = -30.0; x <= 30.0; x += 0.37) {
            const double fd = (d.cdf(x + h) - d.cdf(x - h)) / (2 * h);
            CHECK(std::fabs(d.density(x) - fd) <= 1e-5);
            CHECK(d.cdf(x) >= prev);
            CHECK(d.cdf(x) + d.survival(x) == doctest::Approx(1.0).epsilon(1e-15));
            prev = d.cdf(x);
        }
        CHECK(d.cdf(-1e300) == doctest::Approx(0.0));
        CHECK(d.cdf(1e300) == doctest::Approx(1.0));
        CHECK_THROWS_AS(d.quantile(0.0), std::domain_error);
        CHECK_THROWS_AS(d.quantile(1.0), std::domain_error);
        CHECK_THROWS_AS(d.inverse_survival(1.5), std::domain_error);
    }
}

TEST_CASE("cauchy closed forms") {
    const auto C = NullDistribution::cauchy();
    CHECK(C.cdf(0.0) == 0.5);
    CHECK(C.quantile(0.75) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(C.quantile(0.25) == doctest::Approx(-1.0).epsilon(1e-15));
    REQUIRE(C.tail());
    CHECK(C.tail()->gamma == 1.0);
    CHECK(C.tail()->c == 0.0);
    CHECK_FALSE(NullDistribution::normal().tail());
    // Far upper tail keeps relative precision: survival(x) ~ 1/(pi x).
    CHECK(C.survival(1e8) == doctest::Approx(1.0 / (3.14159265358979323846 * 1e8)).epsilon(1e-12));
    CHECK(C.inverse_survival(1e-9) == doctest::Approx(1.0 / std::tan(3.14159265358979323846e-9)).epsilon(1e-12));
}

TEST_CASE("alternative P-value cdf G") {
    const auto cauchy = MixtureModel::create(NullDistribution::cauchy(), 37.0, 0.1);
    const auto normal = MixtureModel::create(NullDistribution::normal(), 4.0, 0.05);
    CHECK(alt_pvalue_cdf(cauchy, 0.5) == doctest::Approx(0.99139912389456684593).epsilon(1e-13));
    for (const auto& m : {cauchy, normal}) {
        CHECK(alt_pvalue_cdf(m, 0.0) == 0.0);
        CHECK(alt_pvalue_cdf(m, 1.0) == 1.0);
        double prev = 0.0;
        for (int i = 0; i <= 1000; ++i) {
            const double g = alt_pvalue_cdf(m, i / 1000.0);
            CHECK(g >= prev);
            CHECK(g <= 1.0);
            prev = g;
        }
    }
    for (const auto& d : {NullDistribution::normal(), NullDistribution::cauchy()}) {
        for (double t = 0.05; t < 1.0; t += 0.1) {
            CHECK(alt_pvalue_cdf(d, 0.0, t) == doctest::Approx(t).epsilon(1e-12));
        }
    }
    CHECK_THROWS_AS(alt_pvalue_cdf(cauchy, 1.1), std::domain_error);
}

TEST_CASE("alternative P-value density G'") {
    const auto cauchy = MixtureModel::create(NullDistribution::cauchy(), 37.0, 0.1);
    const auto normal = MixtureModel::create(NullDistribution::normal(), 4.0, 0.05);
    CHECK(alt_pvalue_density(cauchy, 0.5) == doctest::Approx(1.0 / 1370.0).epsilon(1e-12));
    CHECK(alt_pvalue_density(normal, 0.5) == doctest::Approx(0.00033546262790251183882).epsilon(1e-12));
    CHECK(alt_pvalue_density(cauchy, 1e-13) == 1.0);
    CHECK(alt_pvalue_density(cauchy, 0.0) == 1.0);
    CHECK(std::isinf(alt_pvalue_density(normal, 0.0)));
    CHECK(alt_pvalue_density(NullDistribution::normal(), 0.0, 0.3) == 1.0);

    const double h = 1e-5;
    for (const auto& m : {cauchy, normal}) {
        double prev = std::numeric_limits<double>::infinity();
        for (int i = 1; i <= 99; ++i) {
            const double t = i / 100.0;
            const auto G = [&](double x) { return alt_pvalue_cdf(m, x); };
            // Five-point stencil; the two-point rule has O(h^2) error ~1e-3 near t = 0.01 for the Cauchy model.
            const double fd = (G(t - 2 * h) - 8 * G(t - h) + 8 * G(t + h) - G(t + 2 * h)) / (12 * h);
            CAPTURE(t);
            CHECK(std::fabs(alt_pvalue_density(m, t) - fd) <= 1e-5);
            if (m.null_dist.kind() == NullKind::normal) {
                CHECK(alt_pvalue_density(m, t) < prev);
                prev = alt_pvalue_density(m, t);
            }
        }
    }
    // Cauchy with a large shift: G' is not maximised at 0.
    double top = 0.0;
    for (int i = 1; i < 10000; ++i) top = std::max(top, alt_pvalue_density(cauchy, i / 10000.0));
    CHECK(top > alt_pvalue_density(cauchy, 0.0));
}

TEST_CASE("model construction and spec grammar") {
    CHECK_THROWS_AS(MixtureModel::create(NullDistribution::normal(), 0.0, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(MixtureModel::create(NullDistribution::normal(), 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(MixtureModel::create(NullDistribution::normal(), 1.0, 0.0), std::invalid_argument);

    const auto m = parse_model_spec("model=cauchy mu=37 eps=0.1");
    CHECK(m.null_dist.kind() == NullKind::cauchy);
    CHECK(m.mu == 37.0);
    CHECK(m.eps == 0.1);
    CHECK(m.pi0() == 0.9);
    CHECK(parse_model_spec(format_model_spec(m)) == m);
    CHECK(parse_model_spec("eps=0.05  mu=4 model=normal").null_dist.kind() == NullKind::normal);
    CHECK_THROWS_AS(parse_model_spec("model=laplace mu=1 eps=0.1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_model_spec("model=normal mu=1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_model_spec("model=normal mu=x eps=0.1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_model_spec("model=normal mu=1 eps=0.1 sd=2"), std::invalid_argument);
}

TEST_CASE("labelled sampling") {
    const auto model = MixtureModel::create(NullDistribution::cauchy(), 37.0, 0.1);

    SUBCASE("fixed composition") {
        const auto d = sample_labeled(model, 4000, 11);
        const auto& lab = d.sample.is_null();
        CHECK(std::count(lab.begin(), lab.end(), false) == 400);
        CHECK(std::count(lab.begin(), lab.end(), true) == 3600);
        CHECK(alternative_count(7, 0.5) == 4);
        CHECK(alternative_count(10, 0.04) == 0);
    }
    SUBCASE("determinism") {
        const auto a = sample_labeled(model, 500, 3);
        const auto b = sample_labeled(model, 500, 3);
        const auto c = sample_labeled(model, 500, 4);
        bool same = true;
        bool differs = false;
        for (std::size_t i = 0; i < 500; ++i) {
            same = same && a.sample.value_at(i) == b.sample.value_at(i);
            differs = differs || a.sample.value_at(i) != c.sample.value_at(i);
        }
        CHECK(same);
        CHECK(a.sample.is_null() == b.sample.is_null());
        CHECK(differs);
        CHECK_THROWS_AS(sample_labeled(model, 0, 1), std::invalid_argument);
    }
    SUBCASE("alternatives follow G, nulls are uniform") {
        const auto d = sample_labeled(model, 100000, 20240101);
        std::vector<double> alt;
        std::vector<double> null;
        for (std::size_t i = 0; i < d.sample.size(); ++i) {
            (d.sample.is_null()[i] ? null : alt).push_back(d.sample.value_at(i));
        }
        REQUIRE(alt.size() == 10000);
        const double d_alt = oracles::ks_distance(alt, [&](double t) { return alt_pvalue_cdf(model, t); });
        CHECK(d_alt <= 0.01);
        const double d_null = oracles::ks_distance(null, [](double t) { return t; });
        CHECK(oracles::kolmogorov_pvalue(d_null, null.size()) > 1e-3);
    }
    SUBCASE("normal nulls are uniform") {
        const auto normal = MixtureModel::create(NullDistribution::normal(), 4.0, 0.05);
        const auto d = sample_labeled(normal, 20000, 5);
        std::vector<double> null;
        std::vector<double> alt;
        for (std::size_t i = 0; i < d.sample.size(); ++i) {
            (d.sample.is_null()[i] ? null : alt).push_back(d.sample.value_at(i));
        }
        CHECK(oracles::kolmogorov_pvalue(oracles::ks_distance(null, [](double t) { return t; }), null.size()) > 1e-3);
        const double d_alt = oracles::ks_distance(alt, [&](double t) { return alt_pvalue_cdf(normal, t); });
        CHECK(oracles::kolmogorov_pvalue(d_alt, alt.size()) > 1e-3);
    }
}

TEST_CASE("seed derivation") {
    CHECK(derive_seed(1, 2000, 0) == derive_seed(1, 2000, 0));
    CHECK(derive_seed(1, 2000, 0) != derive_seed(1, 2000, 1));
    CHECK(derive_seed(1, 2000, 0) != derive_seed(1, 3000, 0));
    CHECK(derive_seed(1, 2000, 0) != derive_seed(2, 2000, 0));
    // SplitMix64 reference output for state 0.
    CHECK(mix64(0) == 0xe220a8397b1dcdafULL);
}
