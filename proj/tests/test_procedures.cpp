#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "scanfdr/procedures.hpp"
#include "scanfdr/pvalue_sample.hpp"

using namespace scanfdr;

TEST_CASE("sample keeps order statistics and input positions") {
    const PValueSample s({0.4, 0.1, 0.4, 0.0, 1.0});
    CHECK(std::vector<double>(s.sorted().begin(), s.sorted().end()) == std::vector<double>{0.0, 0.1, 0.4, 0.4, 1.0});
    // Stable on ties: input 0 precedes input 2.
    CHECK(std::vector<std::size_t>(s.original_index().begin(), s.original_index().end()) ==
          std::vector<std::size_t>{3, 1, 0, 2, 4});
    CHECK(s.value_at(4) == 1.0);
    CHECK(s.count_in(0.1, 0.4) == 3);
    CHECK(s.count_in(0.5, 0.9) == 0);
    CHECK_FALSE(s.has_labels());
    CHECK_THROWS_AS(s.is_null(), std::logic_error);
}

TEST_CASE("sample rejects values outside [0,1] and misaligned labels") {
    CHECK_THROWS_AS(PValueSample({0.2, 1.5}), std::invalid_argument);
    CHECK_THROWS_AS(PValueSample({-0.1}), std::invalid_argument);
    CHECK_THROWS_AS(PValueSample({std::nan("")}), std::invalid_argument);
    CHECK_THROWS_AS(PValueSample({0.1, 0.2}, std::vector<bool>{true}), std::invalid_argument);
}

TEST_CASE("P-value text parsing") {
    SUBCASE("plain and commented") {
        const auto s = parse_pvalues("# header\n0.3\n\n0.1\n  0.2 \n");
        CHECK(s.size() == 3);
        CHECK(s.value_at(0) == 0.3);
        CHECK_FALSE(s.has_labels());
    }
    SUBCASE("labelled") {
        const auto s = parse_pvalues("0.01,0\n0.9,1\n");
        REQUIRE(s.has_labels());
        CHECK(s.is_null() == std::vector<bool>{false, true});
    }
    SUBCASE("errors carry the line number") {
        try {
            parse_pvalues("0.1\n# c\nabc\n", "f.txt");
            FAIL("expected a parse error");
        } catch (const ParseError& e) {
            CHECK(e.line() == 3);
            CHECK(std::string(e.what()).find("f.txt:3") != std::string::npos);
        }
        CHECK_THROWS_AS(parse_pvalues("0.1,1\n0.2\n"), ParseError);
        CHECK_THROWS_AS(parse_pvalues("0.1,2\n"), ParseError);
        CHECK_THROWS_AS(parse_pvalues("1.2\n"), ParseError);
    }
}

TEST_CASE("empirical FDR estimate") {
    const PValueSample s({0.12, 0.15, 0.18});
    CHECK(empirical_fdr_hat(s, 0.1, 0.2) == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(empirical_fdr_hat(s, 0.5, 0.5) == 0.0);
    CHECK(empirical_fdr_hat(s, 0.0, 1.0) == 1.0);
    CHECK(empirical_fdr_hat(PValueSample({0.3, 0.9, 0.05, 0.5}), 0.0, 1.0) == 1.0);
    // Closed interval: both endpoints count.
    CHECK(empirical_fdr_hat(s, 0.12, 0.18) == doctest::Approx(3 * 0.06 / 3));
    CHECK_THROWS_AS(empirical_fdr_hat(s, 0.3, 0.2), std::invalid_argument);
    CHECK_THROWS_AS(empirical_fdr_hat(s, -0.1, 0.2), std::invalid_argument);
    CHECK_THROWS_AS(empirical_fdr_hat(s, 0.1, 1.2), std::invalid_argument);
}

TEST_CASE("BH step-up examples") {
    SUBCASE("three rejections") {
        const std::vector<double> p{0.001, 0.018, 0.04, 0.5};
        const auto oracle = oracles::bh_exhaustive(p, 0.1);
        CHECK(oracle.count == 3);
        CHECK(oracle.hi == 0.04);

        const auto out = bh_procedure(PValueSample(p), 0.1);
        CHECK(out.method == Method::bh);
        CHECK(out.sigma == 0.0);
        CHECK(out.tau == 0.04);
        CHECK(out.covered_count == 3);
        CHECK(out.rejected == std::vector<std::size_t>{0, 1, 2});
        CHECK(out.fdr_hat == doctest::Approx(4 * 0.04 / 3));
    }
    SUBCASE("nothing below the line") {
        const auto out = bh_procedure(PValueSample({0.5, 0.6, 0.9}), 0.1);
        CHECK(out.covered_count == 0);
        CHECK(out.rejected.empty());
        CHECK(out.sigma == 0.0);
        CHECK(out.tau == 0.0);
        CHECK(out.fdr_hat == 0.0);
    }
    SUBCASE("single hypothesis") {
        const auto out = bh_procedure(PValueSample({0.05}), 0.1);
        CHECK(out.covered_count == 1);
        CHECK(out.tau == 0.05);
    }
    SUBCASE("alpha domain") {
        const PValueSample s({0.05});
        CHECK_THROWS_AS(bh_procedure(s, 0.0), std::invalid_argument);
        CHECK_THROWS_AS(bh_procedure(s, 1.0), std::invalid_argument);
        CHECK_THROWS_AS(bh_procedure(s, -0.2), std::invalid_argument);
    }
}

TEST_CASE("scan examples agree with pair enumeration") {
    struct Case {
        std::vector<double> p;
        double alpha;
        double sigma;
        double tau;
        std::size_t k;
    };
    const std::vector<Case> cases{
        {{0.30, 0.31, 0.32, 0.33}, 0.1, 0.30, 0.33, 4},
        {{0.1, 0.2, 0.8, 0.9}, 0.5, 0.1, 0.2, 2},
        {{0.5, 0.9}, 0.01, 0.5, 0.5, 1},
    };
    for (const auto& c : cases) {
        CAPTURE(c.alpha);
        const auto oracle = oracles::scan_pairs(c.p, c.alpha);
        REQUIRE(oracle.lo == c.sigma);
        REQUIRE(oracle.hi == c.tau);
        REQUIRE(oracle.count == c.k);

        const PValueSample s(c.p);
        const auto fast = scan_procedure(s, c.alpha);
        CHECK(fast.sigma == c.sigma);
        CHECK(fast.tau == c.tau);
        CHECK(fast.covered_count == c.k);
        CHECK(fast.fdr_hat <= c.alpha);
        CHECK(fast == scan_bruteforce(s, c.alpha));
    }
    const auto first = scan_procedure(PValueSample({0.30, 0.31, 0.32, 0.33}), 0.1);
    CHECK(first.fdr_hat == doctest::Approx(0.03).epsilon(1e-9));
    CHECK(first.continuous_length == doctest::Approx(0.1));
    CHECK(bh_procedure(PValueSample({0.30, 0.31, 0.32, 0.33}), 0.1).covered_count == 0);
}

TEST_CASE("scan edge cases") {
    const auto one = scan_procedure(PValueSample({0.42}), 0.3);
    CHECK(one.sigma == 0.42);
    CHECK(one.tau == 0.42);
    CHECK(one.covered_count == 1);
    CHECK(one == scan_bruteforce(PValueSample({0.42}), 0.3));

    CHECK_THROWS_AS(scan_procedure(PValueSample(std::vector<double>{}), 0.1), std::invalid_argument);
    CHECK_THROWS_AS(scan_procedure(PValueSample({0.1}), 1.0), std::invalid_argument);

    std::mt19937_64 rng(7);
    const PValueSample big(oracles::random_pvalues(rng, 30));
    CHECK_THROWS_AS(scan_bruteforce(big, 0.1, 20), std::length_error);

    // Duplicated values: zero-span windows always qualify.
    const auto dup = scan_procedure(PValueSample({0.7, 0.2, 0.7, 0.7, 0.95}), 0.01);
    CHECK(dup.sigma == 0.7);
    CHECK(dup.tau == 0.7);
    CHECK(dup.covered_count == 3);
    CHECK(dup.rejected == std::vector<std::size_t>{0, 2, 3});
}

TEST_CASE("scan and BH properties on random samples") {
    std::mt19937_64 rng(20240611);
    std::uniform_int_distribution<std::size_t> size(1, 60);
    const std::vector<double> alphas{0.01, 0.05, 0.1, 0.25, 0.5, 0.9};
    for (int trial = 0; trial < 400; ++trial) {
        const std::size_t n = size(rng);
        const double grain = trial % 3 == 0 ? 0.02 : 0.0;
        const auto p = trial % 2 ? oracles::random_pvalues(rng, n, grain)
                                 : oracles::cauchy_mixture_pvalues(rng, n, 0.3, 20.0);
        const PValueSample s(p);
        std::size_t prev_scan = 0;
        std::size_t prev_bh = 0;
        for (const double a : alphas) {
            CAPTURE(trial);
            CAPTURE(a);
            const auto scan = scan_procedure(s, a);
            const auto bh = bh_procedure(s, a);

            const auto ps = oracles::scan_pairs(p, a);
            CHECK(scan.covered_count == ps.count);
            CHECK(scan.sigma == ps.lo);
            CHECK(scan == scan_bruteforce(s, a));

            const auto pb = oracles::bh_exhaustive(p, a);
            CHECK(bh.covered_count == pb.count);
            CHECK(bh.tau == pb.hi);

            // Feasibility and the interval/rejection-set contract.
            CHECK(static_cast<double>(n) * (scan.tau - scan.sigma) <=
                  a * static_cast<double>(std::max<std::size_t>(scan.covered_count, 1)));
            CHECK(scan.fdr_hat <= a);
            CHECK(scan.covered_count == s.count_in(scan.sigma, scan.tau));
            CHECK(bh.covered_count == (bh.covered_count ? s.count_in(0.0, bh.tau) : 0));

            CHECK(scan.covered_count >= bh.covered_count);
            CHECK(scan.covered_count >= prev_scan);
            CHECK(bh.covered_count >= prev_bh);
            prev_scan = scan.covered_count;
            prev_bh = bh.covered_count;
        }
    }
}

TEST_CASE("procedures are permutation invariant") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        auto p = oracles::cauchy_mixture_pvalues(rng, 80, 0.2, 15.0);
        std::vector<std::size_t> perm(p.size());
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<double> q(p.size());
        for (std::size_t i = 0; i < p.size(); ++i) q[i] = p[perm[i]];  // q[i] is p[perm[i]]

        for (const Method m : {Method::bh, Method::scan}) {
            const auto a = run_procedure(m, PValueSample(p), 0.1);
            const auto b = run_procedure(m, PValueSample(q), 0.1);
            CHECK(a.sigma == b.sigma);
            CHECK(a.tau == b.tau);
            CHECK(a.covered_count == b.covered_count);
            std::vector<std::size_t> mapped;
            for (const std::size_t i : b.rejected) mapped.push_back(perm[i]);
            std::sort(mapped.begin(), mapped.end());
            CHECK(mapped == a.rejected);
        }
    }
}

TEST_CASE("method names") {
    CHECK(parse_method("bh") == Method::bh);
    CHECK(to_string(Method::scan) == "scan");
    CHECK_THROWS_AS(parse_method("holm"), std::invalid_argument);
}
