#include <doctest.h>

#include <cmath>
#include <random>

#include "loopcount/dist.hpp"
#include "oracle.hpp"

using namespace loopcount;

TEST_CASE("pb_pmf on the worked examples") {
    const TraceLaw coins = pb_pmf({0.5, 0.5});
    REQUIRE(coins.pmf.size() == 3);
    CHECK(coins.pmf[0] == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(coins.pmf[1] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(coins.pmf[2] == doctest::Approx(0.25).epsilon(1e-14));

    const TraceLaw empty = pb_pmf({});
    REQUIRE(empty.pmf.size() == 1);
    CHECK(empty.pmf[0] == 1.0);

    const TraceLaw three = pb_pmf({0.1, 0.2, 0.3});
    CHECK(three.pmf[0] == doctest::Approx(0.504).epsilon(1e-14));

    CHECK_THROWS_AS(pb_pmf({0.5, 1.5}), RangeError);
    CHECK_THROWS_AS(pb_pmf({-0.1}), RangeError);
}

TEST_CASE("pb_pmf sums to one and stays nonnegative") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> unif(0, 1);
    for (int trial = 0; trial < 40; trial++) {
        std::uniform_int_distribution<int> len(0, 400);
        std::vector<double> p(static_cast<size_t>(len(rng)));
        for (double& x : p) x = unif(rng);
        const TraceLaw law = pb_pmf(p);
        double sum = 0;
        for (double x : law.pmf) {
            CHECK(x >= 0);
            sum += x;
        }
        CHECK(std::fabs(sum - 1) < 1e-12);
    }
}

TEST_CASE("parity split: constant polynomial gives (1 +/- Z)/2") {
    const std::vector<double> p = {0.1, 0.3, 0.7, 0.25};
    double z = 1;
    for (double pj : p) z *= 1 - 2 * pj;
    CHECK(pb_parity_split(p, {1.0}, 0) == doctest::Approx((1 + z) / 2).epsilon(1e-13));
    CHECK(pb_parity_split(p, {1.0}, 1) == doctest::Approx((1 - z) / 2).epsilon(1e-13));
    CHECK_THROWS_AS(pb_parity_split({0.5}, {1.0}, 0), HypothesisError);
}

TEST_CASE("parity split equals direct summation for f(t) = t^2") {
    const std::vector<double> p = {0.1, 0.2, 0.3};
    const std::vector<double> f = {0.0, 0.0, 1.0};
    const auto pmf = pb_pmf(p).pmf;
    CHECK(pb_parity_split(p, f, 0) ==
          doctest::Approx(oracle::parity_restricted_expectation(pmf, f, 0)).epsilon(1e-12));
    CHECK(pb_parity_split(p, f, 1) ==
          doctest::Approx(oracle::parity_restricted_expectation(pmf, f, 1)).epsilon(1e-12));
}

TEST_CASE("parity split: random cases, completeness, degree up to 8") {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> unif(0, 1), coeff(-1, 1);
    for (int trial = 0; trial < 200; trial++) {
        std::uniform_int_distribution<int> len(1, 12), deg(0, 8);
        std::vector<double> p(static_cast<size_t>(len(rng)));
        for (double& x : p) {
            do {
                x = unif(rng);
            } while (std::fabs(x - 0.5) < 0.01);
        }
        std::vector<double> f(static_cast<size_t>(deg(rng)) + 1);
        for (double& c : f) c = coeff(rng);
        const auto pmf = pb_pmf(p).pmf;
        const double even = pb_parity_split(p, f, 0);
        const double odd = pb_parity_split(p, f, 1);
        const double even_direct = oracle::parity_restricted_expectation(pmf, f, 0);
        const double odd_direct = oracle::parity_restricted_expectation(pmf, f, 1);
        const double scale = std::max({1.0, std::fabs(even_direct), std::fabs(odd_direct)});
        CHECK(std::fabs(even - even_direct) <= 1e-10 * scale);
        CHECK(std::fabs(odd - odd_direct) <= 1e-10 * scale);
        // the two parity classes recompose the full expectation
        const double full = oracle::parity_restricted_expectation(pmf, f, 0) +
                            oracle::parity_restricted_expectation(pmf, f, 1);
        CHECK(std::fabs(even + odd - full) <= 1e-12 * scale);
    }
}

TEST_CASE("chernoff bounds: special values and domination") {
    CHECK(chernoff_tails({0.2, 0.4}, 0.0) == std::pair<double, double>{1.0, 1.0});
    // phi(e-1) = 1, so the upper bound at s = (e-1) mean equals exp(-mean)
    const std::vector<double> p(10, 0.3);
    const double mean = 3.0;
    const auto b = chernoff_tails(p, (std::exp(1.0) - 1) * mean);
    CHECK(b.second == doctest::Approx(std::exp(-mean)).epsilon(1e-12));

    // domination of the exact tails at n = 100, p = 0.1, s = 20
    const std::vector<double> p100(100, 0.1);
    const auto pmf = pb_pmf(p100).pmf;
    double upper_tail = 0;
    for (size_t t = 30; t < pmf.size(); t++) upper_tail += pmf[t];  // X - 10 >= 20
    CHECK(upper_tail <= chernoff_tails(p100, 20).second);
}

TEST_CASE("moment closed forms match direct summation") {
    std::mt19937 rng(29);
    std::uniform_real_distribution<double> unif(0, 1);
    CHECK(pb_moment({0.5, 0.5}, 2) == doctest::Approx(1.5).epsilon(1e-14));
    for (int trial = 0; trial < 60; trial++) {
        std::uniform_int_distribution<int> len(1, 30);
        std::vector<double> p(static_cast<size_t>(len(rng)));
        for (double& x : p) x = unif(rng);
        const auto pmf = pb_pmf(p).pmf;
        for (int k = 1; k <= 4; k++)
            CHECK(pb_moment(p, k) ==
                  doctest::Approx(oracle::moment_by_summation(pmf, k)).epsilon(1e-10));
    }
}

TEST_CASE("central moment closed forms") {
    CHECK(pb_central_moment({0.5, 0.5}, 2) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(pb_central_moment({0.5}, 4) == doctest::Approx(0.0625).epsilon(1e-14));
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> unif(0, 1);
    for (int trial = 0; trial < 40; trial++) {
        std::vector<double> p(30);
        for (double& x : p) x = unif(rng);
        const auto pmf = pb_pmf(p).pmf;
        const double mean = oracle::moment_by_summation(pmf, 1);
        double c2 = 0, c4 = 0;
        for (size_t t = 0; t < pmf.size(); t++) {
            const double d = static_cast<double>(t) - mean;
            c2 += d * d * pmf[t];
            c4 += d * d * d * d * pmf[t];
        }
        CHECK(pb_central_moment(p, 2) == doctest::Approx(c2).epsilon(1e-10));
        CHECK(pb_central_moment(p, 4) == doctest::Approx(c4).epsilon(1e-10));
    }
}

TEST_CASE("exact trace law on the worked examples") {
    CountCache cache;
    const TraceLaw a = trace_law_exact(DegreeSequence({1, 1}), LoopModel::once, cache);
    CHECK(a.pmf[0] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(a.pmf[1] == 0.0);
    CHECK(a.pmf[2] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(a.support_parity == 0);

    const TraceLaw b = trace_law_exact(DegreeSequence({2, 2}), LoopModel::twice, cache);
    CHECK(b.pmf[2] == doctest::Approx(1.0).epsilon(1e-14));

    CHECK_THROWS_AS(trace_law_exact(DegreeSequence({1, 1, 1}), LoopModel::twice, cache),
                    EmptyClassError);
}

TEST_CASE("exact trace mean approaches S2/S for 2-regular graphs") {
    CountCache cache;
    double prev = 1e9;
    for (int n : {8, 16, 24}) {
        const DegreeSequence seq = DegreeSequence::regular(n, 2);
        const TraceLaw law = trace_law_exact(seq, LoopModel::twice, cache);
        const double s2_over_s = 1.0;  // d = 2: S2/S = 2n/2n
        const double gap = std::fabs(law_mean(law) / s2_over_s - 1);
        CHECK(gap < prev);
        prev = gap;
    }
}

TEST_CASE("dense trace law: binomial mean, parity restriction") {
    const DegreeSequence seq = DegreeSequence::regular(12, 6);
    const TraceLaw law2 = trace_law_dense(seq, LoopModel::twice);
    CHECK(law_mean(law2) == doctest::Approx(12.0 * 6 / 13).epsilon(1e-10));

    const TraceLaw law1 = trace_law_dense(seq, LoopModel::once);
    double mass = 0;
    for (size_t i = 0; i < law1.pmf.size(); i++) {
        if (i & 1) CHECK(law1.pmf[i] == 0.0);
        mass += law1.pmf[i];
    }
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(trace_law_dense(DegreeSequence::regular(5, 0), LoopModel::twice),
                    DensityError);
}

TEST_CASE("sparse trace parameters and laws") {
    // 1-regular: p'' = 0, the law is a point mass at zero trace
    const TraceLaw ones = trace_law_sparse(DegreeSequence::regular(6, 1), LoopModel::twice);
    CHECK(ones.pmf[0] == doctest::Approx(1.0).epsilon(1e-14));

    // (2,2): p'' = (1/2, 1/2) gives (1/4, 1/2, 1/4); the exact law is a point
    // mass at 2, so this illustrates the asymptotic-only quality
    const TraceLaw pair = trace_law_sparse(DegreeSequence({2, 2}), LoopModel::twice);
    CHECK(pair.pmf[0] == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(pair.pmf[1] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(pair.pmf[2] == doctest::Approx(0.25).epsilon(1e-14));

    // far outside the sparse regime the p' entries leave [0,1]
    CHECK_THROWS_AS(sparse_trace_params(DegreeSequence({40, 40, 40, 40})), RangeError);
}

TEST_CASE("sparse trace moments expansion") {
    const DegreeSequence seq = DegreeSequence::regular(100, 1);
    const TraceMoments m = sparse_trace_moments(seq, LoopModel::once);
    CHECK(m.mean == doctest::Approx(10 - 0.5).epsilon(1e-12));      // sqrt(100) - 0 - 1/2
    CHECK(m.variance == doctest::Approx(10 - 1.0).epsilon(1e-12));  // sqrt(100) - 0 - 1
    const TraceMoments m2 = sparse_trace_moments(seq, LoopModel::twice);
    CHECK(m2.mean == 0.0);  // S2 = 0
}

TEST_CASE("variance identities on trace laws") {
    std::mt19937 rng(43);
    std::uniform_real_distribution<double> unif(0, 1);
    for (int trial = 0; trial < 30; trial++) {
        std::uniform_int_distribution<int> len(1, 60);
        std::vector<double> p(static_cast<size_t>(len(rng)));
        for (double& x : p) x = unif(rng);
        const TraceLaw law = pb_pmf(p);
        CHECK(law_variance(law) ==
              doctest::Approx(law_variance_pairwise(law)).epsilon(1e-10));
    }
}

TEST_CASE("total variation basics") {
    const TraceLaw a{{1.0, 0.0}, std::nullopt};
    const TraceLaw b{{0.0, 1.0}, std::nullopt};
    CHECK(total_variation(a, b) == doctest::Approx(1.0));
    CHECK(total_variation(a, a) == 0.0);
}

TEST_CASE("involution trace law at n = 400 sits in the expansion windows") {
    // frozen after a first measured run: mean 19.518 vs 19.5, var 19.031 vs
    // 19.0, TV to PB(p') 0.0068
    CountCache cache;
    const DegreeSequence seq = DegreeSequence::regular(400, 1);
    const TraceLaw exact = trace_law_exact(seq, LoopModel::once, cache);
    const TraceMoments expansion = sparse_trace_moments(seq, LoopModel::once);
    CHECK(std::fabs(law_mean(exact) - expansion.mean) < 0.05);
    CHECK(std::fabs(law_variance(exact) - expansion.variance) < 0.05);
    const TraceLaw approx = trace_law_sparse(seq, LoopModel::once);
    CHECK(total_variation(exact, approx) < 0.01);
    CHECK(std::fabs(law_mean(approx) - expansion.mean) < 0.1);
}
