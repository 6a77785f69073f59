#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "loopcount/degree_sequence.hpp"

using namespace loopcount;

namespace {
double q2_factored_at_mean(const DegreeSequence& seq) {
    // -(1/4) (1 - rho)(3 - rho) with rho = R / (mu2 (1-mu2) n^2)
    const auto& st = seq.stats();
    const double n = seq.n();
    const double mu = st.d.to_double() / (n + 1);
    const double rho = st.R.to_double() / (mu * (1 - mu) * n * n);
    return -0.25 * (1 - rho) * (3 - rho);
}
}  // namespace

TEST_CASE("sequence statistics on the worked examples") {
    const auto a = compute_stats({1, 1});
    CHECK(a.S == 2);
    CHECK(a.S2 == 0);
    CHECK(a.S3 == 0);
    CHECK(a.R == Rational(0));
    CHECK(a.dmax == 1);

    const auto b = compute_stats({2, 2, 2});
    CHECK(b.S == 6);
    CHECK(b.S2 == 6);
    CHECK(b.S3 == 0);
    CHECK(b.R == Rational(0));

    const auto c = compute_stats({3, 1, 1, 1});
    CHECK(c.S == 6);
    CHECK(c.S2 == 6);
    CHECK(c.S3 == 6);
    CHECK(c.R == Rational(3));
    CHECK(c.d == Rational(3, 2));
    CHECK(c.dmax == 3);
}

TEST_CASE("statistics are permutation invariant") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 50; trial++) {
        std::uniform_int_distribution<int> len(1, 12), deg(0, 9);
        std::vector<int> ds(static_cast<size_t>(len(rng)));
        for (int& d : ds) d = deg(rng);
        auto st = compute_stats(ds);
        std::shuffle(ds.begin(), ds.end(), rng);
        auto st2 = compute_stats(ds);
        CHECK(st.S == st2.S);
        CHECK(st.S2 == st2.S2);
        CHECK(st.S3 == st2.S3);
        CHECK(st.R == st2.R);
        CHECK(st.d == st2.d);
        CHECK(st.dmax == st2.dmax);
    }
}

TEST_CASE("stats require a nonempty sequence") {
    CHECK_THROWS_AS(compute_stats({}), Error);
    CHECK_THROWS_AS(DegreeSequence({-1}), Error);
}

TEST_CASE("lbar closed forms") {
    CHECK(to_double(lbar(DegreeSequence::regular(4, 2), LoopModel::twice)) ==
          doctest::Approx(8.0 / 5).epsilon(1e-14));
    CHECK(to_double(lbar(DegreeSequence::regular(2, 1), LoopModel::once)) ==
          doctest::Approx(1.0).epsilon(1e-14));
    CHECK(to_double(lbar(DegreeSequence::regular(22, 10), LoopModel::twice)) ==
          doctest::Approx(220.0 / 23).epsilon(1e-14));
    // continuous-limit endpoints
    CHECK(to_double(lbar(DegreeSequence::regular(5, 0), LoopModel::once)) == 0.0);
    CHECK(to_double(lbar(DegreeSequence::regular(5, 5), LoopModel::once)) == 5.0);
}

TEST_CASE("lbar_1 mirror symmetry: lbar1(d) + lbar1(n-d) = n") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 30; trial++) {
        std::uniform_int_distribution<int> len(2, 14);
        const int n = len(rng);
        std::uniform_int_distribution<int> deg(0, n);
        std::vector<int> ds(static_cast<size_t>(n)), mirror(static_cast<size_t>(n));
        for (int i = 0; i < n; i++) {
            ds[static_cast<size_t>(i)] = deg(rng);
            mirror[static_cast<size_t>(i)] = n - ds[static_cast<size_t>(i)];
        }
        const double lhs = to_double(lbar(DegreeSequence(ds), LoopModel::once)) +
                           to_double(lbar(DegreeSequence(mirror), LoopModel::once));
        CHECK(lhs == doctest::Approx(n).epsilon(1e-12));
    }
}

TEST_CASE("loop model parameters") {
    const auto p1 = loop_params(DegreeSequence::regular(4, 2), LoopModel::once);
    CHECK(p1.mu == Rational(1, 2));
    const auto p2 = loop_params(DegreeSequence::regular(4, 2), LoopModel::twice);
    CHECK(p2.mu == Rational(2, 5));
    CHECK(to_double(p2.lbar) == doctest::Approx(1.6).epsilon(1e-14));
}

TEST_CASE("Q_2 at the concentration point: regular case is exactly -3/4") {
    for (int n : {4, 8, 12, 20}) {
        const auto seq = DegreeSequence::regular(n, n / 2);
        const qreal q = q_dense(seq, LoopModel::twice, lbar(seq, LoopModel::twice));
        CHECK(to_double(q) == doctest::Approx(-0.75).epsilon(1e-12));
    }
}

TEST_CASE("Q_2 at the concentration point matches the factored form") {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 40; trial++) {
        std::uniform_int_distribution<int> len(3, 16);
        const int n = len(rng);
        std::uniform_int_distribution<int> deg(1, n - 1);
        std::vector<int> ds(static_cast<size_t>(n));
        for (int& d : ds) d = deg(rng);
        const DegreeSequence seq(ds);
        const double general =
            to_double(q_dense(seq, LoopModel::twice, lbar(seq, LoopModel::twice)));
        const double factored = q2_factored_at_mean(seq);
        CHECK(general == doctest::Approx(factored).epsilon(1e-10));
    }
}

TEST_CASE("Q_1 at the concentration point, regular case") {
    // n / (2n + 4 sqrt(d (n-d)))
    for (int n : {4, 10, 16}) {
        for (int d = 1; d < n; d++) {
            const auto seq = DegreeSequence::regular(n, d);
            const double got =
                to_double(q_dense(seq, LoopModel::once, lbar(seq, LoopModel::once)));
            const double want = n / (2.0 * n + 4 * std::sqrt(static_cast<double>(d) * (n - d)));
            CHECK(got == doctest::Approx(want).epsilon(1e-12));
        }
    }
}

TEST_CASE("Q rejects degenerate densities") {
    CHECK_THROWS_AS(q_dense(DegreeSequence::regular(4, 0), LoopModel::twice, 1), DensityError);
    CHECK_THROWS_AS(q_dense(DegreeSequence::regular(4, 4), LoopModel::once, 1), DensityError);
}

TEST_CASE("admissibility bound is n + D - 1") {
    const DegreeSequence seq({4, 1, 1});
    CHECK_FALSE(seq.admissible(LoopModel::once));  // cap 3
    CHECK(seq.admissible(LoopModel::twice));       // cap 4
}
