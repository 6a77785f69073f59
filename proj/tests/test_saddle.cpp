#include <doctest.h>

#include <cmath>
#include <random>

#include "loopcount/asymptotics.hpp"
#include "loopcount/saddle.hpp"

using namespace loopcount;

TEST_CASE("elementary symmetric sums: boundary values") {
    WeightVector w{{0.3, -0.2, 0.5, 0.1}};
    CHECK(to_double(u_exact(w, 0)) == 1.0);
    double total = 0;
    for (double b : w.beta) total += b;
    CHECK(to_double(u_exact(w, 4)) == doctest::Approx(std::exp(total)).epsilon(1e-13));
}

TEST_CASE("zero weights give binomial coefficients") {
    WeightVector w{std::vector<double>(10, 0.0)};
    for (int ell = 0; ell <= 10; ell++) {
        CHECK(to_double(u_exact(w, ell)) ==
              doctest::Approx(to_double(qexp(log_binomial(10, ell)))).epsilon(1e-13));
        CHECK(to_double(u_asymptotic(w, ell)) ==
              doctest::Approx(to_double(u_exact(w, ell))).epsilon(1e-13));
    }
}

TEST_CASE("constant weights: asymptotic form is exact") {
    WeightVector w{std::vector<double>(12, 0.37)};
    for (int ell = 0; ell <= 12; ell++)
        CHECK(to_double(u_exact_log(w, ell)) ==
              doctest::Approx(to_double(u_asymptotic_log(w, ell))).epsilon(1e-12));
}

TEST_CASE("symmetry: U_ell(beta) = exp(sum beta) U_{n-ell}(-beta)") {
    std::mt19937 rng(13);
    std::uniform_real_distribution<double> unif(-1, 1);
    for (int trial = 0; trial < 20; trial++) {
        std::uniform_int_distribution<int> len(1, 40);
        const int n = len(rng);
        WeightVector w, neg;
        for (int i = 0; i < n; i++) {
            w.beta.push_back(unif(rng));
            neg.beta.push_back(-w.beta.back());
        }
        double total = 0;
        for (double b : w.beta) total += b;
        for (int ell = 0; ell <= n; ell++) {
            const double lhs = to_double(u_exact_log(w, ell));
            const double rhs = total + to_double(u_exact_log(neg, n - ell));
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
        }
    }
}

TEST_CASE("generating identity: sum of U_ell equals the full product") {
    std::mt19937 rng(19);
    std::uniform_real_distribution<double> unif(-0.8, 0.8);
    for (int trial = 0; trial < 10; trial++) {
        std::uniform_int_distribution<int> len(1, 30);
        const int n = len(rng);
        WeightVector w;
        for (int i = 0; i < n; i++) w.beta.push_back(unif(rng));
        qreal sum = 0, prod = 1;
        for (int ell = 0; ell <= n; ell++) sum += u_exact(w, ell);
        for (double b : w.beta) prod *= 1 + qexp(static_cast<qreal>(b));
        CHECK(to_double(sum) == doctest::Approx(to_double(prod)).epsilon(1e-10));
    }
}

TEST_CASE("log-space fold agrees with the value fold across the switchover") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> unif(-0.5, 0.5);
    WeightVector small, large;
    for (int i = 0; i < 40; i++) small.beta.push_back(unif(rng));
    // same weights replicated past the log-space threshold
    for (int rep = 0; rep < 9; rep++)
        for (double b : small.beta) large.beta.push_back(b);
    REQUIRE(large.n() == 360);
    // spot-check a few ells against a direct qreal recomputation path:
    // U_ell of the replicated vector equals the coefficient of the product,
    // evaluated by the small value fold convolved 9 times is impractical, so
    // instead verify the generating identity in log space
    qreal log_prod = 0;
    for (double b : large.beta) log_prod += qlog(1 + qexp(static_cast<qreal>(b)));
    qreal log_sum = u_exact_log(large, 0);
    for (int ell = 1; ell <= large.n(); ell++)
        log_sum = qlogaddexp(log_sum, u_exact_log(large, ell));
    CHECK(to_double(log_sum) == doctest::Approx(to_double(log_prod)).epsilon(1e-10));
}

TEST_CASE("asymptotic error shrinks with n for scaled weights") {
    // beta_j = +/- 1/sqrt(n), mean zero; the mid-range log-ratio must shrink
    double prev = 1e9;
    for (int n : {50, 100, 200, 400}) {
        WeightVector w;
        for (int j = 0; j < n; j++)
            w.beta.push_back((j % 2 ? -1.0 : 1.0) / std::sqrt(static_cast<double>(n)));
        const int lo = static_cast<int>(std::pow(n, 0.45));
        double worst = 0;
        for (int ell = lo; ell <= n - lo; ell++) {
            const double gap =
                std::fabs(to_double(u_exact_log(w, ell) - u_asymptotic_log(w, ell)));
            worst = std::max(worst, gap);
        }
        CHECK(worst < prev);
        prev = worst;
    }
}

TEST_CASE("out-of-range ell is rejected") {
    WeightVector w{{0.1, 0.2}};
    CHECK_THROWS_AS(u_exact(w, 3), Error);
    CHECK_THROWS_AS(u_exact(w, -1), Error);
}
