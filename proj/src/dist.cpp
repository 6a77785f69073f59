#include "loopcount/dist.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "loopcount/asymptotics.hpp"

namespace loopcount {

namespace {

constexpr int kMaxPolyDegree = 8;

// Stirling numbers of the second kind up to kMaxPolyDegree.
const std::array<std::array<long long, kMaxPolyDegree + 1>, kMaxPolyDegree + 1>& stirling2() {
    static const auto table = [] {
        std::array<std::array<long long, kMaxPolyDegree + 1>, kMaxPolyDegree + 1> t{};
        t[0][0] = 1;
        for (int k = 1; k <= kMaxPolyDegree; k++)
            for (int m = 1; m <= k; m++)
                t[k][m] = t[k - 1][m - 1] + m * t[k - 1][m];
        return t;
    }();
    return table;
}

// Elementary symmetric polynomials e_0..e_max of an arbitrary real vector.
std::vector<qreal> elementary_symmetric(const std::vector<qreal>& y, int max_order) {
    std::vector<qreal> e(static_cast<size_t>(max_order) + 1, 0);
    e[0] = 1;
    int folded = 0;
    for (qreal x : y) {
        folded++;
        for (int m = std::min(folded, max_order); m >= 1; m--) e[m] += x * e[m - 1];
    }
    return e;
}

// fhat(y) = sum_k c_k E(X^k) with the moments expanded through factorial
// moments E([X]_m) = m! e_m(y): a polynomial identity in y, usable for the
// sign-flipped parameter vector as well.
qreal fhat_formal(const std::vector<qreal>& y, const std::vector<double>& poly) {
    const int degree = static_cast<int>(poly.size()) - 1;
    const auto e = elementary_symmetric(y, degree);
    qreal mfact = 1;
    std::vector<qreal> factorial_moment(static_cast<size_t>(degree) + 1);
    for (int m = 0; m <= degree; m++) {
        if (m > 0) mfact *= m;
        factorial_moment[static_cast<size_t>(m)] = mfact * e[static_cast<size_t>(m)];
    }
    const auto& s2 = stirling2();
    qreal total = 0;
    for (int k = 0; k <= degree; k++) {
        qreal moment_k = 0;
        for (int m = 0; m <= k; m++)
            moment_k += static_cast<qreal>(s2[k][m]) * factorial_moment[static_cast<size_t>(m)];
        total += static_cast<qreal>(poly[static_cast<size_t>(k)]) * moment_k;
    }
    return total;
}

void check_probability_vector(const PoissonBinomialParams& p) {
    for (double pj : p)
        if (!(pj >= 0.0 && pj <= 1.0))
            throw RangeError("Bernoulli parameter outside [0,1]");
}

double clamp_probability(qreal value, const char* what) {
    const qreal slack = 1e-9;
    if (value < 0) {
        if (value < -slack)
            throw RangeError(std::string(what) + " outside [0,1]: sequence is not in the sparse regime");
        return 0.0;
    }
    if (value > 1) {
        if (value > 1 + slack)
            throw RangeError(std::string(what) + " outside [0,1]: sequence is not in the sparse regime");
        return 1.0;
    }
    return to_double(value);
}

// Restrict a PMF to a parity class and renormalize by the retained mass.
TraceLaw restrict_parity(std::vector<double> pmf, int parity) {
    double mass = 0;
    for (size_t i = 0; i < pmf.size(); i++) {
        if (static_cast<int>(i & 1) != parity) pmf[i] = 0.0;
        mass += pmf[i];
    }
    if (mass <= 0) throw EmptyClassError("parity class carries no mass");
    for (double& x : pmf) x /= mass;
    return {std::move(pmf), parity};
}

std::vector<double> binomial_pmf(int n, double prob) {
    std::vector<double> pmf(static_cast<size_t>(n) + 1, 0.0);
    if (prob <= 0) { pmf[0] = 1; return pmf; }
    if (prob >= 1) { pmf[static_cast<size_t>(n)] = 1; return pmf; }
    const qreal p = prob, q = 1 - p;
    for (int k = 0; k <= n; k++)
        pmf[static_cast<size_t>(k)] =
            to_double(qexp(log_binomial(n, k) + k * qlog(p) + (n - k) * qlog(q)));
    return pmf;
}

}  // namespace

TraceLaw pb_pmf(const PoissonBinomialParams& p) {
    check_probability_vector(p);
    std::vector<double> pmf(p.size() + 1, 0.0);
    pmf[0] = 1.0;
    size_t len = 0;
    for (double pj : p) {
        len++;
        pmf[len] = pmf[len - 1] * pj;
        for (size_t k = len - 1; k >= 1; k--) pmf[k] = pmf[k] * (1 - pj) + pmf[k - 1] * pj;
        pmf[0] *= 1 - pj;
    }
    return {std::move(pmf), std::nullopt};
}

double pb_parity_split(const PoissonBinomialParams& p, const std::vector<double>& poly,
                       int rho) {
    if (rho != 0 && rho != 1) throw Error("parity must be 0 or 1");
    if (poly.empty() || poly.size() > kMaxPolyDegree + 1)
        throw Error("polynomial degree must be at most 8");
    std::vector<qreal> pv, rv;
    pv.reserve(p.size());
    rv.reserve(p.size());
    qreal z = 1;
    for (double pj : p) {
        if (pj == 0.5) throw HypothesisError("parity split needs every p_j != 1/2");
        const qreal pq = pj;
        pv.push_back(pq);
        rv.push_back(-pq / (1 - 2 * pq));
        z *= 1 - 2 * pq;
    }
    const qreal even_part = fhat_formal(pv, poly);
    const qreal signed_part = z * fhat_formal(rv, poly);
    const qreal half = static_cast<qreal>(0.5);
    return to_double(half * even_part + (rho ? -half : half) * signed_part);
}

std::pair<double, double> chernoff_tails(const PoissonBinomialParams& p, double s) {
    check_probability_vector(p);
    if (s < 0) throw Error("chernoff_tails needs s >= 0");
    double mean = 0;
    for (double pj : p) mean += pj;
    if (s == 0) return {1.0, 1.0};
    if (mean == 0) return {0.0, 0.0};
    const double lower = std::exp(-s * s / (2 * mean));
    const double x = s / mean;
    const double phi = (1 + x) * std::log1p(x) - x;
    const double upper = std::exp(-mean * phi);
    return {lower, upper};
}

double pb_moment(const PoissonBinomialParams& p, int k) {
    if (k < 1 || k > 4) throw Error("pb_moment supports k = 1..4");
    check_probability_vector(p);
    double p1 = 0, p2 = 0, p3 = 0, p4 = 0;
    for (double pj : p) {
        p1 += pj;
        p2 += pj * pj;
        p3 += pj * pj * pj;
        p4 += pj * pj * pj * pj;
    }
    switch (k) {
        case 1: return p1;
        case 2: return p1 * p1 + p1 - p2;
        case 3: return p1 + 3 * p1 * p1 + p1 * p1 * p1 - 3 * p2 - 3 * p1 * p2 + 2 * p3;
        default:
            return p1 + 7 * p1 * p1 + 6 * p1 * p1 * p1 + p1 * p1 * p1 * p1 -
                   (6 * p1 * p1 + 18 * p1 + 7) * p2 + 3 * p2 * p2 + (8 * p1 + 12) * p3 -
                   6 * p4;
    }
}

double pb_central_moment(const PoissonBinomialParams& p, int k) {
    if (k != 2 && k != 4) throw Error("pb_central_moment supports k in {2,4}");
    check_probability_vector(p);
    double var = 0, quart = 0;
    for (double pj : p) {
        const double w = pj * (1 - pj);
        var += w;
        quart += w * (1 - 6 * pj + 6 * pj * pj);
    }
    return k == 2 ? var : 3 * var * var + quart;
}

TraceLaw trace_law_exact(const DegreeSequence& seq, LoopModel model, CountCache& cache) {
    const int n = seq.n();
    std::vector<BigCount> counts(static_cast<size_t>(n) + 1);
    BigCount total;
    for (int ell = 0; ell <= n; ell++) {
        counts[static_cast<size_t>(ell)] = count_loopy_by_trace(seq, model, ell, cache);
        total += counts[static_cast<size_t>(ell)];
    }
    if (total.is_zero()) throw EmptyClassError("G_D(d) is empty");
    std::vector<double> pmf(static_cast<size_t>(n) + 1, 0.0);
    for (int ell = 0; ell <= n; ell++)
        pmf[static_cast<size_t>(ell)] =
            to_double(ratio_q(counts[static_cast<size_t>(ell)], total));
    std::optional<int> parity;
    if (model == LoopModel::once) parity = static_cast<int>(seq.stats().S & 1);
    return {std::move(pmf), parity};
}

TraceLaw trace_law_dense(const DegreeSequence& seq, LoopModel model) {
    const SequenceStats& st = seq.stats();
    const int n = seq.n();
    if (st.d.sign() <= 0 || !(st.d < Rational(n)))
        throw DensityError("dense trace law needs 0 < d < n");
    const double prob = to_double(lbar(seq, model)) / n;
    std::vector<double> pmf = binomial_pmf(n, prob);
    if (model == LoopModel::twice) return {std::move(pmf), std::nullopt};
    return restrict_parity(std::move(pmf), static_cast<int>(st.S & 1));
}

namespace {

PoissonBinomialParams sparse_p_prime(const DegreeSequence& seq) {
    const SequenceStats& st = seq.stats();
    if (st.S <= 0) throw Error("sparse trace parameters need S >= 1");
    const qreal S = static_cast<qreal>(st.S);
    const qreal rootS = qsqrt(S);
    const qreal S2 = static_cast<qreal>(st.S2);
    PoissonBinomialParams p;
    p.reserve(static_cast<size_t>(seq.n()));
    for (int d : seq.degrees()) {
        const qreal dj = static_cast<qreal>(d);
        const qreal value = dj / rootS - dj * (2 * dj - 1) / (2 * S) +
                            dj * dj * dj / (S * rootS) + dj * (dj - 2) * S2 / (S * S * rootS) -
                            dj * S2 * S2 / (2 * S * S * S * rootS);
        p.push_back(clamp_probability(value, "p'"));
    }
    return p;
}

PoissonBinomialParams sparse_p_dprime(const DegreeSequence& seq) {
    const SequenceStats& st = seq.stats();
    if (st.S <= 0) throw Error("sparse trace parameters need S >= 1");
    PoissonBinomialParams p;
    p.reserve(static_cast<size_t>(seq.n()));
    for (int d : seq.degrees())
        p.push_back(clamp_probability(
            Rational(static_cast<long long>(d) * (d - 1), st.S).to_qreal(), "p''"));
    return p;
}

}  // namespace

SparseTraceParams sparse_trace_params(const DegreeSequence& seq) {
    return {sparse_p_prime(seq), sparse_p_dprime(seq)};
}

TraceLaw trace_law_sparse(const DegreeSequence& seq, LoopModel model) {
    // only the model's own parameter vector is built, so a sequence outside
    // the D = 1 sparse window can still use the D = 2 law
    if (model == LoopModel::twice) return pb_pmf(sparse_p_dprime(seq));
    TraceLaw law = pb_pmf(sparse_p_prime(seq));
    return restrict_parity(std::move(law.pmf), static_cast<int>(seq.stats().S & 1));
}

TraceMoments dense_trace_moments(const DegreeSequence& seq, LoopModel model) {
    const double lb = to_double(lbar(seq, model));
    return {lb, lb * (1 - lb / seq.n())};
}

TraceMoments sparse_trace_moments(const DegreeSequence& seq, LoopModel model) {
    const SequenceStats& st = seq.stats();
    if (st.S <= 0) throw Error("sparse trace moments need S >= 1");
    const double S = static_cast<double>(st.S);
    const double s2_over_s = to_double(Rational(st.S2, st.S).to_qreal());
    if (model == LoopModel::once)
        return {std::sqrt(S) - s2_over_s - 0.5, std::sqrt(S) - 2 * s2_over_s - 1};
    return {s2_over_s, s2_over_s};
}

double law_mean(const TraceLaw& law) {
    double m = 0;
    for (size_t i = 0; i < law.pmf.size(); i++) m += static_cast<double>(i) * law.pmf[i];
    return m;
}

double law_variance(const TraceLaw& law) {
    double m = law_mean(law), m2 = 0;
    for (size_t i = 0; i < law.pmf.size(); i++)
        m2 += static_cast<double>(i) * static_cast<double>(i) * law.pmf[i];
    return m2 - m * m;
}

double law_variance_pairwise(const TraceLaw& law) {
    // Var(Z) = sum_{k<l} P(k) P(l) (k-l)^2, free of cancellation
    double v = 0;
    const size_t n = law.pmf.size();
    for (size_t k = 0; k + 1 < n; k++) {
        if (law.pmf[k] == 0) continue;
        for (size_t l = k + 1; l < n; l++) {
            const double diff = static_cast<double>(l) - static_cast<double>(k);
            v += law.pmf[k] * law.pmf[l] * diff * diff;
        }
    }
    return v;
}

double total_variation(const TraceLaw& a, const TraceLaw& b) {
    const size_t n = std::max(a.pmf.size(), b.pmf.size());
    double tv = 0;
    for (size_t i = 0; i < n; i++) {
        const double pa = i < a.pmf.size() ? a.pmf[i] : 0.0;
        const double pb = i < b.pmf.size() ? b.pmf[i] : 0.0;
        tv += std::fabs(pa - pb);
    }
    return tv / 2;
}

}  // namespace loopcount
