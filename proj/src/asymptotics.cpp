#include "loopcount/asymptotics.hpp"

#include <vector>

namespace loopcount {

namespace {

qreal log_factorial(long long k) { return qlgamma(static_cast<qreal>(k) + 1); }

// mu ln mu + (1-mu) ln(1-mu) for an exact rational mu in (0,1)
qreal entropy_term(const Rational& mu) {
    const qreal m = mu.to_qreal();
    return m * qlog(m) + (1 - m) * qlog(1 - m);
}

// Sum of ln d_j! over the sequence, compensated.
qreal sum_log_degree_factorials(const DegreeSequence& seq) {
    KahanSum s;
    for (int d : seq.degrees()) s.add(log_factorial(d));
    return s.value();
}

qreal sum_log_binomials(const DegreeSequence& seq, long long top) {
    KahanSum s;
    for (int d : seq.degrees()) s.add(log_binomial(top, d));
    return s.value();
}

// The five-term correction shared by the sparse loopless formula and the
// D = 2 sparse loopy formula's tail:
//   -S2^2/(4S^2) - S2^2 S3/(2S^4) + S2^4/(4S^5) + S3^2/(6S^3)
Rational sparse_tail_correction(const SequenceStats& st) {
    const Rational S(st.S), S2(st.S2), S3(st.S3);
    const Rational S_2 = S * S;
    const Rational S_3 = S_2 * S;
    const Rational S_4 = S_3 * S;
    const Rational S_5 = S_4 * S;
    return Rational(0) - S2 * S2 / (Rational(4) * S_2) - S2 * S2 * S3 / (Rational(2) * S_4) +
           S2 * S2 * S2 * S2 / (Rational(4) * S_5) + S3 * S3 / (Rational(6) * S_3);
}

DegreeSequence strip_zeros(const DegreeSequence& seq) {
    std::vector<int> ds;
    ds.reserve(static_cast<size_t>(seq.n()));
    for (int d : seq.degrees())
        if (d > 0) ds.push_back(d);
    return DegreeSequence(std::move(ds));
}

// ln of S!/((S/2)! 2^{S/2}); S even.
qreal log_half_factorial_form(long long S) {
    return log_factorial(S) - log_factorial(S / 2) - static_cast<qreal>(S) / 2 * qln2();
}

}  // namespace

const char* to_string(ErrorOrder order) {
    switch (order) {
        case ErrorOrder::sparse_dmax_cubed_over_s: return "O(dmax^3/S)";
        case ErrorOrder::dense_n_power: return "O(n^-b)";
        case ErrorOrder::regular_d_squared_over_n: return "O(d^2/n)";
        case ErrorOrder::conjectured_n_squared: return "O(n^-2), conjectured";
        case ErrorOrder::heuristic: return "heuristic";
    }
    return "?";
}

const char* to_string(FormulaId id) {
    switch (id) {
        case FormulaId::sparse_simple: return "sparse-simple";
        case FormulaId::dense_simple: return "dense-simple";
        case FormulaId::dense_loopy_by_trace: return "dense-loopy-by-trace";
        case FormulaId::dense_loopy_total: return "dense-loopy-total";
        case FormulaId::sparse_loopy: return "sparse-loopy";
        case FormulaId::sparse_regular_loopy: return "sparse-regular-loopy";
        case FormulaId::conjecture_regular_loopy: return "conjecture-regular-loopy";
        case FormulaId::naive_regular_loopy: return "naive-regular-loopy";
    }
    return "?";
}

qreal log_binomial(long long n, long long k) {
    if (k < 0 || k > n) throw Error("log_binomial out of range");
    if (n <= 64)
        return log_big(BigCount::binomial(static_cast<unsigned long>(n),
                                          static_cast<unsigned long>(k)) );
    return qlog_binom(static_cast<qreal>(n), static_cast<qreal>(k));
}

LogEstimate sparse_G(const DegreeSequence& seq_in) {
    const DegreeSequence seq = strip_zeros(seq_in);
    if (seq.empty() || seq.stats().S < 2) throw Error("sparse formula needs S >= 2");
    const SequenceStats& st = seq.stats();
    if (st.S & 1) throw ParityError("sparse formula needs S even");

    const Rational S(st.S), S2(st.S2);
    Rational corr = Rational(0) - S2 / (Rational(2) * S) + sparse_tail_correction(st);

    KahanSum log;
    log.add(log_half_factorial_form(st.S));
    log.add(-sum_log_degree_factorials(seq));
    log.add(corr.to_qreal());
    return {log.value(), ErrorOrder::sparse_dmax_cubed_over_s, FormulaId::sparse_simple};
}

LogEstimate dense_G(const DegreeSequence& seq) {
    const SequenceStats& st = seq.stats();
    const long long n = seq.n();
    if (st.lambda.sign() <= 0 || !(st.lambda < Rational(1)))
        throw DensityError("dense formula needs 0 < lambda < 1");
    if (st.S & 1) throw ParityError("dense formula needs S even");

    const Rational lam2 = st.lambda * st.lambda;
    const Rational om = Rational(1) - st.lambda;
    const Rational n4 = Rational(n) * Rational(n) * Rational(n) * Rational(n);
    const Rational corr =
        Rational(1, 4) - st.R * st.R / (Rational(4) * lam2 * om * om * n4);

    KahanSum log;
    log.add(qln2() / 2);
    log.add(static_cast<qreal>(n) * (n - 1) / 2 * entropy_term(st.lambda));
    log.add(corr.to_qreal());
    log.add(sum_log_binomials(seq, n - 1));
    return {log.value(), ErrorOrder::dense_n_power, FormulaId::dense_simple};
}

LogEstimate dense_GD_by_trace(const DegreeSequence& seq, LoopModel model, int ell) {
    const SequenceStats& st = seq.stats();
    const long long n = seq.n();
    const int D = loop_weight(model);
    if (ell < 0 || ell > n) throw Error("trace out of range");
    if (D == 1 && ((st.S - ell) & 1))
        throw ParityError("trace must match the degree-sum parity");
    if (D == 2 && (st.S & 1)) throw ParityError("degree sum must be even");
    const Rational mu = st.d / Rational(n + D - 1);
    if (mu.sign() <= 0 || !(mu < Rational(1)))
        throw DensityError("loopy dense formula needs 0 < mu < 1");

    const qreal log_mu = qlog(mu.to_qreal());
    const qreal log_om = qlog(1 - mu.to_qreal());
    const qreal exponent = D == 1 ? static_cast<qreal>(n) * n / 2
                                  : static_cast<qreal>(n + 1) * n / 2;

    KahanSum log;
    log.add(qln2() / 2);
    log.add(exponent * entropy_term(mu));
    log.add(log_binomial(n, ell));
    log.add(static_cast<qreal>(ell) * D / 2 * log_mu);
    log.add(static_cast<qreal>(n - ell) * D / 2 * log_om);
    log.add(q_dense(seq, model, static_cast<qreal>(ell)));
    log.add(sum_log_binomials(seq, n + D - 1));
    return {log.value(), ErrorOrder::dense_n_power, FormulaId::dense_loopy_by_trace};
}

LogEstimate dense_GD_total(const DegreeSequence& seq, LoopModel model) {
    const SequenceStats& st = seq.stats();
    const long long n = seq.n();
    const int D = loop_weight(model);
    if (D == 2 && (st.S & 1)) throw ParityError("degree sum must be even");
    const Rational mu = st.d / Rational(n + D - 1);
    if (mu.sign() <= 0 || !(mu < Rational(1)))
        throw DensityError("loopy dense formula needs 0 < mu < 1");

    KahanSum log;
    if (D == 1) {
        const qreal muq = mu.to_qreal();
        log.add(-qln2() / 2);
        log.add(static_cast<qreal>(n) * n / 2 * entropy_term(mu));
        log.add(static_cast<qreal>(n) * qlog(qsqrt(muq) + qsqrt(1 - muq)));
    } else {
        log.add(qln2() / 2);
        log.add(static_cast<qreal>(n + 1) * n / 2 * entropy_term(mu));
    }
    log.add(q_dense(seq, model, lbar(seq, model)));
    log.add(sum_log_binomials(seq, n + D - 1));
    return {log.value(), ErrorOrder::dense_n_power, FormulaId::dense_loopy_total};
}

LogEstimate sparse_GD(const DegreeSequence& seq_in, LoopModel model,
                      SparsePrefactor prefactor) {
    const DegreeSequence seq = strip_zeros(seq_in);
    if (seq.empty()) throw Error("sparse loopy formula needs a nonempty sequence");
    const SequenceStats& st = seq.stats();
    const int D = loop_weight(model);
    if (D == 2 && (st.S & 1)) throw ParityError("degree sum must be even");
    if (prefactor == SparsePrefactor::factorial && (st.S & 1))
        throw ParityError("factorial prefactor needs S even");

    const Rational S(st.S), S2(st.S2), S3(st.S3);
    const qreal Sq = static_cast<qreal>(st.S);

    KahanSum log;
    // sqrt(2) (S/e)^{S/2}, or its exact replacement S!/((S/2)! 2^{S/2});
    // D = 1 carries half of either form.
    if (prefactor == SparsePrefactor::stirling)
        log.add(qln2() / 2 + Sq / 2 * (qlog(Sq) - 1));
    else
        log.add(log_half_factorial_form(st.S));
    if (D == 1) log.add(-qln2());
    log.add(-sum_log_degree_factorials(seq));

    if (D == 1) {
        // rational part: -1/4 - S2/S - S2^2/(4S^2) - S2^2 S3/(2S^4)
        //                + S2^4/(4S^5) + S3^2/(6S^3)
        Rational rat = Rational(-1, 4) - S2 / S + sparse_tail_correction(st);
        // sqrt part: sqrt(S) + [7/24 + S2/S + S3/(3S) + S2^2/(2S^2)] / sqrt(S)
        Rational root_coeff = Rational(7, 24) + S2 / S + S3 / (Rational(3) * S) +
                              S2 * S2 / (Rational(2) * S * S);
        log.add(rat.to_qreal());
        log.add(qsqrt(Sq));
        log.add(root_coeff.to_qreal() / qsqrt(Sq));
    } else {
        Rational rat = S2 / (Rational(2) * S) + sparse_tail_correction(st);
        log.add(rat.to_qreal());
    }
    return {log.value(), ErrorOrder::sparse_dmax_cubed_over_s, FormulaId::sparse_loopy};
}

LogEstimate sparse_regular(long long n, long long d, LoopModel model,
                           SparsePrefactor prefactor) {
    if (d < 1 || n < 1) throw Error("regular sparse formula needs n, d >= 1");
    const int D = loop_weight(model);
    const long long nd = n * d;
    if (D == 2 && (nd & 1)) throw ParityError("regular sparse formula needs nd even");
    if (prefactor == SparsePrefactor::factorial && (nd & 1))
        throw ParityError("factorial prefactor needs nd even");

    const qreal ndq = static_cast<qreal>(nd);
    KahanSum log;
    if (prefactor == SparsePrefactor::stirling)
        log.add(qln2() / 2 + ndq / 2 * (qlog(ndq) - 1));
    else
        log.add(log_half_factorial_form(nd));
    if (D == 1) log.add(-qln2());
    log.add(-static_cast<qreal>(n) * log_factorial(d));

    if (D == 1) {
        log.add(Rational(2 - 2 * d - d * d, 4).to_qreal());
        log.add(Rational(24 * (n - 1) * d + 20 * d * d + 11, 24).to_qreal() / qsqrt(ndq));
        log.add(-Rational(d * d * d, 12 * n).to_qreal());
    } else {
        log.add(-Rational((d - 1) * (d - 3), 4).to_qreal());
        log.add(-Rational(d * d * d, 12 * n).to_qreal());
    }
    return {log.value(), ErrorOrder::regular_d_squared_over_n, FormulaId::sparse_regular_loopy};
}

BigCount loop_count_A(long long n, long long S, long long ell) {
    if (ell < 0 || ell > n || S < 0) return BigCount(0);
    if ((S - ell) & 1) return BigCount(0);
    const long long pairs = n * (n - 1) / 2;
    const long long half = (S - ell) / 2;
    if (half < 0 || half > pairs) return BigCount(0);
    return BigCount::binomial(static_cast<unsigned long>(n), static_cast<unsigned long>(ell)) *
           BigCount::binomial(static_cast<unsigned long>(pairs), static_cast<unsigned long>(half));
}

BigCount loop_count_B(long long n, long long S, long long ell) {
    if (S & 1) throw ParityError("the loopy edge ensemble needs S even");
    if (ell < 0 || ell > n || S < 0) return BigCount(0);
    const long long pairs = n * (n - 1) / 2;
    const long long rest = S / 2 - ell;
    if (rest < 0 || rest > pairs) return BigCount(0);
    return BigCount::binomial(static_cast<unsigned long>(n), static_cast<unsigned long>(ell)) *
           BigCount::binomial(static_cast<unsigned long>(pairs), static_cast<unsigned long>(rest));
}

qreal mean_loops_A(long long n, long long S) {
    BigCount total, weighted;
    for (long long ell = S & 1; ell <= n; ell += 2) {
        const BigCount c = loop_count_A(n, S, ell);
        total += c;
        weighted.add_mul(c, static_cast<unsigned long>(ell));
    }
    if (total.is_zero()) throw EmptyClassError("no matrices with that many ones");
    return ratio_q(weighted, total);
}

LogEstimate conjecture_G2(long long n, long long d) {
    if (d < 1 || d > n) throw Error("conjecture needs 1 <= d <= n");
    if ((n * d) & 1) throw ParityError("conjecture needs nd even");
    const Rational mu(d, n + 1);
    if (mu.sign() <= 0 || !(mu < Rational(1)))
        throw DensityError("conjecture needs 0 < mu < 1");
    const Rational c = mu * (Rational(1) - mu) * Rational(n + 1);

    KahanSum log;
    log.add(qln2() / 2);
    log.add(static_cast<qreal>(n) * log_binomial(n + 1, d));
    log.add(static_cast<qreal>(n + 1) * n / 2 * entropy_term(mu));
    const Rational tail = (Rational(3) * c + Rational(1)) / (Rational(12) * c * Rational(n));
    log.add(Rational(-3, 4).to_qreal() + tail.to_qreal());
    return {log.value(), ErrorOrder::conjectured_n_squared, FormulaId::conjecture_regular_loopy};
}

LogEstimate naive_G2(long long n, long long d) {
    if (d < 1 || d > n) throw Error("naive estimate needs 1 <= d <= n");
    if ((n * d) & 1) throw ParityError("naive estimate needs nd even");
    const Rational mu(d, n + 1);
    if (mu.sign() <= 0 || !(mu < Rational(1)))
        throw DensityError("naive estimate needs 0 < mu < 1");

    KahanSum log;
    log.add(-1);
    log.add(static_cast<qreal>(n) * log_binomial(n + 1, d));
    log.add(static_cast<qreal>(n + 1) * n / 2 * entropy_term(mu));
    return {log.value(), ErrorOrder::heuristic, FormulaId::naive_regular_loopy};
}

}  // namespace loopcount
