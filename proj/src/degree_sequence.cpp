#include "loopcount/degree_sequence.hpp"

#include <algorithm>

namespace loopcount {

DegreeSequence::DegreeSequence(std::vector<int> degrees) : degrees_(std::move(degrees)) {
    for (int d : degrees_)
        if (d < 0) throw Error("degree sequence entries must be nonnegative");
    if (!degrees_.empty()) {
        stats_ = compute_stats(degrees_);
        has_stats_ = true;
    }
}

DegreeSequence DegreeSequence::regular(int n, int degree) {
    if (n < 0) throw Error("regular sequence needs n >= 0");
    return DegreeSequence(std::vector<int>(static_cast<size_t>(n), degree));
}

const SequenceStats& DegreeSequence::stats() const {
    if (!has_stats_) throw Error("statistics undefined for the empty sequence");
    return stats_;
}

bool DegreeSequence::admissible(LoopModel model) const {
    const int cap = n() + loop_weight(model) - 1;
    return std::all_of(degrees_.begin(), degrees_.end(), [cap](int d) { return d <= cap; });
}

DegreeSequence DegreeSequence::with_appended(int degree) const {
    std::vector<int> ds = degrees_;
    ds.push_back(degree);
    return DegreeSequence(std::move(ds));
}

SequenceStats compute_stats(const std::vector<int>& degrees) {
    if (degrees.empty()) throw Error("compute_stats needs n >= 1");
    const long long n = static_cast<long long>(degrees.size());
    SequenceStats st;
    long long sumsq = 0;
    for (int d : degrees) {
        const long long dj = d;
        st.S += dj;
        st.S2 += dj * (dj - 1);
        st.S3 += dj * (dj - 1) * (dj - 2);
        sumsq += dj * dj;
        st.dmax = std::max(st.dmax, d);
    }
    st.d = Rational(st.S, n);
    st.lambda = n > 1 ? st.d / Rational(n - 1) : Rational(0);
    // R = sum (d_j - d)^2 = sum d_j^2 - S^2/n, exactly
    st.R = Rational(sumsq) - Rational(st.S) * Rational(st.S, n);
    return st;
}

LoopModelParams loop_params(const DegreeSequence& seq, LoopModel model) {
    LoopModelParams p;
    p.model = model;
    const long long n = seq.n();
    p.mu = seq.stats().d / Rational(n + loop_weight(model) - 1);
    p.lbar = lbar(seq, model);
    return p;
}

qreal lbar(const DegreeSequence& seq, LoopModel model) {
    const long long n = seq.n();
    const Rational& d = seq.stats().d;
    if (d.sign() < 0 || d > Rational(n)) throw Error("lbar needs 0 <= d <= n");
    if (model == LoopModel::twice) return (d * Rational(n, n + 1)).to_qreal();
    // D = 1: sqrt(d) n / (sqrt(d) + sqrt(n - d)), limits 0 at d=0, n at d=n
    const qreal dq = d.to_qreal();
    const qreal nq = static_cast<qreal>(n);
    if (dq == 0) return 0;
    if (dq == nq) return nq;
    const qreal sd = qsqrt(dq);
    return sd * nq / (sd + qsqrt(nq - dq));
}

qreal q_dense(const DegreeSequence& seq, LoopModel model, qreal ell) {
    const SequenceStats& st = seq.stats();
    const long long n = seq.n();
    const Rational nr(n);
    if (st.d.sign() <= 0 || !(st.d < nr))
        throw DensityError("Q_D undefined at d = 0 or d = n");
    const Rational& R = st.R;

    if (model == LoopModel::once) {
        // Q_1 = 1/4 + (ell-d)^2 / (4 d (n-d))
        //           - (ell-d)^2 R / (2 d^2 (n-d)^2) - R^2 / (4 d^2 (n-d)^2)
        const Rational dnd = st.d * (nr - st.d);
        const Rational a = Rational(1) / (Rational(4) * dnd) - R / (Rational(2) * dnd * dnd);
        const Rational c = Rational(1, 4) - R * R / (Rational(4) * dnd * dnd);
        const qreal x = ell - st.d.to_qreal();
        return c.to_qreal() + x * x * a.to_qreal();
    }

    // Q_2 with mu = d / (n+1); grouped as
    //   c0 - ell (n-ell) k1 + (ell - mu n) k2 - (ell - mu n)^2 k3
    const Rational mu = st.d / Rational(n + 1);
    const Rational mu1 = Rational(1) - mu;
    const Rational m2n2 = mu * mu1 * nr * nr;            // mu (1-mu) n^2
    const Rational m2n2sq = m2n2 * m2n2;                  // mu^2 (1-mu)^2 n^4
    const Rational c0 = Rational(1, 4) - R * R / (Rational(4) * m2n2sq) + R / m2n2;
    const Rational k1 = Rational(1) / m2n2;
    const Rational k2 = (Rational(1) - Rational(2) * mu) * R * nr / m2n2sq;  // (1-2mu) R / (mu^2 (1-mu)^2 n^3)
    const Rational k3 = Rational(2) * R / m2n2sq;
    const qreal nq = static_cast<qreal>(n);
    const qreal y = ell - (mu * nr).to_qreal();
    return c0.to_qreal() - ell * (nq - ell) * k1.to_qreal() + y * k2.to_qreal() -
           y * y * k3.to_qreal();
}

}  // namespace loopcount
