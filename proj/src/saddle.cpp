#include "loopcount/saddle.hpp"

#include <algorithm>

#include "loopcount/asymptotics.hpp"
#include "loopcount/errors.hpp"

namespace loopcount {

namespace {

constexpr int kLogSpaceThreshold = 300;

// numeric_limits<__float128> may be unspecialized; use the quadmath macro
qreal neg_inf() { return -HUGE_VALQ; }

// Coefficient row of prod (1 + x_j y) up to y^ell, folded term by term.
qreal u_value_fold(const WeightVector& w, int ell) {
    std::vector<qreal> row(static_cast<size_t>(ell) + 1, 0);
    row[0] = 1;
    int folded = 0;
    for (double b : w.beta) {
        const qreal x = qexp(static_cast<qreal>(b));
        folded++;
        for (int m = std::min(folded, ell); m >= 1; m--)
            row[static_cast<size_t>(m)] += x * row[static_cast<size_t>(m) - 1];
    }
    return row[static_cast<size_t>(ell)];
}

// Same fold on logarithms, entries ln e_m.
qreal u_log_fold(const WeightVector& w, int ell) {
    std::vector<qreal> row(static_cast<size_t>(ell) + 1, neg_inf());
    row[0] = 0;
    int folded = 0;
    for (double b : w.beta) {
        const qreal lb = static_cast<qreal>(b);
        folded++;
        for (int m = std::min(folded, ell); m >= 1; m--)
            row[static_cast<size_t>(m)] =
                qlogaddexp(row[static_cast<size_t>(m)], lb + row[static_cast<size_t>(m) - 1]);
    }
    return row[static_cast<size_t>(ell)];
}

void check_range(const WeightVector& w, int ell) {
    if (ell < 0 || ell > w.n()) throw Error("U_ell needs 0 <= ell <= n");
}

}  // namespace

double WeightVector::bar() const {
    if (beta.empty()) return 0;
    double s = 0;
    for (double b : beta) s += b;
    return s / static_cast<double>(beta.size());
}

qreal u_exact(const WeightVector& w, int ell) {
    check_range(w, ell);
    if (ell == 0) return 1;
    if (w.n() <= kLogSpaceThreshold) return u_value_fold(w, ell);
    return qexp(u_log_fold(w, ell));
}

qreal u_exact_log(const WeightVector& w, int ell) {
    check_range(w, ell);
    if (ell == 0) return 0;
    if (w.n() <= kLogSpaceThreshold) return qlog(u_value_fold(w, ell));
    return u_log_fold(w, ell);
}

qreal u_asymptotic_log(const WeightVector& w, int ell) {
    check_range(w, ell);
    const int n = w.n();
    if (n == 0) return 0;
    const double bar = w.bar();
    qreal spread = 0;
    for (double b : w.beta) {
        const qreal dev = static_cast<qreal>(b) - static_cast<qreal>(bar);
        spread += dev * dev;
    }
    const qreal nq = static_cast<qreal>(n);
    const qreal lq = static_cast<qreal>(ell);
    return log_binomial(n, ell) + lq * static_cast<qreal>(bar) +
           lq * (nq - lq) / (2 * nq * nq) * spread;
}

qreal u_asymptotic(const WeightVector& w, int ell) { return qexp(u_asymptotic_log(w, ell)); }

}  // namespace loopcount
