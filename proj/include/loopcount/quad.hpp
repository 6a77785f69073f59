#pragma once
// Extended-precision real arithmetic (__float128, ~33 significant decimal
// digits).  Plain doubles lose the small correction exponents in the
// enumeration formulas once n is a few dozen, so every log-space formula
// evaluates in qreal and converts to double only at the reporting boundary.
#include <quadmath.h>
#include <string>
#include <vector>

namespace loopcount {

using qreal = __float128;

inline qreal qabs(qreal x) { return fabsq(x); }
inline qreal qlog(qreal x) { return logq(x); }
inline qreal qlog1p(qreal x) { return log1pq(x); }
inline qreal qexp(qreal x) { return expq(x); }
inline qreal qsqrt(qreal x) { return sqrtq(x); }
inline qreal qlgamma(qreal x) { return lgammaq(x); }
inline qreal qfloor(qreal x) { return floorq(x); }

inline double to_double(qreal x) { return static_cast<double>(x); }

inline qreal qln2() {
    static const qreal v = logq(static_cast<qreal>(2));
    return v;
}

inline std::string qformat(qreal x, int digits = 33) {
    char buf[128];
    quadmath_snprintf(buf, sizeof buf, "%.*Qg", digits, x);
    return buf;
}

// log(exp(a) + exp(b)) without overflow
inline qreal qlogaddexp(qreal a, qreal b) {
    if (a < b) { qreal t = a; a = b; b = t; }
    if (isinfq(b) && b < 0) return a;
    return a + qlog1p(qexp(b - a));
}

// Compensated (Kahan) accumulator.  The formula exponents are differences of
// near-cancelling sums of log-gamma terms; naive accumulation is not enough.
class KahanSum {
public:
    void add(qreal x) {
        qreal y = x - comp_;
        qreal t = sum_ + y;
        comp_ = (t - sum_) - y;
        sum_ = t;
    }
    qreal value() const { return sum_; }

private:
    qreal sum_ = 0;
    qreal comp_ = 0;
};

// ln C(n, k) for possibly non-integral real arguments, via log-gamma.
inline qreal qlog_binom(qreal n, qreal k) {
    return qlgamma(n + 1) - qlgamma(k + 1) - qlgamma(n - k + 1);
}

}  // namespace loopcount
