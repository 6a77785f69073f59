#include "loopcount/bigint.hpp"

#include <cmath>

namespace loopcount {

namespace {

// Highest 113 bits of |z| as a qreal mantissa in [0.5, 1), plus exponent.
std::pair<qreal, long> mpz_frexp_q(mpz_srcptr z) {
    const size_t bits = mpz_sizeinbase(z, 2);
    mpz_t top;
    mpz_init(top);
    long shift = 0;
    if (bits > 120) {
        shift = static_cast<long>(bits - 120);
        mpz_tdiv_q_2exp(top, z, static_cast<mp_bitcnt_t>(shift));
    } else {
        mpz_set(top, z);
    }
    // top has at most 120 bits; accumulate limbs exactly into qreal
    qreal m = 0;
    const size_t limbs = mpz_size(top);
    for (size_t i = limbs; i-- > 0;) {
        m = m * static_cast<qreal>(18446744073709551616.0) +  // 2^64
            static_cast<qreal>(mpz_getlimbn(top, static_cast<mp_size_t>(i)));
    }
    mpz_clear(top);
    long e = shift;
    while (m >= 1) { m *= static_cast<qreal>(0.5); ++e; }
    return {m, e};
}

}  // namespace

std::pair<qreal, long> BigCount::frexp_q() const { return mpz_frexp_q(z_); }

qreal log_big(const BigCount& value) {
    if (value.is_zero() || value < BigCount(0))
        throw Error("log_big needs a positive integer");
    auto [m, e] = value.frexp_q();
    return qlog(m) + static_cast<qreal>(e) * qln2();
}

qreal ratio_q(const BigCount& a, const BigCount& b) {
    if (b.is_zero()) throw Error("ratio_q: zero denominator");
    if (a.is_zero()) return 0;
    auto [ma, ea] = a.frexp_q();
    auto [mb, eb] = b.frexp_q();
    return (ma / mb) * exp2q(static_cast<qreal>(ea - eb));
}

qreal Rational::to_qreal() const {
    const int s = mpq_sgn(q_);
    if (s == 0) return 0;
    BigCount num, den;
    mpz_set(num.raw(), mpq_numref(q_));
    mpz_abs(num.raw(), num.raw());
    mpz_set(den.raw(), mpq_denref(q_));
    const qreal r = ratio_q(num, den);
    return s < 0 ? -r : r;
}

}  // namespace loopcount
