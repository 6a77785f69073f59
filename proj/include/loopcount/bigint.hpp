#pragma once
// BigCount: exact nonnegative integers of unbounded size (enumeration
// results), a thin RAII wrapper over GMP's mpz_t.  Rational: exact rationals
// over the same backend, used to carry d, lambda, mu_D, R without rounding
// until a formula boundary is reached.
#include <gmp.h>
#include <cstdint>
#include <string>
#include <utility>

#include "loopcount/errors.hpp"
#include "loopcount/quad.hpp"

namespace loopcount {

class BigCount {
public:
    BigCount() { mpz_init(z_); }
    BigCount(unsigned long v) { mpz_init_set_ui(z_, v); }  // NOLINT(runtime/explicit)
    BigCount(long v) { mpz_init_set_si(z_, v); }            // NOLINT(runtime/explicit)
    BigCount(int v) { mpz_init_set_si(z_, v); }             // NOLINT(runtime/explicit)
    explicit BigCount(const std::string& decimal) {
        if (mpz_init_set_str(z_, decimal.c_str(), 10) != 0) {
            mpz_clear(z_);
            throw Error("BigCount: bad decimal literal '" + decimal + "'");
        }
    }
    BigCount(const BigCount& o) { mpz_init_set(z_, o.z_); }
    BigCount(BigCount&& o) noexcept { mpz_init(z_); mpz_swap(z_, o.z_); }
    BigCount& operator=(const BigCount& o) {
        if (this != &o) mpz_set(z_, o.z_);
        return *this;
    }
    BigCount& operator=(BigCount&& o) noexcept {
        mpz_swap(z_, o.z_);
        return *this;
    }
    ~BigCount() { mpz_clear(z_); }

    BigCount& operator+=(const BigCount& o) { mpz_add(z_, z_, o.z_); return *this; }
    BigCount& operator-=(const BigCount& o) { mpz_sub(z_, z_, o.z_); return *this; }
    BigCount& operator*=(const BigCount& o) { mpz_mul(z_, z_, o.z_); return *this; }
    BigCount& operator*=(unsigned long v) { mpz_mul_ui(z_, z_, v); return *this; }
    friend BigCount operator+(BigCount a, const BigCount& b) { a += b; return a; }
    friend BigCount operator-(BigCount a, const BigCount& b) { a -= b; return a; }
    friend BigCount operator*(BigCount a, const BigCount& b) { a *= b; return a; }

    // this += a * m
    void add_mul(const BigCount& a, unsigned long m) { mpz_addmul_ui(z_, a.z_, m); }
    void add_mul(const BigCount& a, const BigCount& m) { mpz_addmul(z_, a.z_, m.z_); }

    friend bool operator==(const BigCount& a, const BigCount& b) { return mpz_cmp(a.z_, b.z_) == 0; }
    friend bool operator!=(const BigCount& a, const BigCount& b) { return mpz_cmp(a.z_, b.z_) != 0; }
    friend bool operator<(const BigCount& a, const BigCount& b) { return mpz_cmp(a.z_, b.z_) < 0; }
    friend bool operator>(const BigCount& a, const BigCount& b) { return mpz_cmp(a.z_, b.z_) > 0; }
    friend bool operator<=(const BigCount& a, const BigCount& b) { return mpz_cmp(a.z_, b.z_) <= 0; }
    friend bool operator>=(const BigCount& a, const BigCount& b) { return mpz_cmp(a.z_, b.z_) >= 0; }

    bool is_zero() const { return mpz_sgn(z_) == 0; }
    bool fits_ulong() const { return mpz_fits_ulong_p(z_) != 0; }
    unsigned long to_ulong() const { return mpz_get_ui(z_); }

    std::string to_string() const {
        char* s = mpz_get_str(nullptr, 10, z_);
        std::string out(s);
        void (*freefn)(void*, size_t);
        mp_get_memory_functions(nullptr, nullptr, &freefn);
        freefn(s, out.size() + 1);
        return out;
    }

    // value as m * 2^e with m in [0.5, 1), m carrying the top 113 bits
    std::pair<qreal, long> frexp_q() const;

    size_t bit_length() const { return mpz_sizeinbase(z_, 2); }

    static BigCount binomial(unsigned long n, unsigned long k) {
        BigCount r;
        mpz_bin_uiui(r.z_, n, k);
        return r;
    }
    static BigCount factorial(unsigned long n) {
        BigCount r;
        mpz_fac_ui(r.z_, n);
        return r;
    }
    static BigCount pow2(unsigned long e) {
        BigCount r(1);
        mpz_mul_2exp(r.z_, r.z_, e);
        return r;
    }
    static BigCount pow(const BigCount& base, unsigned long e) {
        BigCount r;
        mpz_pow_ui(r.z_, base.z_, e);
        return r;
    }

    mpz_srcptr raw() const { return z_; }
    mpz_ptr raw() { return z_; }

private:
    mpz_t z_;
};

class Rational {
public:
    Rational() { mpq_init(q_); }
    Rational(long long num, long long den = 1) {  // NOLINT(runtime/explicit)
        mpq_init(q_);
        mpq_set_si(q_, static_cast<long>(num), 1);
        if (den != 1) {
            Rational d(den);
            mpq_div(q_, q_, d.q_);
        }
    }
    Rational(int num) : Rational(static_cast<long long>(num)) {}  // NOLINT(runtime/explicit)
    explicit Rational(const BigCount& n) {
        mpq_init(q_);
        mpq_set_z(q_, n.raw());
    }
    Rational(const Rational& o) { mpq_init(q_); mpq_set(q_, o.q_); }
    Rational(Rational&& o) noexcept { mpq_init(q_); mpq_swap(q_, o.q_); }
    Rational& operator=(const Rational& o) {
        if (this != &o) mpq_set(q_, o.q_);
        return *this;
    }
    Rational& operator=(Rational&& o) noexcept { mpq_swap(q_, o.q_); return *this; }
    ~Rational() { mpq_clear(q_); }

    Rational& operator+=(const Rational& o) { mpq_add(q_, q_, o.q_); return *this; }
    Rational& operator-=(const Rational& o) { mpq_sub(q_, q_, o.q_); return *this; }
    Rational& operator*=(const Rational& o) { mpq_mul(q_, q_, o.q_); return *this; }
    Rational& operator/=(const Rational& o) { mpq_div(q_, q_, o.q_); return *this; }
    friend Rational operator+(Rational a, const Rational& b) { a += b; return a; }
    friend Rational operator-(Rational a, const Rational& b) { a -= b; return a; }
    friend Rational operator*(Rational a, const Rational& b) { a *= b; return a; }
    friend Rational operator/(Rational a, const Rational& b) { a /= b; return a; }
    Rational operator-() const { Rational r(*this); mpq_neg(r.q_, r.q_); return r; }

    friend bool operator==(const Rational& a, const Rational& b) { return mpq_cmp(a.q_, b.q_) == 0; }
    friend bool operator!=(const Rational& a, const Rational& b) { return mpq_cmp(a.q_, b.q_) != 0; }
    friend bool operator<(const Rational& a, const Rational& b) { return mpq_cmp(a.q_, b.q_) < 0; }
    friend bool operator>(const Rational& a, const Rational& b) { return mpq_cmp(a.q_, b.q_) > 0; }

    bool is_zero() const { return mpq_sgn(q_) == 0; }
    int sign() const { return mpq_sgn(q_); }

    qreal to_qreal() const;
    double to_double() const { return mpq_get_d(q_); }
    std::string to_string() const {
        char* s = mpq_get_str(nullptr, 10, q_);
        std::string out(s);
        void (*freefn)(void*, size_t);
        mp_get_memory_functions(nullptr, nullptr, &freefn);
        freefn(s, out.size() + 1);
        return out;
    }

    mpq_srcptr raw() const { return q_; }

private:
    mpq_t q_;
};

// Natural log of an exact positive integer, accurate to ~1e-33 relative:
// mantissa from the top 113 bits, plus bit-length * ln 2.
qreal log_big(const BigCount& value);

// Exact ratio a/b as qreal (b > 0).
qreal ratio_q(const BigCount& a, const BigCount& b);

}  // namespace loopcount
