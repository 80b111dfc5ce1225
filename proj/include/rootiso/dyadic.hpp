#pragma once

#include <gmpxx.h>

#include <cmath>
#include <compare>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>

#include "rootiso/errors.hpp"

namespace rootiso {

namespace detail {

inline int64_t checked_exp(int64_t value) {
    // guard band keeps room for small downstream adjustments
    constexpr int64_t kLimit = std::numeric_limits<int64_t>::max() / 4;
    if (value > kLimit || value < -kLimit) throw ExponentOverflowError{};
    return value;
}

inline int64_t checked_exp_add(int64_t a, int64_t b) {
    int64_t r = 0;
    if (__builtin_add_overflow(a, b, &r)) throw ExponentOverflowError{};
    return checked_exp(r);
}

// number of bits of |m|, 0 for m == 0
inline int64_t bit_length(const mpz_class& m) {
    if (mpz_sgn(m.get_mpz_t()) == 0) return 0;
    return static_cast<int64_t>(mpz_sizeinbase(m.get_mpz_t(), 2));
}

}  // namespace detail

enum class Rounding { Down, Up };

// Exact binary rational m * 2^e. Canonical form: mantissa odd, or
// mantissa = 0 with exponent = 0. Equality and ordering agree with the
// exact rational value.
class Dyadic {
  public:
    Dyadic() : mant_(0), exp_(0) {}
    Dyadic(long v) : mant_(v), exp_(0) { normalize(); }            // NOLINT
    Dyadic(const mpz_class& m, int64_t e) : mant_(m), exp_(e) { normalize(); }
    Dyadic(mpz_class&& m, int64_t e) : mant_(std::move(m)), exp_(e) { normalize(); }

    static Dyadic pow2(int64_t e) { return Dyadic(mpz_class(1), e); }

    const mpz_class& mantissa() const { return mant_; }
    int64_t exponent() const { return exp_; }

    bool is_zero() const { return mpz_sgn(mant_.get_mpz_t()) == 0; }
    bool is_one() const { return exp_ == 0 && mant_ == 1; }
    int sign() const { return mpz_sgn(mant_.get_mpz_t()); }
    bool is_power_of_two() const { return mant_ == 1; }

    // floor(log2(|x|)); requires x != 0
    int64_t floor_log2() const { return detail::bit_length(mant_) - 1 + exp_; }

    Dyadic operator-() const {
        Dyadic r = *this;
        r.mant_ = -r.mant_;
        return r;
    }

    Dyadic abs() const { return sign() < 0 ? -*this : *this; }

    friend Dyadic operator+(const Dyadic& a, const Dyadic& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        int64_t e = std::min(a.exp_, b.exp_);
        mpz_class m;
        check_shift(a.exp_ - e);
        check_shift(b.exp_ - e);
        mpz_mul_2exp(m.get_mpz_t(), a.mant_.get_mpz_t(), static_cast<mp_bitcnt_t>(a.exp_ - e));
        mpz_class t;
        mpz_mul_2exp(t.get_mpz_t(), b.mant_.get_mpz_t(), static_cast<mp_bitcnt_t>(b.exp_ - e));
        m += t;
        return Dyadic(std::move(m), e);
    }

    friend Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }

    friend Dyadic operator*(const Dyadic& a, const Dyadic& b) {
        if (a.is_zero() || b.is_zero()) return Dyadic();
        // odd * odd stays odd, no renormalization needed
        Dyadic r;
        r.mant_ = a.mant_ * b.mant_;
        r.exp_ = detail::checked_exp_add(a.exp_, b.exp_);
        return r;
    }

    Dyadic mul_pow2(int64_t k) const {
        if (is_zero()) return *this;
        Dyadic r = *this;
        r.exp_ = detail::checked_exp_add(exp_, k);
        return r;
    }

    // exact comparison of rational values
    friend int cmp(const Dyadic& a, const Dyadic& b) {
        int as = a.sign(), bs = b.sign();
        if (as != bs) return as < bs ? -1 : 1;
        if (as == 0) return 0;
        int64_t la = a.floor_log2(), lb = b.floor_log2();
        if (la != lb) return la < lb ? -as : as;
        int64_t d = a.exp_ - b.exp_;
        mpz_class t;
        if (d >= 0) {
            check_shift(d);
            mpz_mul_2exp(t.get_mpz_t(), a.mant_.get_mpz_t(), static_cast<mp_bitcnt_t>(d));
            return ::cmp(t, b.mant_);
        }
        check_shift(-d);
        mpz_mul_2exp(t.get_mpz_t(), b.mant_.get_mpz_t(), static_cast<mp_bitcnt_t>(-d));
        return ::cmp(a.mant_, t);
    }

    friend bool operator==(const Dyadic& a, const Dyadic& b) {
        return a.exp_ == b.exp_ && a.mant_ == b.mant_;
    }
    friend bool operator<(const Dyadic& a, const Dyadic& b) { return cmp(a, b) < 0; }
    friend bool operator<=(const Dyadic& a, const Dyadic& b) { return cmp(a, b) <= 0; }
    friend bool operator>(const Dyadic& a, const Dyadic& b) { return cmp(a, b) > 0; }
    friend bool operator>=(const Dyadic& a, const Dyadic& b) { return cmp(a, b) >= 0; }

    // directed rounding to a mantissa of at most `bits` bits
    Dyadic round(int64_t bits, Rounding dir) const {
        int64_t len = detail::bit_length(mant_);
        if (len <= bits) return *this;
        int64_t shift = len - bits;
        mpz_class q;
        if (dir == Rounding::Down) {
            mpz_fdiv_q_2exp(q.get_mpz_t(), mant_.get_mpz_t(), static_cast<mp_bitcnt_t>(shift));
        } else {
            mpz_cdiv_q_2exp(q.get_mpz_t(), mant_.get_mpz_t(), static_cast<mp_bitcnt_t>(shift));
        }
        return Dyadic(std::move(q), detail::checked_exp_add(exp_, shift));
    }

    // a / b rounded toward -inf (Down) or +inf (Up), mantissa <= bits bits
    static Dyadic div(const Dyadic& a, const Dyadic& b, int64_t bits, Rounding dir) {
        if (b.is_zero()) throw Error("dyadic division by zero");
        if (a.is_zero()) return Dyadic();
        int64_t la = detail::bit_length(a.mant_), lb = detail::bit_length(b.mant_);
        int64_t s = bits + 2 + std::max<int64_t>(0, lb - la);
        mpz_class num;
        check_shift(s);
        mpz_mul_2exp(num.get_mpz_t(), a.mant_.get_mpz_t(), static_cast<mp_bitcnt_t>(s));
        mpz_class q;
        if (dir == Rounding::Down) {
            mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), b.mant_.get_mpz_t());
        } else {
            mpz_cdiv_q(q.get_mpz_t(), num.get_mpz_t(), b.mant_.get_mpz_t());
        }
        int64_t e = detail::checked_exp_add(a.exp_ - s, -b.exp_);
        return Dyadic(std::move(q), e).round(bits, dir);
    }

    double to_double() const {
        if (is_zero()) return 0.0;
        long e2 = 0;
        double d = mpz_get_d_2exp(&e2, mant_.get_mpz_t());
        double total = static_cast<double>(e2) + static_cast<double>(exp_);
        if (total > 4000) return sign() > 0 ? HUGE_VAL : -HUGE_VAL;
        if (total < -4000) return 0.0;
        return std::ldexp(d, static_cast<int>(e2 + exp_));
    }

    // textual form m*2^e with decimal mantissa, e.g. 3*2^-5; integers print bare
    std::string str() const {
        if (exp_ == 0) return mant_.get_str();
        return mant_.get_str() + "*2^" + std::to_string(exp_);
    }

  private:
    static void check_shift(int64_t s) {
        if (s < 0 || s > (int64_t{1} << 33)) throw ExponentOverflowError{};
    }

    void normalize() {
        if (mpz_sgn(mant_.get_mpz_t()) == 0) {
            exp_ = 0;
            return;
        }
        mp_bitcnt_t tz = mpz_scan1(mant_.get_mpz_t(), 0);
        if (tz > 0) {
            mpz_tdiv_q_2exp(mant_.get_mpz_t(), mant_.get_mpz_t(), tz);
            exp_ = detail::checked_exp_add(exp_, static_cast<int64_t>(tz));
        } else {
            detail::checked_exp(exp_);
        }
    }

    mpz_class mant_;
    int64_t exp_;
};

inline Dyadic dy_normalize(const mpz_class& m, int64_t e) { return Dyadic(m, e); }

inline mpq_class to_mpq(const Dyadic& d) {
    mpq_class q(d.mantissa());
    if (d.exponent() >= 0) {
        q <<= static_cast<unsigned long>(d.exponent());
    } else {
        q /= mpq_class(mpz_class(1) << static_cast<unsigned long>(-d.exponent()));
    }
    return q;
}

// midpoint (a+b)/2, exact
inline Dyadic midpoint(const Dyadic& a, const Dyadic& b) { return (a + b).mul_pow2(-1); }

inline int64_t ceil_log2(const Dyadic& d) {
    return d.floor_log2() + (d.is_power_of_two() ? 0 : 1);
}

}  // namespace rootiso
