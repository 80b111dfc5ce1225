#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "rootiso/interval.hpp"

namespace rootiso {

// Query interface for polynomial coefficients known only through arbitrarily
// good dyadic approximations. coefficient(i, rho) returns an enclosure of
// width <= 2^(1-rho) containing the exact p_i; enclosures at higher rho are
// nested inside those at lower rho, and exact inputs yield point enclosures
// at every rho. Implementations must be safe to share between threads
// (read-only after construction).
class CoefficientOracle {
  public:
    virtual ~CoefficientOracle() = default;
    virtual int degree() const = 0;
    virtual Enclosure coefficient(int i, Precision rho) const = 0;
    virtual bool exact() const = 0;
    // exact dyadic value when the coefficient is exactly representable
    virtual std::optional<Dyadic> exact_coefficient(int i) const { return std::nullopt; }
};

// Exactly known dyadic coefficients.
class DyadicOracle final : public CoefficientOracle {
  public:
    explicit DyadicOracle(std::vector<Dyadic> coeffs) : c_(std::move(coeffs)) {
        if (c_.empty()) throw DegenerateInputError("empty polynomial");
        if (c_.back().is_zero() && c_.size() > 1) throw DegenerateInputError("zero leading coefficient");
    }
    int degree() const override { return static_cast<int>(c_.size()) - 1; }
    Enclosure coefficient(int i, Precision) const override { return Enclosure::point(c_[static_cast<size_t>(i)]); }
    bool exact() const override { return true; }
    std::optional<Dyadic> exact_coefficient(int i) const override { return c_[static_cast<size_t>(i)]; }

  private:
    std::vector<Dyadic> c_;
};

// Exact rational coefficients, rounded outward on demand. Covers integer,
// dyadic and decimal-string inputs; exact() iff every denominator is a
// power of two.
class RationalOracle final : public CoefficientOracle {
  public:
    explicit RationalOracle(std::vector<mpq_class> coeffs) : q_(std::move(coeffs)) {
        if (q_.empty()) throw DegenerateInputError("empty polynomial");
        for (auto& v : q_) v.canonicalize();
        if (q_.back() == 0 && q_.size() > 1) throw DegenerateInputError("zero leading coefficient");
        for (const auto& v : q_) {
            const mpz_class& den = v.get_den();
            if (mpz_scan1(den.get_mpz_t(), 0) != static_cast<mp_bitcnt_t>(detail::bit_length(den) - 1)) {
                all_dyadic_ = false;
                break;
            }
        }
    }

    int degree() const override { return static_cast<int>(q_.size()) - 1; }

    Enclosure coefficient(int i, Precision rho) const override {
        const mpq_class& v = q_[static_cast<size_t>(i)];
        const mpz_class& num = v.get_num();
        const mpz_class& den = v.get_den();
        if (den == 1) return Enclosure::point(Dyadic(num, 0));
        mp_bitcnt_t tz = mpz_scan1(den.get_mpz_t(), 0);
        if (static_cast<int64_t>(tz) == detail::bit_length(den) - 1) {
            return Enclosure::point(Dyadic(num, -static_cast<int64_t>(tz)));
        }
        // floor/ceil on the 2^-rho grid: nested across increasing rho
        mpz_class scaled;
        mpz_mul_2exp(scaled.get_mpz_t(), num.get_mpz_t(), static_cast<mp_bitcnt_t>(rho.bits));
        mpz_class lo_m, hi_m;
        mpz_fdiv_q(lo_m.get_mpz_t(), scaled.get_mpz_t(), den.get_mpz_t());
        mpz_cdiv_q(hi_m.get_mpz_t(), scaled.get_mpz_t(), den.get_mpz_t());
        return Enclosure(Dyadic(std::move(lo_m), -rho.bits), Dyadic(std::move(hi_m), -rho.bits));
    }

    bool exact() const override { return all_dyadic_; }

    std::optional<Dyadic> exact_coefficient(int i) const override {
        const mpq_class& v = q_[static_cast<size_t>(i)];
        const mpz_class& den = v.get_den();
        if (den == 1) return Dyadic(v.get_num(), 0);
        mp_bitcnt_t tz = mpz_scan1(den.get_mpz_t(), 0);
        if (static_cast<int64_t>(tz) != detail::bit_length(den) - 1) return std::nullopt;
        return Dyadic(v.get_num(), -static_cast<int64_t>(tz));
    }

    const std::vector<mpq_class>& values() const { return q_; }

  private:
    std::vector<mpq_class> q_;
    bool all_dyadic_ = true;
};

// Coefficients produced by an arbitrary refinement callback (bitstream
// inputs, e.g. transcendental coefficients). Never exact.
class CallbackOracle final : public CoefficientOracle {
  public:
    using Fn = std::function<Enclosure(int, Precision)>;
    CallbackOracle(int degree, Fn fn) : n_(degree), fn_(std::move(fn)) {}
    int degree() const override { return n_; }
    Enclosure coefficient(int i, Precision rho) const override { return fn_(i, rho); }
    bool exact() const override { return false; }

  private:
    int n_;
    Fn fn_;
};

}  // namespace rootiso
