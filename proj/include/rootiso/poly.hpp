#pragma once

#include <algorithm>
#include <limits>
#include <vector>

#include "rootiso/oracle.hpp"

namespace rootiso {

// Range of possible sign-variation counts over all exact polynomials
// consistent with the interval coefficients.
struct SignVarRange {
    int v_min = 0;
    int v_max = 0;
    bool determined() const { return v_min == v_max; }
    friend bool operator==(SignVarRange a, SignVarRange b) {
        return a.v_min == b.v_min && a.v_max == b.v_max;
    }
};

// Dense polynomial with enclosure coefficients; index i holds the
// coefficient of x^i.
class IntervalPoly {
  public:
    IntervalPoly() = default;
    explicit IntervalPoly(std::vector<Enclosure> coeffs) : c_(std::move(coeffs)) {
        if (c_.empty()) throw DegenerateInputError("empty polynomial");
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const Enclosure& operator[](int i) const { return c_[static_cast<size_t>(i)]; }
    Enclosure& operator[](int i) { return c_[static_cast<size_t>(i)]; }
    const std::vector<Enclosure>& coeffs() const { return c_; }

    static IntervalPoly from_points(const std::vector<Dyadic>& v) {
        std::vector<Enclosure> c;
        c.reserve(v.size());
        for (const auto& d : v) c.push_back(Enclosure::point(d));
        return IntervalPoly(std::move(c));
    }

  private:
    std::vector<Enclosure> c_;
};

inline IntervalPoly fetch_poly(const CoefficientOracle& oracle, Precision rho) {
    std::vector<Enclosure> c;
    const int n = oracle.degree();
    c.reserve(static_cast<size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) c.push_back(oracle.coefficient(i, rho));
    return IntervalPoly(std::move(c));
}

// enclosure of f(x + c); classical quadratic-time synthetic-division scheme
inline IntervalPoly taylor_shift(const IntervalPoly& f, const Dyadic& c, Precision rho) {
    std::vector<Enclosure> a = f.coeffs();
    const int n = f.degree();
    if (c.is_zero() || n == 0) return IntervalPoly(std::move(a));
    const bool one = c.is_one();
    const Enclosure cp = Enclosure::point(c);
    for (int i = 0; i < n; ++i) {
        for (int j = n - 1; j >= i; --j) {
            if (one) {
                a[static_cast<size_t>(j)] = iv_add(a[static_cast<size_t>(j)], a[static_cast<size_t>(j) + 1], rho);
            } else {
                a[static_cast<size_t>(j)] =
                    iv_add(a[static_cast<size_t>(j)], iv_mul(a[static_cast<size_t>(j) + 1], cp, rho), rho);
            }
        }
    }
    return IntervalPoly(std::move(a));
}

// coefficient-wise scaling f(w*x): coefficient i times w^i, powers reused
inline IntervalPoly scale_arg(const IntervalPoly& f, const Dyadic& w, Precision rho) {
    if (w.is_one()) return f;
    std::vector<Enclosure> a = f.coeffs();
    Enclosure pw = Enclosure::point(Dyadic(1));
    const Enclosure wp = Enclosure::point(w);
    for (size_t i = 1; i < a.size(); ++i) {
        pw = iv_mul(pw, wp, rho);
        a[i] = iv_mul(a[i], pw, rho);
    }
    return IntervalPoly(std::move(a));
}

// (x+1)^n * f(1/(x+1)): coefficient reversal followed by a Taylor shift by 1
inline IntervalPoly scale_reverse_shift1(const IntervalPoly& f, Precision rho) {
    std::vector<Enclosure> a = f.coeffs();
    std::reverse(a.begin(), a.end());
    return taylor_shift(IntervalPoly(std::move(a)), Dyadic(1), rho);
}

// Enclosure of (x+1)^n * P((a*x+b)/(x+1)), whose sign variations bound the
// root count of P in (a, b): fetch coefficients, shift by a, scale the
// argument by b-a, then reverse and shift by 1.
inline IntervalPoly descartes_transform(const CoefficientOracle& oracle, const Dyadic& a, const Dyadic& b,
                                        Precision rho) {
    IntervalPoly p = fetch_poly(oracle, rho);
    p = taylor_shift(p, a, rho);
    p = scale_arg(p, b - a, rho);
    return scale_reverse_shift1(p, rho);
}

inline SignVarRange sign_variations(const IntervalPoly& f) {
    // DP over (last definite sign) x (min/max changes so far); a
    // zero-straddling coefficient may realize -, 0 or +.
    constexpr int kInf = std::numeric_limits<int>::max() / 2;
    // states: 0 = no sign seen, 1 = last positive, 2 = last negative
    int mn[3] = {0, kInf, kInf};
    int mx[3] = {0, -1, -1};
    for (int i = 0; i <= f.degree(); ++i) {
        const Enclosure& e = f[i];
        const bool can_pos = e.hi().sign() > 0;
        const bool can_neg = e.lo().sign() < 0;
        const bool can_zero = e.contains_zero();
        int nmn[3] = {kInf, kInf, kInf};
        int nmx[3] = {-1, -1, -1};
        auto relax = [&](int from_mn, int from_mx, int to, int add) {
            if (from_mn + add < nmn[to]) nmn[to] = from_mn + add;
            if (from_mx >= 0 && from_mx + add > nmx[to]) nmx[to] = from_mx + add;
        };
        for (int s = 0; s < 3; ++s) {
            if (mn[s] >= kInf && mx[s] < 0) continue;
            if (can_zero) relax(mn[s], mx[s], s, 0);
            if (can_pos) relax(mn[s], mx[s], 1, s == 2 ? 1 : 0);
            if (can_neg) relax(mn[s], mx[s], 2, s == 1 ? 1 : 0);
        }
        std::copy(nmn, nmn + 3, mn);
        std::copy(nmx, nmx + 3, mx);
    }
    SignVarRange r{kInf, -1};
    for (int s = 0; s < 3; ++s) {
        r.v_min = std::min(r.v_min, mn[s]);
        r.v_max = std::max(r.v_max, mx[s]);
    }
    return r;
}

inline Enclosure poly_eval(const IntervalPoly& f, const Dyadic& x, Precision rho) {
    const Enclosure xp = Enclosure::point(x);
    Enclosure acc = f[f.degree()];
    for (int i = f.degree() - 1; i >= 0; --i) acc = iv_add(iv_mul(acc, xp, rho), f[i], rho);
    return acc;
}

inline Enclosure poly_eval_iv(const IntervalPoly& f, const Enclosure& x, Precision rho) {
    Enclosure acc = f[f.degree()];
    for (int i = f.degree() - 1; i >= 0; --i) acc = iv_add(iv_mul(acc, x, rho), f[i], rho);
    return acc;
}

inline IntervalPoly derivative(const IntervalPoly& f, Precision rho) {
    if (f.degree() == 0) return IntervalPoly({Enclosure::point(Dyadic(0))});
    std::vector<Enclosure> d;
    d.reserve(static_cast<size_t>(f.degree()));
    for (int i = 1; i <= f.degree(); ++i) d.push_back(iv_mul(f[i], Enclosure::point(Dyadic(i)), rho));
    return IntervalPoly(std::move(d));
}

// Degree-k local expansion of Q_I(x) = P(a + (b-a)x): the k lowest-order
// coefficients from a partial Taylor shift, plus the Lagrange remainder
// enclosure { P^(k)(xi)/k! * (b-a)^k : xi in I } as coefficient k.
inline IntervalPoly truncated_local_poly(const CoefficientOracle& oracle, const Dyadic& a, const Dyadic& b, int k,
                                         Precision rho) {
    const int n = oracle.degree();
    if (k < 1 || k > n) throw Error("truncation order out of range");
    IntervalPoly p = fetch_poly(oracle, rho);
    const Dyadic w = b - a;
    std::vector<Enclosure> body = p.coeffs();
    const Enclosure ap = Enclosure::point(a);
    const bool azero = a.is_zero();
    for (int t = 0; t < k; ++t) {
        if (azero) break;
        for (int j = n - 1; j >= t; --j) {
            body[static_cast<size_t>(j)] =
                iv_add(body[static_cast<size_t>(j)], iv_mul(body[static_cast<size_t>(j) + 1], ap, rho), rho);
        }
    }
    std::vector<Enclosure> out;
    out.reserve(static_cast<size_t>(k) + 1);
    Enclosure pw = Enclosure::point(Dyadic(1));
    const Enclosure wp = Enclosure::point(w);
    for (int t = 0; t < k; ++t) {
        out.push_back(iv_mul(body[static_cast<size_t>(t)], pw, rho));
        pw = iv_mul(pw, wp, rho);
    }
    // pw == enclosure of w^k here
    std::vector<Enclosure> tail;
    tail.reserve(static_cast<size_t>(n - k) + 1);
    for (int i = k; i <= n; ++i) {
        mpz_class binom;
        mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(i), static_cast<unsigned long>(k));
        tail.push_back(iv_mul(p[i], Enclosure::point(Dyadic(binom, 0)), rho));
    }
    Enclosure rem = poly_eval_iv(IntervalPoly(std::move(tail)), Enclosure(a, b), rho);
    out.push_back(iv_mul(rem, pw, rho));
    return IntervalPoly(std::move(out));
}

// Power-of-two B >= 1 + max_{i<n} |p_i| / |p_n| (outward-rounded), so all
// real roots lie in (-B, B); at least 2.
inline Dyadic cauchy_root_bound(const CoefficientOracle& oracle, int rho_cap = 1 << 20) {
    const int n = oracle.degree();
    for (Precision rho = Precision::initial();; rho = rho.next()) {
        if (rho.bits > rho_cap)
            throw DegenerateInputError("leading coefficient cannot be separated from zero");
        Enclosure lead = oracle.coefficient(n, rho);
        if (lead.contains_zero()) continue;
        Dyadic lead_low = std::min(lead.lo().abs(), lead.hi().abs(),
                                   [](const Dyadic& u, const Dyadic& v) { return u < v; });
        Dyadic max_up(0);
        for (int i = 0; i < n; ++i) {
            Dyadic m = oracle.coefficient(i, rho).mag();
            if (max_up < m) max_up = m;
        }
        Dyadic bound = Dyadic(1) + Dyadic::div(max_up, lead_low, 63, Rounding::Up);
        int64_t e = ceil_log2(bound);
        return Dyadic::pow2(std::max<int64_t>(e, 1));
    }
}

}  // namespace rootiso
