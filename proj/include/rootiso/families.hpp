#pragma once

#include <cmath>
#include <string>

#include "rootiso/points.hpp"
#include "rootiso/sturm.hpp"

namespace rootiso {

namespace zp {

inline ZPoly mul(const ZPoly& a, const ZPoly& b) {
    if (a.empty() || b.empty()) return {};
    ZPoly r(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

}  // namespace zp

// x^n - ((2^(tau/2) - 1)x - 1)^2: two real roots at distance ~ a^(-n/2)
// around 1/a plus the far crossings; the classical hard case for
// linear-convergence subdivision.
inline ZPoly mignotte_poly(int n, int tau) {
    if (n < 3) throw DegenerateInputError("mignotte: n must be at least 3");
    if (tau < 2 || tau % 2 != 0) throw DegenerateInputError("mignotte: tau must be even and >= 2");
    mpz_class a = (mpz_class(1) << (tau / 2)) - 1;
    ZPoly p(static_cast<size_t>(n) + 1);
    p[static_cast<size_t>(n)] = 1;
    p[2] -= a * a;
    p[1] += 2 * a;
    p[0] -= 1;
    return p;
}

// prod_{i=1}^{4} (x^(n/4) - (c*x^2 - 1)^(2i)) with c = 2^(tau/20) - 1; the
// product's coefficient bitsize is ~20*log2(c+1) = tau. Needs n/4 >= 16 so
// every factor has degree n/4.
inline ZPoly nested_mignotte_poly(int n, int tau) {
    if (n < 64 || n % 4 != 0) throw DegenerateInputError("nested-mignotte: n must be a multiple of 4, >= 64");
    if (tau < 20 || tau % 20 != 0) throw DegenerateInputError("nested-mignotte: tau must be a multiple of 20");
    mpz_class c = (mpz_class(1) << (tau / 20)) - 1;
    ZPoly inner = {mpz_class(-1), mpz_class(0), c};  // c*x^2 - 1
    ZPoly acc = {mpz_class(1)};
    for (int i = 1; i <= 4; ++i) {
        ZPoly pw = {mpz_class(1)};
        for (int j = 0; j < 2 * i; ++j) pw = zp::mul(pw, inner);
        ZPoly factor(static_cast<size_t>(n / 4) + 1);
        factor[static_cast<size_t>(n / 4)] = 1;
        for (size_t j = 0; j < pw.size(); ++j) factor[j] -= pw[j];
        acc = zp::mul(acc, factor);
    }
    return acc;
}

namespace detail {

// uniform integer in (-2^tau, 2^tau) from the seeded stream
inline mpz_class uniform_coeff(RandomSource& rng, int tau) {
    const mpz_class span = (mpz_class(1) << (tau + 1)) - 1;  // number of values
    const int chunks = tau / 64 + 1;
    const mpz_class total = mpz_class(1) << (chunks * 64);
    const mpz_class limit = total - total % span;
    while (true) {
        mpz_class v = 0;
        for (int c = 0; c < chunks; ++c) {
            v <<= 64;
            v += mpz_class(static_cast<unsigned long>(rng.next()));
        }
        if (v >= limit) continue;
        v %= span;
        return v - ((mpz_class(1) << tau) - 1);
    }
}

// approximately standard normal, bit-exact across platforms (Irwin-Hall of
// twelve uniforms)
inline double approx_gaussian(RandomSource& rng) {
    double s = 0.0;
    for (int i = 0; i < 12; ++i) s += static_cast<double>(rng.next()) * 0x1p-64;
    return s - 6.0;
}

}  // namespace detail

// dense with uniformly random coefficients in (-2^tau, 2^tau), nonzero lead
inline ZPoly random_uniform_poly(int n, int tau, uint64_t seed) {
    if (n < 1 || tau < 1) throw DegenerateInputError("random-uniform: need n >= 1 and tau >= 1");
    RandomSource rng(seed);
    ZPoly p(static_cast<size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) p[static_cast<size_t>(i)] = detail::uniform_coeff(rng, tau);
    while (mpz_sgn(p.back().get_mpz_t()) == 0) p.back() = detail::uniform_coeff(rng, tau);
    return p;
}

// f^2 - 1 for f = sum_i a_i * sqrt(C(d,i)/(i+1)) x^i with a_i approximately
// normal Gaussian, fixed-point scale 2^scale, d = n/2. Theta(sqrt(d)) real
// roots of f turn into that many tight multiplicity-two clusters.
inline ZPoly clustered_poly(int n, uint64_t seed, int scale = 256) {
    if (n < 2 || n % 2 != 0) throw DegenerateInputError("clustered: n must be even and >= 2");
    if (scale < 8) throw DegenerateInputError("clustered: scale must be at least 8");
    const int d = n / 2;
    RandomSource rng(seed);
    ZPoly f(static_cast<size_t>(d) + 1);
    for (int i = 0; i <= d; ++i) {
        mpz_class w;
        mpz_bin_uiui(w.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(i));
        w <<= 2 * scale;
        w /= (i + 1);
        mpz_sqrt(w.get_mpz_t(), w.get_mpz_t());  // ~ sqrt(C(d,i)/(i+1)) * 2^scale
        while (true) {
            const double a = detail::approx_gaussian(rng);
            const int64_t a_fix = static_cast<int64_t>(std::llround(a * 0x1p40));
            mpz_class coeff = w * mpz_class(static_cast<long>(a_fix));
            mpz_fdiv_q_2exp(coeff.get_mpz_t(), coeff.get_mpz_t(), 40);
            if (i < d || mpz_sgn(coeff.get_mpz_t()) != 0) {
                f[static_cast<size_t>(i)] = std::move(coeff);
                break;
            }
        }
    }
    ZPoly p = zp::mul(f, f);
    p[0] -= 1;
    return p;
}

inline ZPoly wilkinson_poly(int n) {
    if (n < 1) throw DegenerateInputError("wilkinson: n must be >= 1");
    ZPoly p = {mpz_class(-1), mpz_class(1)};  // x - 1
    for (int i = 2; i <= n; ++i) p = zp::mul(p, ZPoly{mpz_class(-i), mpz_class(1)});
    return p;
}

// Named generator dispatch; tau is ignored for clustered (emergent) and
// wilkinson families.
inline ZPoly gen_family(const std::string& family, int n, int tau, uint64_t seed, int scale = 256) {
    if (family == "mignotte") return mignotte_poly(n, tau);
    if (family == "nested-mignotte") return nested_mignotte_poly(n, tau);
    if (family == "random-uniform") return random_uniform_poly(n, tau, seed);
    if (family == "clustered") return clustered_poly(n, seed, scale);
    if (family == "wilkinson") return wilkinson_poly(n);
    throw DegenerateInputError("unknown family: " + family);
}

}  // namespace rootiso
