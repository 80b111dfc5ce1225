#pragma once

// Exact rational reference implementations used as independent oracles for
// the interval transforms. Everything here is mpq-based and shares no code
// with the enclosure pipeline it checks.

#include <gmpxx.h>

#include <algorithm>
#include <vector>

#include "rootiso/points.hpp"
#include "rootiso/poly.hpp"
#include "rootiso/sturm.hpp"

namespace qref {

using QPoly = std::vector<mpq_class>;

inline QPoly from_z(const rootiso::ZPoly& p) {
    QPoly q;
    q.reserve(p.size());
    for (const auto& c : p) q.emplace_back(c);
    return q;
}

inline mpq_class eval(const QPoly& f, const mpq_class& x) {
    mpq_class acc = 0;
    for (auto it = f.rbegin(); it != f.rend(); ++it) acc = acc * x + *it;
    return acc;
}

inline QPoly taylor_shift(QPoly f, const mpq_class& c) {
    const int n = static_cast<int>(f.size()) - 1;
    for (int i = 0; i < n; ++i)
        for (int j = n - 1; j >= i; --j) f[static_cast<size_t>(j)] += c * f[static_cast<size_t>(j) + 1];
    return f;
}

inline QPoly scale_arg(QPoly f, const mpq_class& w) {
    mpq_class pw = 1;
    for (size_t i = 1; i < f.size(); ++i) {
        pw *= w;
        f[i] *= pw;
    }
    return f;
}

inline QPoly reverse_shift1(QPoly f) {
    std::reverse(f.begin(), f.end());
    return taylor_shift(std::move(f), 1);
}

inline QPoly descartes(const QPoly& f, const mpq_class& a, const mpq_class& b) {
    return reverse_shift1(scale_arg(taylor_shift(f, a), b - a));
}

inline QPoly derivative(const QPoly& f) {
    QPoly d;
    for (size_t i = 1; i < f.size(); ++i) d.push_back(f[i] * static_cast<long>(i));
    if (d.empty()) d.push_back(0);
    return d;
}

inline int var_count(const QPoly& f) {
    int v = 0, last = 0;
    for (const auto& c : f) {
        int s = sgn(c);
        if (s == 0) continue;
        if (last != 0 && s != last) ++v;
        last = s;
    }
    return v;
}

inline QPoly mul(const QPoly& a, const QPoly& b) {
    QPoly r(a.size() + b.size() - 1, mpq_class(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

inline QPoly from_roots(const std::vector<mpq_class>& roots) {
    QPoly p{1};
    for (const auto& r : roots) p = mul(p, QPoly{-r, 1});
    return p;
}

inline bool encloses(const rootiso::Enclosure& e, const mpq_class& v) {
    return rootiso::to_mpq(e.lo()) <= v && v <= rootiso::to_mpq(e.hi());
}

inline bool poly_encloses(const rootiso::IntervalPoly& f, const QPoly& q) {
    if (static_cast<size_t>(f.degree()) + 1 != q.size()) return false;
    for (int i = 0; i <= f.degree(); ++i) {
        if (!encloses(f[i], q[static_cast<size_t>(i)])) return false;
    }
    return true;
}

// deterministic helpers for property tests
inline rootiso::Dyadic random_dyadic(rootiso::RandomSource& rng, int mant_bits, int exp_span) {
    int64_t m = rng.uniform(-(int64_t{1} << mant_bits), int64_t{1} << mant_bits);
    int64_t e = rng.uniform(-exp_span, exp_span);
    return rootiso::Dyadic(mpz_class(static_cast<long>(m)), e);
}

inline rootiso::Enclosure random_enclosure(rootiso::RandomSource& rng, int mant_bits, int exp_span) {
    rootiso::Dyadic a = random_dyadic(rng, mant_bits, exp_span);
    rootiso::Dyadic b = random_dyadic(rng, mant_bits, exp_span);
    if (b < a) std::swap(a, b);
    return rootiso::Enclosure(a, b);
}

// a rational sample strictly inside the enclosure (or its point value)
inline mpq_class sample_inside(const rootiso::Enclosure& e, rootiso::RandomSource& rng) {
    mpq_class lo = rootiso::to_mpq(e.lo());
    mpq_class hi = rootiso::to_mpq(e.hi());
    long t = static_cast<long>(rng.uniform(0, 256));
    return lo + (hi - lo) * t / 256;
}

inline rootiso::ZPoly random_zpoly(rootiso::RandomSource& rng, int deg, int64_t coeff_bound) {
    rootiso::ZPoly p(static_cast<size_t>(deg) + 1);
    for (auto& c : p) c = static_cast<long>(rng.uniform(-coeff_bound, coeff_bound));
    while (mpz_sgn(p.back().get_mpz_t()) == 0) p.back() = static_cast<long>(rng.uniform(-coeff_bound, coeff_bound));
    return p;
}

}  // namespace qref
