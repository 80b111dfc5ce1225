#pragma once

#include <gmpxx.h>

#include <vector>

#include "rootiso/errors.hpp"

namespace rootiso {

// Dense integer polynomial, lowest-first; the zero polynomial is empty.
// Exact rational arithmetic lives only in this verification oracle.
using ZPoly = std::vector<mpz_class>;

namespace zp {

inline void strip(ZPoly& p) {
    while (!p.empty() && mpz_sgn(p.back().get_mpz_t()) == 0) p.pop_back();
}

inline int degree(const ZPoly& p) { return static_cast<int>(p.size()) - 1; }

inline ZPoly derivative(const ZPoly& p) {
    ZPoly d;
    for (size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
    strip(d);
    return d;
}

inline mpz_class content(const ZPoly& p) {
    mpz_class g = 0;
    for (const auto& c : p) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) break;
    }
    return g;  // non-negative
}

inline void make_primitive(ZPoly& p) {
    mpz_class g = content(p);
    if (g == 0 || g == 1) return;
    for (auto& c : p) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
}

// remainder of lc(b)^(da-db+1) * a mod b, adjusted so the result is a
// positive multiple of the true remainder
inline ZPoly pseudo_rem_pos(ZPoly a, const ZPoly& b) {
    const int db = degree(b);
    const mpz_class& lb = b.back();
    int steps = 0;
    while (degree(a) >= db) {
        const int da = degree(a);
        mpz_class lead = a.back();
        for (int i = 0; i <= da; ++i) a[static_cast<size_t>(i)] *= lb;
        for (int i = 0; i <= db; ++i)
            a[static_cast<size_t>(da - db + i)] -= lead * b[static_cast<size_t>(i)];
        strip(a);
        ++steps;
        if (a.empty()) break;
    }
    // total factor applied is lb^steps; flip if negative
    if (mpz_sgn(lb.get_mpz_t()) < 0 && (steps % 2) == 1)
        for (auto& c : a) c = -c;
    return a;
}

// sign of p(x) for rational x = num/den: sign of sum p_i * num^i * den^(n-i)
inline int sign_at(const ZPoly& p, const mpq_class& x) {
    if (p.empty()) return 0;
    const mpz_class& num = x.get_num();
    const mpz_class& den = x.get_den();
    mpz_class acc = p.back();
    mpz_class dp = 1;
    for (int i = degree(p) - 1; i >= 0; --i) {
        dp *= den;
        acc *= num;
        acc += p[static_cast<size_t>(i)] * dp;
    }
    return mpz_sgn(acc.get_mpz_t());
}

}  // namespace zp

// Signed remainder chain of a square-free integer polynomial; the endpoint
// sign-variation difference counts distinct real roots exactly.
class SturmChain {
  public:
    explicit SturmChain(ZPoly p) {
        zp::strip(p);
        if (zp::degree(p) < 1) throw DegenerateInputError("sturm oracle needs degree >= 1");
        zp::make_primitive(p);
        chain_.push_back(p);
        ZPoly d = zp::derivative(p);
        zp::make_primitive(d);
        chain_.push_back(std::move(d));
        while (true) {
            ZPoly r = zp::pseudo_rem_pos(chain_[chain_.size() - 2], chain_.back());
            if (r.empty()) break;
            zp::make_primitive(r);
            for (auto& c : r) c = -c;
            chain_.push_back(std::move(r));
        }
        if (zp::degree(chain_.back()) >= 1)
            throw NonSquareFreeError("sturm oracle: input is not square-free");
    }

    int sign_at(const mpq_class& x) const { return zp::sign_at(chain_.front(), x); }

    // distinct real roots in the open interval (a, b); endpoints must not be roots
    int count(const mpq_class& a, const mpq_class& b) const {
        if (!(a < b)) throw Error("sturm count needs a < b");
        if (sign_at(a) == 0) throw Error("sturm count: left endpoint is a root");
        if (sign_at(b) == 0) throw Error("sturm count: right endpoint is a root");
        return variations_at(a) - variations_at(b);
    }

  private:
    int variations_at(const mpq_class& x) const {
        int v = 0;
        int last = 0;
        for (const auto& p : chain_) {
            int s = zp::sign_at(p, x);
            if (s == 0) continue;
            if (last != 0 && s != last) ++v;
            last = s;
        }
        return v;
    }

    std::vector<ZPoly> chain_;
};

inline int sturm_count(const ZPoly& p, const mpq_class& a, const mpq_class& b) {
    return SturmChain(p).count(a, b);
}

inline bool is_square_free(const ZPoly& p) {
    try {
        SturmChain c(p);
        (void)c;
        return true;
    } catch (const NonSquareFreeError&) {
        return false;
    }
}

}  // namespace rootiso
