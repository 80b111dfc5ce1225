#pragma once

#include <cstdint>
#include <random>

#include "rootiso/poly.hpp"

namespace rootiso {

// Grid m + i*spacing for i = -ceil(count/2) ... ceil(count/2); all grid
// points are dyadic.
struct Multipoint {
    Dyadic center;
    Dyadic spacing;  // power of two
    int64_t count;
};

// Deterministic seeded stream; identical seed gives an identical draw
// sequence across runs and platforms (bounded draws use rejection, not
// std::uniform_int_distribution).
class RandomSource {
  public:
    explicit RandomSource(uint64_t seed) : gen_(seed) {}

    uint64_t next() { return gen_(); }

    int64_t uniform(int64_t lo, int64_t hi) {
        const uint64_t range = static_cast<uint64_t>(hi - lo) + 1;
        if (range == 0) return static_cast<int64_t>(next());  // full 64-bit span
        const uint64_t limit = UINT64_MAX - UINT64_MAX % range;
        uint64_t draw = 0;
        do {
            draw = next();
        } while (draw >= limit);
        return lo + static_cast<int64_t>(draw % range);
    }

  private:
    std::mt19937_64 gen_;
};

struct PointPick {
    Dyadic point;
    Precision rho_used{};
};

namespace detail {

// largest power of two 2^k with count * 2^k <= 2*delta
inline Dyadic grid_spacing(const Dyadic& delta, int64_t count) {
    if (delta.sign() <= 0) throw Error("perturbation radius must be positive");
    Dyadic two_delta = delta.mul_pow2(1);
    int64_t k = two_delta.floor_log2() - (64 - __builtin_clzll(static_cast<unsigned long long>(count)));
    while (!(Dyadic(count).mul_pow2(k + 1) > two_delta)) ++k;
    while (Dyadic(count).mul_pow2(k) > two_delta) --k;
    return Dyadic::pow2(k);
}

}  // namespace detail

// Deterministic admissible-point search: evaluate P on the whole grid at
// doubling working precision, pick the maximizer m_i0 of |v~_i| and accept
// once |v~_i0| exceeds four times the worst evaluation error, which
// certifies |P(m*)| >= 1/4 * max_i |P(m_i)|.
inline PointPick find_admissible(const CoefficientOracle& oracle, const Multipoint& mp, int rho_cap = 1 << 20) {
    const int64_t half = (mp.count + 1) / 2;
    for (int rho_bits = 2;; rho_bits *= 2) {
        if (rho_bits > rho_cap) throw PrecisionCapError("admissible-point search exceeded the precision cap");
        const Precision rho{rho_bits};
        IntervalPoly f = fetch_poly(oracle, rho);
        Dyadic best_mid;
        Dyadic best_point;
        Dyadic max_err(0);
        bool have = false;
        for (int64_t i = -half; i <= half; ++i) {
            Dyadic m = mp.center + Dyadic(i) * mp.spacing;
            Enclosure e = poly_eval(f, m, rho);
            Dyadic mid_abs = (e.lo() + e.hi()).abs();  // 2*|mid|
            Dyadic err = e.width();                    // 2*halfwidth
            if (max_err < err) max_err = err;
            if (!have || best_mid < mid_abs) {
                best_mid = mid_abs;
                best_point = m;
                have = true;
            }
        }
        if (have && best_mid > max_err.mul_pow2(2)) return {best_point, rho};
    }
}

// Randomized variant: sample one grid point per precision level from the
// 2^lambda-refined grid spanning [m - delta, m + delta]; accept once the
// midpoint estimate dominates the evaluation error fourfold, certifying
// P(m') != 0. One fresh draw per iteration.
inline PointPick find_pseudo_admissible(const CoefficientOracle& oracle, const Dyadic& m, const Dyadic& delta,
                                        int lambda, RandomSource& rng, int rho_cap = 1 << 20) {
    const int64_t n = oracle.degree();
    const int64_t count = n << lambda;
    const Dyadic eps = detail::grid_spacing(delta, count);
    const int64_t half = count / 2;  // count = 2^lambda * n is even
    for (Precision rho = Precision::initial();; rho = rho.next()) {
        if (rho.bits > rho_cap)
            throw PrecisionCapError("pseudo-admissible search exceeded the precision cap (input may not be square-free)");
        const int64_t j = rng.uniform(-half, half);
        const Dyadic mj = m + Dyadic(j) * eps;
        Enclosure e = poly_eval(fetch_poly(oracle, rho), mj, rho);
        Dyadic mid_abs = (e.lo() + e.hi()).abs();  // 2*|mid|
        Dyadic err = e.width();                    // 2*halfwidth
        if (mid_abs > err.mul_pow2(2)) return {mj, rho};
    }
}

inline int default_lambda(int degree) {
    int l = 0;
    while ((1 << l) < degree) ++l;
    return std::max(2, l);
}

}  // namespace rootiso
