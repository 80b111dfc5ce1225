#pragma once

#include <cstdlib>
#include <optional>

#include "rootiso/points.hpp"
#include "rootiso/predicates.hpp"

namespace rootiso {

// On success the interval (lo, hi) is a subset of the input interval I with
// N_I * w(I') / w(I) in [1/8, 1] that contains every root of P in I;
// k_guess is the rounded cluster-multiplicity estimate.
struct NewtonSuccess {
    Dyadic lo, hi;
    int k_guess = 1;
    bool boundary = false;
};

struct NewtonScratch {
    int pairs_discarded = 0;
    int max_rho_bits = 0;
};

struct NewtonContext {
    Precision rho;
    std::optional<int> k_trunc;  // truncation order for the flank tests
    int v_max_hint = 0;          // var upper bound of I (0 = unavailable)
    int lambda = 2;
    int rho_cap = 1 << 20;
};

namespace detail {

inline bool flank_is_zero(const CoefficientOracle& oracle, const Dyadic& a, const Dyadic& b,
                          const NewtonContext& ctx) {
    if (a == b) return true;  // empty flank, vacuously root-free
    return zero_one_test(oracle, a, b, ctx.rho, ctx.k_trunc).outcome == TestOutcome::Zero;
}

inline int round_abs_to_int(const Dyadic& v, int n) {
    // nearest integer to |v|, clamped to [1, n]
    if (!v.is_zero() && v.floor_log2() > 40) return n;
    Dyadic av = v.abs() + Dyadic(1).mul_pow2(-1);
    if (av.exponent() >= 0) {
        mpz_class m;
        mpz_mul_2exp(m.get_mpz_t(), av.mantissa().get_mpz_t(), static_cast<mp_bitcnt_t>(av.exponent()));
        if (m > n) return n;
        long r = m.get_si();
        return r < 1 ? 1 : static_cast<int>(r);
    }
    mpz_class m;
    mpz_fdiv_q_2exp(m.get_mpz_t(), av.mantissa().get_mpz_t(), static_cast<mp_bitcnt_t>(-av.exponent()));
    if (m > n) return n;
    long r = m.get_si();
    return r < 1 ? 1 : static_cast<int>(r);
}

}  // namespace detail

// Trial-and-error quadratic-convergence step: estimate a root-cluster
// location from Newton correction terms at three admissible sample points,
// validate a candidate cell of width ~ w(I)/N_I via exclusion tests on both
// flanks, and fall back to a boundary test for clusters hugging an endpoint.
// Inconclusive evaluations discard the pair; precision is never escalated
// here (the solver's doubling loop retries the whole test if needed).
inline std::optional<NewtonSuccess> newton_test(const CoefficientOracle& oracle, const Dyadic& a, const Dyadic& b,
                                                int64_t log2_n_i, const NewtonContext& ctx, RandomSource& rng,
                                                NewtonScratch* scratch = nullptr) {
    const int n = oracle.degree();
    const Dyadic w = b - a;
    const Precision rho = ctx.rho;
    NewtonScratch local;
    NewtonScratch& sc = scratch ? *scratch : local;
    auto note_rho = [&](Precision r) {
        if (r.bits > sc.max_rho_bits) sc.max_rho_bits = r.bits;
    };

    IntervalPoly f = fetch_poly(oracle, rho);
    IntervalPoly fd = derivative(f, rho);

    // sample points xi_j = a + j*w/4 with pseudo-admissible perturbation w/16
    Dyadic xi[3];
    Enclosure corr[3];  // Newton correction terms P/P'
    bool usable[3] = {false, false, false};
    const Dyadic quarter = w.mul_pow2(-2);
    for (int j = 0; j < 3; ++j) {
        Dyadic base = a + Dyadic(j + 1) * quarter;
        PointPick pick = find_pseudo_admissible(oracle, base, w.mul_pow2(-4), ctx.lambda, rng, ctx.rho_cap);
        note_rho(pick.rho_used);
        xi[j] = pick.point;
        Enclosure num = poly_eval(f, xi[j], rho);
        Enclosure den = poly_eval(fd, xi[j], rho);
        if (den.contains_zero()) continue;
        corr[j] = iv_div(num, den, rho);
        usable[j] = true;
    }

    const Dyadic cell = w.mul_pow2(-(log2_n_i + 2));       // w / (4 N_I)
    const Dyadic lam_tol = w.mul_pow2(-(log2_n_i + 5));    // w / (32 N_I)
    const Dyadic point_delta = lam_tol;                    // perturbation for cell endpoints

    for (int i = 0; i < 3; ++i) {
        for (int j = i + 1; j < 3; ++j) {
            if (!usable[i] || !usable[j]) {
                ++sc.pairs_discarded;
                continue;
            }
            Enclosure denom = iv_sub(corr[i], corr[j], rho);
            if (denom.contains_zero()) {
                ++sc.pairs_discarded;
                continue;
            }
            Enclosure k_est = iv_div(Enclosure::point(xi[j] - xi[i]), denom, rho);
            Enclosure lam = iv_add(Enclosure::point(xi[i]), iv_mul(k_est, corr[i], rho), rho);
            if (!(lam.width() <= lam_tol.mul_pow2(1))) {  // halfwidth <= w/(32 N_I)
                ++sc.pairs_discarded;
                continue;
            }
            Dyadic lam_mid = lam.mid();
            if (lam_mid < a || lam_mid > b) {
                ++sc.pairs_discarded;
                continue;
            }
            // cell index: floor((lam - a) * 4N / w), in [0, 4N]
            Dyadic rel = lam_mid - a;
            mpz_class ell;
            {
                // floor( (rel / w) * 2^(log2N + 2) ) via exact integer division
                Dyadic num = rel.mul_pow2(log2_n_i + 2);
                int64_t d = num.exponent() - w.exponent();
                mpz_class nm = num.mantissa();
                if (d >= 0) {
                    mpz_mul_2exp(nm.get_mpz_t(), nm.get_mpz_t(), static_cast<mp_bitcnt_t>(d));
                    mpz_fdiv_q(ell.get_mpz_t(), nm.get_mpz_t(), w.mantissa().get_mpz_t());
                } else {
                    mpz_class dm = w.mantissa();
                    mpz_mul_2exp(dm.get_mpz_t(), dm.get_mpz_t(), static_cast<mp_bitcnt_t>(-d));
                    mpz_fdiv_q(ell.get_mpz_t(), nm.get_mpz_t(), dm.get_mpz_t());
                }
            }
            mpz_class four_n = 1;
            mpz_mul_2exp(four_n.get_mpz_t(), four_n.get_mpz_t(), static_cast<mp_bitcnt_t>(log2_n_i + 2));
            if (ell < 0) ell = 0;
            if (ell > four_n) ell = four_n;

            Dyadic cand_a = (ell <= 1) ? a : a + Dyadic(mpz_class(ell - 1), 0) * cell;
            Dyadic cand_b = (ell + 2 >= four_n) ? b : a + Dyadic(mpz_class(ell + 2), 0) * cell;
            Dyadic a_star = cand_a;
            Dyadic b_star = cand_b;
            if (!(cand_a == a)) {
                PointPick p = find_pseudo_admissible(oracle, cand_a, point_delta, ctx.lambda, rng, ctx.rho_cap);
                note_rho(p.rho_used);
                a_star = p.point;
            }
            if (!(cand_b == b)) {
                PointPick p = find_pseudo_admissible(oracle, cand_b, point_delta, ctx.lambda, rng, ctx.rho_cap);
                note_rho(p.rho_used);
                b_star = p.point;
            }
            if (detail::flank_is_zero(oracle, a, a_star, ctx) && detail::flank_is_zero(oracle, b_star, b, ctx)) {
                int k_guess = detail::round_abs_to_int(k_est.mid(), n);
                if (ctx.v_max_hint > 0 && k_guess > ctx.v_max_hint) k_guess = ctx.v_max_hint;
                return NewtonSuccess{a_star, b_star, k_guess, false};
            }
            ++sc.pairs_discarded;
        }
    }

    // boundary test: does one end-sliver of width ~ w/(2 N_I) hold all roots?
    const Dyadic offset = w.mul_pow2(-(log2_n_i + 1));
    int k_boundary = ctx.v_max_hint > 0 ? std::min(ctx.v_max_hint, n) : 2;
    {
        PointPick p = find_pseudo_admissible(oracle, a + offset, point_delta, ctx.lambda, rng, ctx.rho_cap);
        note_rho(p.rho_used);
        if (detail::flank_is_zero(oracle, p.point, b, ctx)) return NewtonSuccess{a, p.point, k_boundary, true};
    }
    {
        PointPick p = find_pseudo_admissible(oracle, b - offset, point_delta, ctx.lambda, rng, ctx.rho_cap);
        note_rho(p.rho_used);
        if (detail::flank_is_zero(oracle, a, p.point, ctx)) return NewtonSuccess{p.point, b, k_boundary, true};
    }
    return std::nullopt;
}

}  // namespace rootiso
