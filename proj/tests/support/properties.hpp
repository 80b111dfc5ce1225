#pragma once

// Property suites shared between the per-module unit tests and the
// acceptance run, which needs the aggregate generated-case count.

#include <sstream>
#include <string>

#include "rootiso/newton.hpp"
#include "rootiso/solver.hpp"
#include "support/qref.hpp"

namespace props {

struct PropertyResult {
    size_t cases = 0;
    size_t failures = 0;
    std::string first_failure;

    void fail(const std::string& what) {
        ++failures;
        if (first_failure.empty()) first_failure = what;
    }
};

using namespace rootiso;

// exact rational result of op over sampled operand points lies in the output
inline PropertyResult containment_fuzz(size_t n_cases, uint64_t seed) {
    PropertyResult res;
    RandomSource rng(seed);
    for (size_t c = 0; c < n_cases; ++c) {
        const Enclosure x = qref::random_enclosure(rng, 20, 10);
        const IvOp op = static_cast<IvOp>(rng.uniform(0, 3));
        Enclosure y = qref::random_enclosure(rng, 20, 10);
        if (op == IvOp::Div) {
            while (y.contains_zero()) y = qref::random_enclosure(rng, 20, 10);
        }
        const Precision rho{static_cast<int>(rng.uniform(8, 96))};
        Enclosure out;
        try {
            out = iv_arith(op, x, y, rho);
        } catch (const Error& e) {
            res.fail(std::string("iv_arith threw: ") + e.what());
            ++res.cases;
            continue;
        }
        mpq_class xs[4] = {to_mpq(x.lo()), to_mpq(x.hi()), qref::sample_inside(x, rng), qref::sample_inside(x, rng)};
        mpq_class ys[4] = {to_mpq(y.lo()), to_mpq(y.hi()), qref::sample_inside(y, rng), qref::sample_inside(y, rng)};
        bool ok = true;
        for (const auto& xv : xs) {
            for (const auto& yv : ys) {
                mpq_class exact;
                switch (op) {
                    case IvOp::Add: exact = xv + yv; break;
                    case IvOp::Sub: exact = xv - yv; break;
                    case IvOp::Mul: exact = xv * yv; break;
                    case IvOp::Div: exact = xv / yv; break;
                }
                if (!(to_mpq(out.lo()) <= exact && exact <= to_mpq(out.hi()))) ok = false;
            }
        }
        if (!ok) {
            std::ostringstream ss;
            ss << "containment violated for op " << static_cast<int>(op) << " at rho " << rho.bits;
            res.fail(ss.str());
        }
        ++res.cases;
    }
    return res;
}

// the enclosure at 2*rho+1 is contained in the one at rho
inline PropertyResult rounding_monotonicity(size_t n_cases, uint64_t seed) {
    PropertyResult res;
    RandomSource rng(seed);
    for (size_t c = 0; c < n_cases; ++c) {
        const Enclosure x = qref::random_enclosure(rng, 30, 8);
        Enclosure y = qref::random_enclosure(rng, 30, 8);
        const IvOp op = static_cast<IvOp>(rng.uniform(0, 3));
        if (op == IvOp::Div) {
            while (y.contains_zero()) y = qref::random_enclosure(rng, 30, 8);
        }
        const Precision rho{static_cast<int>(rng.uniform(6, 64))};
        Enclosure coarse = iv_arith(op, x, y, rho);
        Enclosure fine = iv_arith(op, x, y, rho.next());
        if (!coarse.contains(fine)) res.fail("higher precision widened the result");
        ++res.cases;
    }
    return res;
}

inline PropertyResult dyadic_roundtrip(size_t n_cases, uint64_t seed) {
    PropertyResult res;
    RandomSource rng(seed);
    for (size_t c = 0; c < n_cases; ++c) {
        int64_t m = rng.uniform(-(int64_t{1} << 40), int64_t{1} << 40);
        int64_t e = rng.uniform(-50, 50);
        Dyadic d(mpz_class(static_cast<long>(m)), e);
        Dyadic again(d.mantissa(), d.exponent());
        if (!(again == d)) res.fail("normalization not idempotent");
        mpq_class exact = mpq_class(static_cast<long>(m));
        if (e >= 0) exact <<= static_cast<unsigned long>(e);
        else exact /= mpq_class(mpz_class(1) << static_cast<unsigned long>(-e));
        if (to_mpq(d) != exact) res.fail("dyadic value mismatch");
        Dyadic d2 = qref::random_dyadic(rng, 40, 50);
        int want = ::cmp(to_mpq(d), to_mpq(d2));
        int got = cmp(d, d2);
        if ((want < 0) != (got < 0) || (want == 0) != (got == 0)) res.fail("ordering disagrees with rational value");
        res.cases += 2;
    }
    return res;
}

// m_I <= v_I and m_I == v_I (mod 2) for known-root products
inline PropertyResult descartes_rule(size_t n_cases, uint64_t seed) {
    PropertyResult res;
    RandomSource rng(seed);
    for (size_t c = 0; c < n_cases; ++c) {
        const int k = static_cast<int>(rng.uniform(1, 10));
        std::vector<mpq_class> roots;
        for (int i = 0; i < k; ++i)
            roots.push_back(to_mpq(Dyadic(mpz_class(static_cast<long>(rng.uniform(-64, 64))), -4)));
        qref::QPoly p = qref::from_roots(roots);
        mpq_class a, b;
        while (true) {
            a = to_mpq(qref::random_dyadic(rng, 7, 2));
            b = to_mpq(qref::random_dyadic(rng, 7, 2));
            if (a > b) std::swap(a, b);
            if (a == b) continue;
            bool endpoint_root = false;
            for (const auto& r : roots) endpoint_root = endpoint_root || r == a || r == b;
            if (!endpoint_root) break;
        }
        int m_count = 0;
        for (const auto& r : roots)
            if (a < r && r < b) ++m_count;
        int v = qref::var_count(qref::descartes(p, a, b));
        if (!(m_count <= v && (v - m_count) % 2 == 0)) res.fail("Descartes rule violated");
        ++res.cases;
    }
    return res;
}

// var(I1) + var(I2) <= var(I) for disjoint subintervals
inline PropertyResult sign_diminishing(size_t n_cases, uint64_t seed) {
    PropertyResult res;
    RandomSource rng(seed);
    for (size_t c = 0; c < n_cases; ++c) {
        ZPoly zp = qref::random_zpoly(rng, static_cast<int>(rng.uniform(2, 9)), 50);
        qref::QPoly p = qref::from_z(zp);
        mpq_class a(static_cast<long>(rng.uniform(-8, 0)));
        mpq_class b = a + 1 + static_cast<long>(rng.uniform(1, 8));
        mpq_class m1 = a + (b - a) / 3;
        mpq_class m2 = a + (b - a) * 2 / 3;
        int v = qref::var_count(qref::descartes(p, a, b));
        int v1 = qref::var_count(qref::descartes(p, a, m1));
        int v2 = qref::var_count(qref::descartes(p, m2, b));
        if (v1 + v2 > v) res.fail("sign variations not diminishing");
        ++res.cases;
    }
    return res;
}

// exact rational transform results are coefficient-wise inside the outputs
inline PropertyResult transform_containment(size_t n_cases, uint64_t seed) {
    PropertyResult res;
    RandomSource rng(seed);
    for (size_t c = 0; c < n_cases; ++c) {
        const int deg = static_cast<int>(rng.uniform(1, 10));
        ZPoly zp = qref::random_zpoly(rng, deg, 1000);
        qref::QPoly qp = qref::from_z(zp);
        std::vector<Dyadic> dy;
        for (const auto& z : zp) dy.emplace_back(z, 0);
        DyadicOracle oracle(dy);
        IntervalPoly f = IntervalPoly::from_points(dy);
        const Precision rho{static_cast<int>(rng.uniform(32, 96))};
        const Dyadic cd = qref::random_dyadic(rng, 8, 4);
        const mpq_class cq = to_mpq(cd);

        if (!qref::poly_encloses(taylor_shift(f, cd, rho), qref::taylor_shift(qp, cq))) res.fail("taylor_shift");
        ++res.cases;
        Dyadic a = qref::random_dyadic(rng, 8, 3);
        Dyadic w = qref::random_dyadic(rng, 8, 3).abs() + Dyadic(1);
        Dyadic b = a + w;
        if (!qref::poly_encloses(scale_arg(f, w, rho), qref::scale_arg(qp, to_mpq(w)))) res.fail("scale_arg");
        ++res.cases;
        if (!qref::poly_encloses(scale_reverse_shift1(f, rho), qref::reverse_shift1(qp)))
            res.fail("scale_reverse_shift1");
        ++res.cases;
        if (!qref::poly_encloses(descartes_transform(oracle, a, b, rho), qref::descartes(qp, to_mpq(a), to_mpq(b))))
            res.fail("descartes_transform");
        ++res.cases;
        if (!qref::poly_encloses(derivative(f, rho), qref::derivative(qp))) res.fail("derivative");
        ++res.cases;
        if (!qref::encloses(poly_eval(f, cd, rho), qref::eval(qp, cq))) res.fail("poly_eval");
        ++res.cases;
        Enclosure X(a, b);
        Enclosure ev = poly_eval_iv(f, X, rho);
        for (int s = 0; s <= 4; ++s) {
            mpq_class xv = to_mpq(a) + (to_mpq(b) - to_mpq(a)) * s / 4;
            if (!qref::encloses(ev, qref::eval(qp, xv))) res.fail("poly_eval_iv");
        }
        ++res.cases;
    }
    return res;
}

// DP range equals the exhaustive min/max over admissible sign selections,
// and sampled exact selections land inside
inline PropertyResult svr_soundness(size_t n_cases, uint64_t seed) {
    PropertyResult res;
    RandomSource rng(seed);
    for (size_t c = 0; c < n_cases; ++c) {
        const int deg = static_cast<int>(rng.uniform(1, 6));
        std::vector<Enclosure> coeffs;
        for (int i = 0; i <= deg; ++i) {
            // mix: points, zero-straddling, definite
            switch (rng.uniform(0, 2)) {
                case 0: coeffs.push_back(Enclosure::point(qref::random_dyadic(rng, 6, 2))); break;
                default: coeffs.push_back(qref::random_enclosure(rng, 6, 2)); break;
            }
        }
        IntervalPoly f{coeffs};
        SignVarRange r = sign_variations(f);
        // exhaustive enumeration over admissible sign patterns
        int best_min = 1 << 20, best_max = -1;
        std::vector<std::vector<int>> allowed(static_cast<size_t>(deg) + 1);
        for (int i = 0; i <= deg; ++i) {
            const Enclosure& e = f[i];
            if (e.lo().sign() < 0) allowed[static_cast<size_t>(i)].push_back(-1);
            if (e.contains_zero()) allowed[static_cast<size_t>(i)].push_back(0);
            if (e.hi().sign() > 0) allowed[static_cast<size_t>(i)].push_back(1);
        }
        std::vector<size_t> idx(static_cast<size_t>(deg) + 1, 0);
        while (true) {
            int v = 0, last = 0;
            for (int i = 0; i <= deg; ++i) {
                int s = allowed[static_cast<size_t>(i)][idx[static_cast<size_t>(i)]];
                if (s == 0) continue;
                if (last != 0 && s != last) ++v;
                last = s;
            }
            best_min = std::min(best_min, v);
            best_max = std::max(best_max, v);
            size_t p = 0;
            while (p < idx.size() && ++idx[p] == allowed[p].size()) {
                idx[p] = 0;
                ++p;
            }
            if (p == idx.size()) break;
        }
        if (best_min != r.v_min || best_max != r.v_max) res.fail("sign-variation range differs from enumeration");
        ++res.cases;
        // sampled exact selections
        for (int s = 0; s < 100; ++s) {
            qref::QPoly g;
            for (int i = 0; i <= deg; ++i) g.push_back(qref::sample_inside(f[i], rng));
            int v = qref::var_count(g);
            if (v < r.v_min || v > r.v_max) res.fail("sampled selection outside range");
            ++res.cases;
        }
    }
    return res;
}

// Zero outcomes exclude all known roots, One outcomes hold exactly one
inline PropertyResult predicate_soundness(size_t n_cases, uint64_t seed) {
    PropertyResult res;
    RandomSource rng(seed);
    for (size_t c = 0; c < n_cases; ++c) {
        const int k = static_cast<int>(rng.uniform(1, 12));
        std::vector<mpq_class> roots;
        std::vector<mpq_class> qcoeffs{1};
        qref::QPoly qp{1};
        for (int i = 0; i < k; ++i) {
            long num = static_cast<long>(rng.uniform(-40, 40));
            long den = static_cast<long>(rng.uniform(1, 8));
            mpq_class r(num, den);
            r.canonicalize();
            bool dup = false;
            for (const auto& existing : roots) dup = dup || existing == r;
            if (dup) continue;
            roots.push_back(r);
            qp = qref::mul(qp, qref::QPoly{-r, 1});
        }
        RationalOracle oracle(qp);
        Dyadic a = qref::random_dyadic(rng, 7, 2);
        Dyadic b = a + qref::random_dyadic(rng, 5, 2).abs() + Dyadic(1);
        bool endpoint_root = false;
        for (const auto& r : roots) endpoint_root = endpoint_root || to_mpq(a) == r || to_mpq(b) == r;
        if (endpoint_root) continue;
        int inside = 0;
        for (const auto& r : roots)
            if (to_mpq(a) < r && r < to_mpq(b)) ++inside;
        VarTestResult v = var_test(oracle, a, b, Precision{63});
        if (v.outcome == TestOutcome::Zero && inside != 0) res.fail("var_test Zero missed roots");
        if (v.outcome == TestOutcome::One && inside != 1) res.fail("var_test One miscounted");
        ++res.cases;
        ZeroOneResult z = zero_one_test(oracle, a, b, Precision{63}, std::nullopt);
        if (z.outcome == TestOutcome::Zero && inside != 0) res.fail("zero_one Zero missed roots");
        if (z.outcome == TestOutcome::One && inside != 1) res.fail("zero_one One miscounted");
        ++res.cases;
        // monotone refinement: a resolved outcome persists at 2*rho+1
        if (z.outcome != TestOutcome::Unknown) {
            ZeroOneResult z2 = zero_one_test(oracle, a, b, Precision{63}.next(), std::nullopt);
            if (z2.outcome != z.outcome) res.fail("outcome flipped under refinement");
            ++res.cases;
        }
    }
    return res;
}

// every Newton success contains all roots in I and obeys the width contract
inline PropertyResult newton_soundness(size_t n_cases, uint64_t seed, size_t* successes_out = nullptr) {
    PropertyResult res;
    RandomSource rng(seed);
    size_t successes = 0;
    for (size_t c = 0; c < n_cases; ++c) {
        const Dyadic center(mpz_class(static_cast<long>(rng.uniform(1, 255))), -8);  // in (0, 1)
        const int j = static_cast<int>(rng.uniform(16, 40));
        const Dyadic sep = Dyadic::pow2(-j);
        const Dyadic r1 = center, r2 = center + sep;
        // (x - r1)(x - r2), exact dyadic coefficients
        std::vector<Dyadic> coeffs{r1 * r2, -(r1 + r2), Dyadic(1)};
        DyadicOracle oracle(coeffs);
        RandomSource solver_rng(seed ^ (c * 0x9e3779b97f4a7c15ULL));
        NewtonContext ctx{Precision{63}, std::nullopt, 2, default_lambda(2), 1 << 20};
        const int64_t log2n = rng.uniform(0, 1) ? 2 : 4;
        auto out = newton_test(oracle, Dyadic(0), Dyadic(1), log2n, ctx, solver_rng);
        ++res.cases;
        if (!out) continue;
        ++successes;
        if (!(out->lo < r1 && r2 < out->hi)) res.fail("Newton success lost a root");
        const Dyadic width = out->hi - out->lo;
        const Dyadic ratio_num = width.mul_pow2(log2n);  // N * w(I'), w(I) = 1
        if (!(Dyadic(1).mul_pow2(-3) <= ratio_num && ratio_num <= Dyadic(1))) res.fail("width ratio out of [1/8,1]");
    }
    if (successes_out) *successes_out = successes;
    return res;
}

// nonzero certificate, grid membership and reproducibility of point picks
inline PropertyResult point_pick_properties(size_t n_cases, uint64_t seed) {
    PropertyResult res;
    RandomSource rng(seed);
    for (size_t c = 0; c < n_cases; ++c) {
        const int deg = static_cast<int>(rng.uniform(1, 8));
        ZPoly zp = qref::random_zpoly(rng, deg, 60);
        qref::QPoly qp = qref::from_z(zp);
        std::vector<mpq_class> qc;
        for (const auto& z : zp) qc.emplace_back(z);
        RationalOracle oracle(qc);
        const Dyadic m = qref::random_dyadic(rng, 6, 2);
        const Dyadic delta = Dyadic::pow2(static_cast<int64_t>(rng.uniform(-8, -2)));
        const uint64_t pick_seed = rng.next();
        RandomSource r1(pick_seed), r2(pick_seed);
        PointPick p1 = find_pseudo_admissible(oracle, m, delta, default_lambda(deg), r1);
        PointPick p2 = find_pseudo_admissible(oracle, m, delta, default_lambda(deg), r2);
        if (!(p1.point == p2.point)) res.fail("pseudo-admissible pick not reproducible");
        ++res.cases;
        if (qref::eval(qp, to_mpq(p1.point)) == 0) res.fail("picked point is a root");
        ++res.cases;
        if ((p1.point - m).abs() > delta) res.fail("picked point outside [m-delta, m+delta]");
        ++res.cases;
    }
    return res;
}

inline bool results_equal(const IsolationResult& x, const IsolationResult& y) {
    if (x.intervals.size() != y.intervals.size() || x.points.size() != y.points.size()) return false;
    for (size_t i = 0; i < x.intervals.size(); ++i) {
        if (!(x.intervals[i].a == y.intervals[i].a && x.intervals[i].b == y.intervals[i].b)) return false;
    }
    for (size_t i = 0; i < x.points.size(); ++i) {
        if (!(x.points[i] == y.points[i])) return false;
    }
    return x.stats.tree_nodes == y.stats.tree_nodes && x.stats.bisections == y.stats.bisections &&
           x.stats.newton_successes == y.stats.newton_successes;
}

// identical (input, config, seed) gives identical results and statistics
inline PropertyResult solver_determinism(size_t n_cases, uint64_t seed) {
    PropertyResult res;
    RandomSource rng(seed);
    for (size_t c = 0; c < n_cases; ++c) {
        ZPoly zp = qref::random_zpoly(rng, static_cast<int>(rng.uniform(2, 12)), 200);
        std::vector<mpq_class> qc;
        for (const auto& z : zp) qc.emplace_back(z);
        RationalOracle oracle(qc);
        SolveConfig cfg;
        cfg.seed = rng.next();
        cfg.mode = rng.uniform(0, 1) ? SolveMode::ANewDsc : SolveMode::ADsc;
        try {
            IsolationResult r1 = isolate(oracle, std::nullopt, cfg);
            IsolationResult r2 = isolate(oracle, std::nullopt, cfg);
            if (!results_equal(r1, r2)) res.fail("solver output differs between identical runs");
        } catch (const PrecisionCapError&) {
            // non-square-free draw; determinism of the error path is fine
        }
        ++res.cases;
    }
    return res;
}

}  // namespace props
