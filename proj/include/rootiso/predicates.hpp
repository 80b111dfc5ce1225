#pragma once

#include <optional>

#include "rootiso/poly.hpp"

namespace rootiso {

// Zero: no root of P in I. One: exactly one simple real root in I.
// Unknown: no conclusion.
enum class TestOutcome { Zero, One, Unknown };

struct VarTestResult {
    TestOutcome outcome = TestOutcome::Unknown;
    SignVarRange range;
};

// Interval sign-variation test: Zero iff var range = {0}, One iff {1};
// otherwise Unknown with the range (a determined range >= 2 tells the caller
// to subdivide without escalating precision).
inline VarTestResult var_test(const CoefficientOracle& oracle, const Dyadic& a, const Dyadic& b, Precision rho) {
    SignVarRange r = sign_variations(descartes_transform(oracle, a, b, rho));
    if (r.v_min == 0 && r.v_max == 0) return {TestOutcome::Zero, r};
    if (r.v_min == 1 && r.v_max == 1) return {TestOutcome::One, r};
    return {TestOutcome::Unknown, r};
}

// Truncation-order-k variant: builds the local expansion Q~ of degree k,
// then G~ = (x+1)^k Q~(1/(x+1)) and H~ = (x+1)^(k-1) Q~'(1/(x+1)).
// var(G~) = {0} proves exclusion; var(G~) = {1} with var(H~) = {0} proves a
// single simple root (P strictly monotone on I with a sign change).
inline TestOutcome truncated_test(const CoefficientOracle& oracle, const Dyadic& a, const Dyadic& b, int k,
                                  Precision rho) {
    IntervalPoly q = truncated_local_poly(oracle, a, b, k, rho);
    SignVarRange vg = sign_variations(scale_reverse_shift1(q, rho));
    if (vg.v_min == 0 && vg.v_max == 0) return TestOutcome::Zero;
    if (vg.v_min == 1 && vg.v_max == 1) {
        SignVarRange vh = sign_variations(scale_reverse_shift1(derivative(q, rho), rho));
        if (vh.v_min == 0 && vh.v_max == 0) return TestOutcome::One;
    }
    return TestOutcome::Unknown;
}

struct ZeroOneResult {
    TestOutcome outcome = TestOutcome::Unknown;
    SignVarRange range;     // meaningful iff full_ran
    bool full_ran = false;  // the untruncated var test was evaluated
    int k_used = 0;
    bool truncated_hit = false;  // resolved by a truncated test with k < n
};

// Dispatch: run the truncated test when a truncation order is requested,
// doubling k on Unknown until the full test takes over. Never escalates rho
// itself; precision control stays with the solver.
inline ZeroOneResult zero_one_test(const CoefficientOracle& oracle, const Dyadic& a, const Dyadic& b, Precision rho,
                                   std::optional<int> k_trunc) {
    const int n = oracle.degree();
    if (k_trunc) {
        for (int k = std::min(*k_trunc, n); k < n; k *= 2) {
            TestOutcome t = truncated_test(oracle, a, b, k, rho);
            if (t != TestOutcome::Unknown) return {t, {}, false, k, true};
        }
    }
    VarTestResult v = var_test(oracle, a, b, rho);
    return {v.outcome, v.range, true, n, false};
}

// A bisection is a proper split when both children provably retain a
// nonzero sign-variation count; ranges straddling 0 classify conservatively.
inline bool proper_split_check(SignVarRange left, SignVarRange right) {
    return left.v_min >= 1 && right.v_min >= 1;
}

}  // namespace rootiso
