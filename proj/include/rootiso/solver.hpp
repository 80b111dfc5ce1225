#pragma once

#include <algorithm>
#include <chrono>
#include <optional>
#include <utility>
#include <vector>

#include "rootiso/newton.hpp"

namespace rootiso {

enum class SolveMode { Classic, ADsc, ANewDsc };
enum class AdmissibleVariant { Pseudo, Deterministic };

struct SolveConfig {
    SolveMode mode = SolveMode::ANewDsc;
    uint64_t seed = 0;
    int initial_rho = 63;
    int rho_cap = 1 << 20;
    int newton_delay = -1;  // -1: ceil(log2 n)
    bool truncation = true;
    AdmissibleVariant admissible = AdmissibleVariant::Pseudo;
    std::optional<size_t> node_cap;
    std::optional<double> time_budget_s;
    bool collect_trace = false;
};

struct SolveStats {
    size_t tree_nodes = 0;
    size_t newton_attempts = 0;
    size_t newton_successes = 0;
    size_t boundary_successes = 0;  // subset of newton_successes
    size_t bisections = 0;
    int max_precision_bits = 0;
    size_t max_var_chain = 0;
    size_t truncation_hits = 0;
    double wall_time_s = 0.0;
    bool capped = false;
};

struct RootInterval {
    Dyadic a, b;
};

struct TraceEvent {
    enum class Kind { Discard, Report, ReportPoint, Escalate, NewtonAttempt, NewtonSuccess, Bisect };
    Kind kind;
    Dyadic a, b;
    int64_t log2_n = 2;
    int rho_bits = 0;
    SignVarRange range{-1, -1};
    int k = 0;
    bool boundary = false;
};

struct IsolationResult {
    std::vector<RootInterval> intervals;
    std::vector<Dyadic> points;  // exact roots hit by classic-mode midpoints
    SolveStats stats;
    bool complete = true;
    std::vector<TraceEvent> trace;
};

namespace detail {

inline int ceil_log2_int(int n) {
    int l = 0;
    while ((1 << l) < n) ++l;
    return l;
}

inline void certify_nonzero(const CoefficientOracle& oracle, const Dyadic& x, int start_rho, int rho_cap) {
    for (Precision rho{start_rho};; rho = rho.next()) {
        if (rho.bits > rho_cap)
            throw PrecisionCapError("cannot certify region endpoint " + x.str() + " as a non-root", true);
        if (!poly_eval(fetch_poly(oracle, rho), x, rho).contains_zero()) return;
    }
}

struct ActiveNode {
    Dyadic a, b;
    int64_t log2_n = 2;  // N_I = 2^(2^l), stored as log2(N_I)
    Precision rho{63};
    std::optional<int> k_trunc;
    int64_t d_proper = 0;
    SignVarRange parent_range{-1, -1};
    size_t parent_chain = 0;
    std::optional<ZeroOneResult> eval;  // cached predicate result at (rho, k_trunc)
};

inline SignVarRange decided_range(const ZeroOneResult& r) {
    if (r.outcome == TestOutcome::Zero) return {0, 0};
    if (r.outcome == TestOutcome::One) return {1, 1};
    return r.range;
}

class Engine {
  public:
    Engine(const CoefficientOracle& oracle, const SolveConfig& cfg)
        : oracle_(oracle), cfg_(cfg), rng_(cfg.seed), n_(oracle.degree()) {
        if (n_ < 1) throw DegenerateInputError("degree must be at least 1");
        delay_ = cfg.newton_delay >= 0 ? cfg.newton_delay : ceil_log2_int(n_);
        lambda_ = default_lambda(n_);
    }

    IsolationResult run(std::optional<std::pair<Dyadic, Dyadic>> region) {
        const auto t0 = std::chrono::steady_clock::now();
        Dyadic a0, b0;
        if (region) {
            a0 = region->first;
            b0 = region->second;
            if (!(a0 < b0)) throw Error("region endpoints must satisfy a < b");
            certify_nonzero(oracle_, a0, cfg_.initial_rho, cfg_.rho_cap);
            certify_nonzero(oracle_, b0, cfg_.initial_rho, cfg_.rho_cap);
        } else {
            Dyadic bound = cauchy_root_bound(oracle_, cfg_.rho_cap);
            a0 = -bound;
            b0 = bound;
        }

        std::vector<ActiveNode> stack;
        ActiveNode root;
        root.a = a0;
        root.b = b0;
        root.rho = Precision{cfg_.initial_rho};
        stack.push_back(std::move(root));
        res_.stats.tree_nodes = 1;
        note_rho(Precision{cfg_.initial_rho});

        while (!stack.empty()) {
            if (budget_exhausted(t0)) {
                res_.stats.capped = true;
                res_.complete = false;
                break;
            }
            ActiveNode node = std::move(stack.back());
            stack.pop_back();
            process(std::move(node), stack);
        }

        std::sort(res_.intervals.begin(), res_.intervals.end(),
                  [](const RootInterval& x, const RootInterval& y) { return x.a < y.a; });
        std::sort(res_.points.begin(), res_.points.end(), [](const Dyadic& x, const Dyadic& y) { return x < y; });
        res_.stats.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return std::move(res_);
    }

  private:
    bool budget_exhausted(std::chrono::steady_clock::time_point t0) const {
        if (cfg_.node_cap && res_.stats.tree_nodes >= *cfg_.node_cap) return true;
        if (cfg_.time_budget_s) {
            double el = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            if (el >= *cfg_.time_budget_s) return true;
        }
        return false;
    }

    void note_rho(Precision rho) {
        if (rho.bits > res_.stats.max_precision_bits) res_.stats.max_precision_bits = rho.bits;
    }

    ZeroOneResult evaluate(const ActiveNode& node) {
        ZeroOneResult r = zero_one_test(oracle_, node.a, node.b, node.rho,
                                        cfg_.truncation ? node.k_trunc : std::nullopt);
        note_rho(node.rho);
        if (r.truncated_hit) ++res_.stats.truncation_hits;
        return r;
    }

    size_t chain_len(const ActiveNode& node, SignVarRange decided) {
        size_t len = 1;
        if (node.parent_range.v_min >= 0 && decided == node.parent_range) len = node.parent_chain + 1;
        if (len > res_.stats.max_var_chain) res_.stats.max_var_chain = len;
        return len;
    }

    void trace(TraceEvent ev) {
        if (cfg_.collect_trace) res_.trace.push_back(std::move(ev));
    }

    // Consume a child whose predicate has already been evaluated: discard on
    // Zero, report on One, push otherwise.
    void consume_or_push(ActiveNode&& child, std::vector<ActiveNode>& stack) {
        const ZeroOneResult& ev = *child.eval;
        if (ev.outcome == TestOutcome::Zero) {
            chain_len(child, {0, 0});
            trace({TraceEvent::Kind::Discard, child.a, child.b, child.log2_n, child.rho.bits, decided_range(ev)});
            return;
        }
        if (ev.outcome == TestOutcome::One) {
            chain_len(child, {1, 1});
            trace({TraceEvent::Kind::Report, child.a, child.b, child.log2_n, child.rho.bits, decided_range(ev)});
            res_.intervals.push_back({child.a, child.b});
            return;
        }
        stack.push_back(std::move(child));
    }

    void process(ActiveNode node, std::vector<ActiveNode>& stack) {
        while (true) {
            if (!node.eval) node.eval = evaluate(node);
            const ZeroOneResult& ev = *node.eval;
            if (ev.outcome == TestOutcome::Zero) {
                chain_len(node, {0, 0});
                trace({TraceEvent::Kind::Discard, node.a, node.b, node.log2_n, node.rho.bits, decided_range(ev)});
                return;
            }
            if (ev.outcome == TestOutcome::One) {
                chain_len(node, {1, 1});
                trace({TraceEvent::Kind::Report, node.a, node.b, node.log2_n, node.rho.bits, decided_range(ev)});
                res_.intervals.push_back({node.a, node.b});
                return;
            }
            if (!(ev.full_ran && ev.range.v_min >= 2)) {
                // range straddles {0,1}: double the working precision and redo
                Precision next = node.rho.next();
                if (next.bits > cfg_.rho_cap)
                    throw PrecisionCapError("precision cap reached on " + node.a.str() + " .. " + node.b.str() +
                                            " (input may not be square-free)");
                trace({TraceEvent::Kind::Escalate, node.a, node.b, node.log2_n, next.bits, ev.range});
                node.rho = next;
                node.eval.reset();
                continue;
            }

            const SignVarRange range = ev.range;
            const size_t len = chain_len(node, range);

            if (cfg_.mode == SolveMode::ANewDsc && node.d_proper >= delay_) {
                ++res_.stats.newton_attempts;
                trace({TraceEvent::Kind::NewtonAttempt, node.a, node.b, node.log2_n, node.rho.bits, range});
                NewtonContext ctx{node.rho, cfg_.truncation ? node.k_trunc : std::nullopt, range.v_max, lambda_,
                                  cfg_.rho_cap};
                NewtonScratch scratch;
                auto success = newton_test(oracle_, node.a, node.b, node.log2_n, ctx, rng_, &scratch);
                note_rho(Precision{scratch.max_rho_bits});
                if (success) {
                    ++res_.stats.newton_successes;
                    if (success->boundary) ++res_.stats.boundary_successes;
                    trace({TraceEvent::Kind::NewtonSuccess, success->lo, success->hi, node.log2_n * 2, node.rho.bits,
                           range, success->k_guess, success->boundary});
                    ActiveNode child;
                    child.a = success->lo;
                    child.b = success->hi;
                    child.log2_n = node.log2_n * 2;
                    child.rho = node.rho;
                    child.k_trunc = cfg_.truncation ? std::optional<int>(success->k_guess) : std::nullopt;
                    child.d_proper = node.d_proper + 1;
                    child.parent_range = range;
                    child.parent_chain = len;
                    ++res_.stats.tree_nodes;
                    stack.push_back(std::move(child));
                    return;
                }
            }

            // bisection at a certified-nonzero point near the midpoint
            const Dyadic m = midpoint(node.a, node.b);
            const Dyadic delta = (node.b - node.a).mul_pow2(-3);
            PointPick pick;
            if (cfg_.admissible == AdmissibleVariant::Pseudo) {
                pick = find_pseudo_admissible(oracle_, m, delta, lambda_, rng_, cfg_.rho_cap);
            } else {
                Multipoint mp{m, detail::grid_spacing(delta, n_), n_};
                pick = find_admissible(oracle_, mp, cfg_.rho_cap);
            }
            note_rho(pick.rho_used);
            ++res_.stats.bisections;
            trace({TraceEvent::Kind::Bisect, node.a, node.b, node.log2_n, node.rho.bits, range});

            ActiveNode left, right;
            left.a = node.a;
            left.b = pick.point;
            right.a = pick.point;
            right.b = node.b;
            for (ActiveNode* c : {&left, &right}) {
                c->log2_n = std::max<int64_t>(2, node.log2_n / 2);
                c->rho = node.rho;
                c->k_trunc = node.k_trunc;
                c->parent_range = range;
                c->parent_chain = len;
            }
            left.eval = evaluate(left);
            right.eval = evaluate(right);
            res_.stats.tree_nodes += 2;

            const bool proper = proper_split_check(decided_range(*left.eval), decided_range(*right.eval));
            const int64_t dp = (proper && node.log2_n == 2) ? 0 : node.d_proper + 1;
            left.d_proper = right.d_proper = dp;

            consume_or_push(std::move(right), stack);
            consume_or_push(std::move(left), stack);
            return;
        }
    }

    const CoefficientOracle& oracle_;
    const SolveConfig& cfg_;
    RandomSource rng_;
    int n_;
    int delay_ = 0;
    int lambda_ = 2;
    IsolationResult res_;
};

// ---- classic exact Descartes ----

inline int exact_sign_variations(const std::vector<mpz_class>& c) {
    int v = 0;
    int last = 0;
    for (const auto& x : c) {
        int s = mpz_sgn(x.get_mpz_t());
        if (s == 0) continue;
        if (last != 0 && s != last) ++v;
        last = s;
    }
    return v;
}

// var(P, I) for the exact local polynomial Q_I: reverse then shift by 1
inline int exact_var_count(const std::vector<mpz_class>& q) {
    std::vector<mpz_class> t(q.rbegin(), q.rend());
    const size_t n = t.size() - 1;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = n - 1; j + 1 > i; --j) t[j] += t[j + 1];
    return exact_sign_variations(t);
}

inline void strip_common_pow2(std::vector<mpz_class>& q) {
    mp_bitcnt_t best = ~static_cast<mp_bitcnt_t>(0);
    for (const auto& c : q) {
        if (mpz_sgn(c.get_mpz_t()) == 0) continue;
        best = std::min(best, mpz_scan1(c.get_mpz_t(), 0));
        if (best == 0) return;
    }
    if (best == ~static_cast<mp_bitcnt_t>(0)) return;
    for (auto& c : q) mpz_tdiv_q_2exp(c.get_mpz_t(), c.get_mpz_t(), best);
}

class ClassicEngine {
  public:
    ClassicEngine(const CoefficientOracle& oracle, const SolveConfig& cfg) : oracle_(oracle), cfg_(cfg) {
        n_ = oracle.degree();
        if (n_ < 1) throw DegenerateInputError("degree must be at least 1");
        coeffs_.reserve(static_cast<size_t>(n_) + 1);
        for (int i = 0; i <= n_; ++i) {
            auto c = oracle.exact_coefficient(i);
            if (!c) throw ExactInputRequiredError("classic mode requires exactly representable coefficients");
            coeffs_.push_back(*c);
        }
    }

    IsolationResult run(std::optional<std::pair<Dyadic, Dyadic>> region) {
        const auto t0 = std::chrono::steady_clock::now();
        Dyadic a0, b0;
        if (region) {
            a0 = region->first;
            b0 = region->second;
            if (!(a0 < b0)) throw Error("region endpoints must satisfy a < b");
        } else {
            DyadicOracle oracle(coeffs_);
            Dyadic bound = cauchy_root_bound(oracle, cfg_.rho_cap);
            a0 = -bound;
            b0 = bound;
        }
        // exact roots at user-supplied region endpoints are not representable
        // in the output contract (intervals are open)
        if (region) {
            if (eval_exact(a0) == 0 || eval_exact(b0) == 0)
                throw PrecisionCapError("region endpoint is a root; classic mode cannot proceed", true);
        }

        struct CNode {
            Dyadic a, b;
            std::vector<mpz_class> q;  // positive multiple of P(a + (b-a)x)
            int var = 0;
            int parent_var = -1;
            size_t parent_chain = 0;
        };

        std::vector<CNode> stack;
        CNode root;
        root.a = a0;
        root.b = b0;
        root.q = initial_local(a0, b0);
        root.var = exact_var_count(root.q);
        stack.push_back(std::move(root));
        res_.stats.tree_nodes = 1;

        while (!stack.empty()) {
            if (budget_exhausted(t0)) {
                res_.stats.capped = true;
                res_.complete = false;
                break;
            }
            CNode node = std::move(stack.back());
            stack.pop_back();

            size_t len = 1;
            if (node.parent_var == node.var) len = node.parent_chain + 1;
            if (len > res_.stats.max_var_chain) res_.stats.max_var_chain = len;

            if (node.var == 0) continue;
            if (node.var == 1) {
                res_.intervals.push_back({node.a, node.b});
                continue;
            }

            const Dyadic m = midpoint(node.a, node.b);
            ++res_.stats.bisections;
            // left child: 2^n * Q(x/2); right child: left shifted by 1
            std::vector<mpz_class> lq(node.q.size());
            for (size_t i = 0; i < node.q.size(); ++i) {
                mpz_mul_2exp(lq[i].get_mpz_t(), node.q[i].get_mpz_t(),
                             static_cast<mp_bitcnt_t>(node.q.size() - 1 - i));
            }
            strip_common_pow2(lq);
            std::vector<mpz_class> rq = lq;
            const size_t deg = rq.size() - 1;
            for (size_t i = 0; i < deg; ++i)
                for (size_t j = deg - 1; j + 1 > i; --j) rq[j] += rq[j + 1];
            if (mpz_sgn(rq[0].get_mpz_t()) == 0) res_.points.push_back(m);

            res_.stats.tree_nodes += 2;
            CNode right{m, node.b, std::move(rq), 0, node.var, len};
            right.var = exact_var_count(right.q);
            CNode left{node.a, m, std::move(lq), 0, node.var, len};
            left.var = exact_var_count(left.q);
            for (CNode* c : {&right, &left}) {
                if (c->var == 0) {
                    size_t cl = c->parent_var == 0 ? c->parent_chain + 1 : 1;
                    if (cl > res_.stats.max_var_chain) res_.stats.max_var_chain = cl;
                    continue;
                }
                stack.push_back(std::move(*c));
            }
        }

        std::sort(res_.intervals.begin(), res_.intervals.end(),
                  [](const RootInterval& x, const RootInterval& y) { return x.a < y.a; });
        std::sort(res_.points.begin(), res_.points.end(), [](const Dyadic& x, const Dyadic& y) { return x < y; });
        res_.stats.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return std::move(res_);
    }

  private:
    bool budget_exhausted(std::chrono::steady_clock::time_point t0) const {
        if (cfg_.node_cap && res_.stats.tree_nodes >= *cfg_.node_cap) return true;
        if (cfg_.time_budget_s) {
            double el = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            if (el >= *cfg_.time_budget_s) return true;
        }
        return false;
    }

    int eval_exact(const Dyadic& x) const {
        Dyadic acc = coeffs_.back();
        for (int i = n_ - 1; i >= 0; --i) acc = acc * x + coeffs_[static_cast<size_t>(i)];
        return acc.sign();
    }

    // exact integer multiple of P(a + (b-a)x)
    std::vector<mpz_class> initial_local(const Dyadic& a, const Dyadic& b) const {
        std::vector<Dyadic> q = coeffs_;
        const int n = n_;
        if (!a.is_zero()) {
            for (int i = 0; i < n; ++i)
                for (int j = n - 1; j >= i; --j)
                    q[static_cast<size_t>(j)] = q[static_cast<size_t>(j)] + q[static_cast<size_t>(j) + 1] * a;
        }
        const Dyadic w = b - a;
        Dyadic pw(1);
        for (int i = 1; i <= n; ++i) {
            pw = pw * w;
            q[static_cast<size_t>(i)] = q[static_cast<size_t>(i)] * pw;
        }
        int64_t emin = 0;
        bool first = true;
        for (const auto& c : q) {
            if (c.is_zero()) continue;
            emin = first ? c.exponent() : std::min(emin, c.exponent());
            first = false;
        }
        std::vector<mpz_class> out(q.size());
        for (size_t i = 0; i < q.size(); ++i) {
            if (q[i].is_zero()) continue;
            mpz_mul_2exp(out[i].get_mpz_t(), q[i].mantissa().get_mpz_t(),
                         static_cast<mp_bitcnt_t>(q[i].exponent() - emin));
        }
        return out;
    }

    const CoefficientOracle& oracle_;
    const SolveConfig& cfg_;
    int n_;
    std::vector<Dyadic> coeffs_;
    IsolationResult res_;
};

}  // namespace detail

// Isolate all real roots of the oracle polynomial on the region (the Cauchy
// bound box when omitted). The input must be square-free on the region;
// violations surface as precision-cap errors.
inline IsolationResult isolate(const CoefficientOracle& oracle, std::optional<std::pair<Dyadic, Dyadic>> region,
                               const SolveConfig& cfg) {
    if (cfg.mode == SolveMode::Classic) return detail::ClassicEngine(oracle, cfg).run(std::move(region));
    return detail::Engine(oracle, cfg).run(std::move(region));
}

// Textbook exact Descartes bisection with midpoint-root reporting; exact
// (integer/dyadic) coefficients only.
inline IsolationResult isolate_classic(const CoefficientOracle& oracle,
                                       std::optional<std::pair<Dyadic, Dyadic>> region, const SolveConfig& cfg) {
    return detail::ClassicEngine(oracle, cfg).run(std::move(region));
}

}  // namespace rootiso
