#pragma once

#include <functional>
#include <string>

#include "rootiso/polyio.hpp"

namespace rootiso {

struct BenchConfig {
    std::string family;
    int n = 0;
    int tau = 0;
    uint64_t gen_seed = 0;
    int scale = 256;
    std::vector<SolveMode> modes;
    bool verify = false;
    double timeout_s = 600.0;
    uint64_t solve_seed = 0;
    int oracle_cap = 64;  // maximum degree the Sturm oracle is asked to verify
    bool square_free_check = false;
};

struct BenchRecord {
    std::string family;
    int n = 0;
    int tau = 0;
    std::string mode;
    size_t root_count = 0;
    long oracle_count = -1;  // -1: not checked
    bool verified = false;
    bool timeout = false;
    SolveStats stats;
    std::string error;
};

inline std::string mode_name(SolveMode m) {
    switch (m) {
        case SolveMode::Classic: return "classic";
        case SolveMode::ADsc: return "adsc";
        case SolveMode::ANewDsc: return "anewdsc";
    }
    return "?";
}

// Exact root-count verification of a finished solve against the Sturm
// oracle: total count on the region, count 1 in every reported interval,
// reported points are roots.
inline bool verify_result(const ZPoly& poly, const IsolationResult& res, const Dyadic& lo, const Dyadic& hi,
                          long* oracle_count = nullptr) {
    SturmChain chain(poly);
    const long total = chain.count(to_mpq(lo), to_mpq(hi));
    if (oracle_count) *oracle_count = total;
    if (static_cast<long>(res.intervals.size() + res.points.size()) != total) return false;
    for (const auto& iv : res.intervals) {
        if (chain.count(to_mpq(iv.a), to_mpq(iv.b)) != 1) return false;
    }
    for (const auto& pt : res.points) {
        if (chain.sign_at(to_mpq(pt)) != 0) return false;
    }
    return true;
}

// Generate one family instance, solve it in every requested mode, verify
// against the exact oracle when within the cap, and emit one record per mode.
inline void run_bench(const BenchConfig& cfg, const std::function<void(const BenchRecord&)>& sink) {
    ZPoly poly = gen_family(cfg.family, cfg.n, cfg.tau, cfg.gen_seed, cfg.scale);
    {
        // primitive part: same roots, smaller coefficients
        zp::make_primitive(poly);
    }
    if (cfg.square_free_check && !is_square_free(poly)) {
        BenchRecord rec{cfg.family, cfg.n, cfg.tau, "-", 0, -1, false, false, {}, "input is not square-free"};
        sink(rec);
        return;
    }
    std::vector<mpq_class> qc;
    qc.reserve(poly.size());
    for (const auto& c : poly) qc.emplace_back(c);
    RationalOracle oracle(std::move(qc));

    const Dyadic bound = cauchy_root_bound(oracle);
    for (SolveMode mode : cfg.modes) {
        BenchRecord rec;
        rec.family = cfg.family;
        rec.n = cfg.n;
        rec.tau = cfg.tau;
        rec.mode = mode_name(mode);
        SolveConfig sc;
        sc.mode = mode;
        sc.seed = cfg.solve_seed;
        sc.time_budget_s = cfg.timeout_s;
        try {
            IsolationResult res = isolate(oracle, std::make_pair(-bound, bound), sc);
            rec.stats = res.stats;
            rec.root_count = res.intervals.size() + res.points.size();
            rec.timeout = !res.complete;
            if (cfg.verify && res.complete && oracle.degree() <= cfg.oracle_cap) {
                rec.verified = verify_result(poly, res, -bound, bound, &rec.oracle_count);
            }
        } catch (const Error& e) {
            rec.error = e.what();
        }
        sink(rec);
    }
}

}  // namespace rootiso
