#pragma once

#include <json.hpp>

#include "rootiso/bench.hpp"

namespace rootiso {

inline nlohmann::json stats_to_json(const SolveStats& s) {
    return nlohmann::json{{"tree_nodes", s.tree_nodes},
                          {"newton_attempts", s.newton_attempts},
                          {"newton_successes", s.newton_successes},
                          {"bisections", s.bisections},
                          {"max_precision_bits", s.max_precision_bits},
                          {"max_var_chain", s.max_var_chain},
                          {"truncation_hits", s.truncation_hits},
                          {"wall_time_s", s.wall_time_s}};
}

inline nlohmann::json result_to_json(const IsolationResult& res) {
    nlohmann::json roots = nlohmann::json::array();
    for (const auto& iv : res.intervals) roots.push_back({{"a", iv.a.str()}, {"b", iv.b.str()}});
    nlohmann::json points = nlohmann::json::array();
    for (const auto& p : res.points) points.push_back(p.str());
    return nlohmann::json{{"roots", roots}, {"points", points}, {"stats", stats_to_json(res.stats)}};
}

inline nlohmann::json record_to_json(const BenchRecord& rec) {
    nlohmann::json j{{"family", rec.family},     {"n", rec.n},
                     {"tau", rec.tau},           {"mode", rec.mode},
                     {"root_count", rec.root_count}, {"oracle_count", rec.oracle_count},
                     {"verified", rec.verified}, {"timeout", rec.timeout},
                     {"wall_time_s", rec.stats.wall_time_s}, {"stats", stats_to_json(rec.stats)}};
    if (!rec.error.empty()) j["error"] = rec.error;
    return j;
}

inline nlohmann::json trace_event_to_json(const TraceEvent& ev) {
    static const char* names[] = {"discard", "report", "report_point", "escalate",
                                  "newton_attempt", "newton_success", "bisect"};
    nlohmann::json j{{"event", names[static_cast<int>(ev.kind)]},
                     {"a", ev.a.str()},
                     {"b", ev.b.str()},
                     {"log2_N", ev.log2_n},
                     {"rho", ev.rho_bits}};
    if (ev.range.v_min >= 0) {
        j["v_min"] = ev.range.v_min;
        j["v_max"] = ev.range.v_max;
    }
    if (ev.kind == TraceEvent::Kind::NewtonSuccess) {
        j["k"] = ev.k;
        j["boundary"] = ev.boundary;
    }
    return j;
}

}  // namespace rootiso
