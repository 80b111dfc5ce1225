#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "rootiso/report.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitPrecisionCap = 3;
constexpr int kExitTimeout = 4;

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in) throw rootiso::ParseError("cannot open input file: " + path, 0, 0);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

rootiso::SolveMode parse_mode(const std::string& name) {
    if (name == "classic") return rootiso::SolveMode::Classic;
    if (name == "adsc") return rootiso::SolveMode::ADsc;
    if (name == "anewdsc") return rootiso::SolveMode::ANewDsc;
    throw CLI::ValidationError("--mode", "expected classic|adsc|anewdsc");
}

rootiso::Dyadic parse_dyadic_arg(const std::string& text) {
    rootiso::detail::Token tok{text, 0, 0};
    mpq_class q = rootiso::detail::parse_coeff(tok);
    const mpz_class& den = q.get_den();
    if (den != 1) {
        mp_bitcnt_t tz = mpz_scan1(den.get_mpz_t(), 0);
        if (static_cast<int64_t>(tz) != rootiso::detail::bit_length(den) - 1)
            throw rootiso::ParseError("interval endpoint '" + text + "' is not exactly representable as a dyadic", 0, 0);
        return rootiso::Dyadic(q.get_num(), -static_cast<int64_t>(tz));
    }
    return rootiso::Dyadic(q.get_num(), 0);
}

int run_isolate(const std::string& input, const std::vector<std::string>& interval, const std::string& mode_name,
                uint64_t seed, bool json, bool stats, const std::string& trace_path, int rho_cap, bool no_truncation,
                const std::string& admissible) {
    rootiso::PolySpec spec = rootiso::parse_poly(read_input(input));
    auto oracle = rootiso::make_oracle(spec);

    rootiso::SolveConfig cfg;
    cfg.mode = parse_mode(mode_name);
    cfg.seed = seed;
    cfg.rho_cap = rho_cap;
    cfg.truncation = !no_truncation;
    cfg.admissible =
        admissible == "deterministic" ? rootiso::AdmissibleVariant::Deterministic : rootiso::AdmissibleVariant::Pseudo;
    cfg.collect_trace = !trace_path.empty();

    std::optional<std::pair<rootiso::Dyadic, rootiso::Dyadic>> region;
    if (!interval.empty()) region = std::make_pair(parse_dyadic_arg(interval[0]), parse_dyadic_arg(interval[1]));

    rootiso::IsolationResult res = rootiso::isolate(*oracle, region, cfg);

    if (!trace_path.empty()) {
        std::ofstream tf(trace_path);
        for (const auto& ev : res.trace) tf << rootiso::trace_event_to_json(ev).dump() << "\n";
    }

    if (json) {
        std::cout << rootiso::result_to_json(res).dump() << "\n";
    } else {
        std::cout << res.intervals.size() + res.points.size() << " real root(s)\n";
        for (const auto& p : res.points) std::cout << "  point    " << p.str() << "\n";
        for (const auto& iv : res.intervals) std::cout << "  interval (" << iv.a.str() << ", " << iv.b.str() << ")\n";
        if (stats) {
            const auto& s = res.stats;
            std::cout << "tree nodes        " << s.tree_nodes << "\n"
                      << "bisections        " << s.bisections << "\n"
                      << "newton attempts   " << s.newton_attempts << "\n"
                      << "newton successes  " << s.newton_successes << " (" << s.boundary_successes << " boundary)\n"
                      << "max precision     " << s.max_precision_bits << " bits\n"
                      << "max var chain     " << s.max_var_chain << "\n"
                      << "truncation hits   " << s.truncation_hits << "\n"
                      << "wall time         " << s.wall_time_s << " s\n";
        }
    }
    return kExitOk;
}

int run_bench(const std::string& family, int n, int tau, uint64_t seed, const std::string& modes_csv, bool verify,
              double timeout, bool json, int scale) {
    rootiso::BenchConfig cfg;
    cfg.family = family;
    cfg.n = n;
    cfg.tau = tau;
    cfg.gen_seed = seed;
    cfg.solve_seed = seed;
    cfg.scale = scale;
    cfg.verify = verify;
    cfg.timeout_s = timeout;
    std::stringstream ms(modes_csv);
    std::string item;
    while (std::getline(ms, item, ',')) {
        if (!item.empty()) cfg.modes.push_back(parse_mode(item));
    }
    if (cfg.modes.empty()) throw CLI::ValidationError("--modes", "no modes given");

    bool any_timeout = false;
    rootiso::run_bench(cfg, [&](const rootiso::BenchRecord& rec) {
        any_timeout = any_timeout || rec.timeout;
        if (json) {
            std::cout << rootiso::record_to_json(rec).dump() << "\n";
        } else {
            std::cout << rec.family << " n=" << rec.n << " tau=" << rec.tau << " mode=" << rec.mode
                      << " roots=" << rec.root_count;
            if (rec.oracle_count >= 0)
                std::cout << " oracle=" << rec.oracle_count << (rec.verified ? " verified" : " MISMATCH");
            if (rec.timeout) std::cout << " TIMEOUT";
            if (!rec.error.empty()) std::cout << " error: " << rec.error;
            std::cout << " nodes=" << rec.stats.tree_nodes << " time=" << rec.stats.wall_time_s << "s\n";
        }
    });
    return any_timeout ? kExitTimeout : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"certified real-root isolation for square-free univariate polynomials"};
    app.require_subcommand(1);

    auto* iso = app.add_subcommand("isolate", "isolate the real roots of one polynomial");
    std::string input, mode = "anewdsc", trace_path, admissible = "pseudo";
    std::vector<std::string> interval;
    uint64_t seed = 0;
    bool json = false, stats = false, no_truncation = false;
    int rho_cap = 1 << 20;
    iso->add_option("--input", input, "polynomial file, - for stdin")->required();
    iso->add_option("--interval", interval, "region endpoints A B (dyadic)")->expected(2);
    iso->add_option("--mode", mode, "classic|adsc|anewdsc");
    iso->add_option("--seed", seed, "random seed");
    iso->add_flag("--json", json, "machine-readable output");
    iso->add_flag("--stats", stats, "print solve statistics");
    iso->add_option("--trace", trace_path, "write per-node trace (JSON lines)");
    iso->add_option("--rho-cap", rho_cap, "working precision cap in bits");
    iso->add_flag("--no-truncation", no_truncation, "disable degree truncation");
    iso->add_option("--admissible", admissible, "pseudo|deterministic");

    auto* bench = app.add_subcommand("bench", "generate and solve benchmark families");
    std::string family, modes_csv = "anewdsc";
    int n = 0, tau = 0, scale = 256;
    uint64_t bseed = 0;
    bool verify = false, bjson = false;
    double timeout = 600.0;
    bench->add_option("--family", family, "mignotte|nested-mignotte|random-uniform|clustered|wilkinson")->required();
    bench->add_option("--n", n, "degree parameter")->required();
    bench->add_option("--tau", tau, "coefficient bitsize parameter");
    bench->add_option("--seed", bseed, "generator and solver seed");
    bench->add_option("--modes", modes_csv, "comma-separated solver modes");
    bench->add_flag("--verify", verify, "verify against the exact Sturm oracle");
    bench->add_option("--timeout", timeout, "per-instance timeout in seconds");
    bench->add_flag("--json", bjson, "one JSON record per line");
    bench->add_option("--scale", scale, "fixed-point scale for the clustered family");

    CLI11_PARSE(app, argc, argv);

    try {
        if (iso->parsed())
            return run_isolate(input, interval, mode, seed, json, stats, trace_path, rho_cap, no_truncation,
                               admissible);
        return run_bench(family, n, tau, bseed, modes_csv, verify, timeout, bjson, scale);
    } catch (const rootiso::ParseError& e) {
        std::cerr << "parse error";
        if (e.line > 0) std::cerr << " (line " << e.line << ", column " << e.column << ")";
        std::cerr << ": " << e.what() << "\n";
        return kExitParse;
    } catch (const rootiso::ExactInputRequiredError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitParse;
    } catch (const rootiso::NonSquareFreeError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitPrecisionCap;
    } catch (const rootiso::PrecisionCapError& e) {
        std::cerr << "precision cap: " << e.what() << "\n";
        return kExitPrecisionCap;
    } catch (const rootiso::DegenerateInputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitParse;
    } catch (const rootiso::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
