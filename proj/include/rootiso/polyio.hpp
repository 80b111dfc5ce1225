#pragma once

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cstdlib>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rootiso/families.hpp"
#include "rootiso/solver.hpp"

namespace rootiso {

struct GenInfo {
    std::string family;
    int n = 0;
    int tau = 0;
    uint64_t seed = 0;
    int scale = 256;
};

// Parsed polynomial: exact dense rational coefficients (lowest-first) plus
// the generator parameters for named families.
struct PolySpec {
    std::vector<mpq_class> coeffs;
    std::optional<GenInfo> generated;

    bool dyadic_exact() const {
        for (const auto& v : coeffs) {
            const mpz_class& den = v.get_den();
            if (den == 1) continue;
            if (mpz_scan1(den.get_mpz_t(), 0) != static_cast<mp_bitcnt_t>(detail::bit_length(den) - 1)) return false;
        }
        return true;
    }
};

namespace detail {

struct Token {
    std::string text;
    int line;
    int column;
};

inline std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> out;
    int line = 1, col = 1;
    size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (c == '#') {
            while (i < text.size() && text[i] != '\n') ++i;
            continue;
        }
        if (c == '\n') {
            ++line;
            col = 1;
            ++i;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++col;
            ++i;
            continue;
        }
        int start_col = col;
        std::string tok;
        while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) && text[i] != '#') {
            tok.push_back(text[i]);
            ++i;
            ++col;
        }
        out.push_back({std::move(tok), line, start_col});
    }
    return out;
}

// integer, m*2^e dyadic, or decimal string -> exact rational
inline mpq_class parse_coeff(const Token& t) {
    std::string s = t.text;
    if (!s.empty() && s[0] == '+') s.erase(0, 1);
    auto fail = [&](const std::string& why) -> mpq_class {
        throw ParseError("bad coefficient '" + t.text + "': " + why, t.line, t.column);
    };
    size_t star = s.find("*2^");
    if (star != std::string::npos) {
        std::string mant = s.substr(0, star);
        std::string exp = s.substr(star + 3);
        mpz_class m;
        if (mant.empty() || mpz_set_str(m.get_mpz_t(), mant.c_str(), 10) != 0) return fail("mantissa");
        errno = 0;
        char* end = nullptr;
        long e = std::strtol(exp.c_str(), &end, 10);
        if (exp.empty() || *end != '\0' || errno == ERANGE) return fail("exponent");
        mpq_class q(m);
        if (e >= 0) {
            q <<= static_cast<unsigned long>(e);
        } else {
            q /= mpq_class(mpz_class(1) << static_cast<unsigned long>(-e));
        }
        return q;
    }
    size_t dot = s.find('.');
    if (dot != std::string::npos) {
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        size_t frac = s.size() - dot - 1;
        if (digits.empty() || frac == 0) return fail("decimal");
        mpz_class num;
        if (mpz_set_str(num.get_mpz_t(), digits.c_str(), 10) != 0) return fail("decimal digits");
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, static_cast<unsigned long>(frac));
        mpq_class q(num, den);
        q.canonicalize();
        return q;
    }
    mpz_class m;
    if (mpz_set_str(m.get_mpz_t(), s.c_str(), 10) != 0) return fail("not a number");
    return mpq_class(m);
}

}  // namespace detail

// Grammar: optional `#` comment lines; first token line declares the layout
//   dense lowest-first | dense highest-first | sparse
//   generate <family> n=<int> tau=<int> [seed=<u64>] [scale=<int>]
// followed by coefficient tokens (dense) or exp:coeff pairs (sparse).
// Coefficients are integers, m*2^e dyadics, or decimal strings.
inline PolySpec parse_poly(std::string_view text) {
    std::vector<detail::Token> toks = detail::tokenize(text);
    if (toks.empty()) throw ParseError("empty input", 1, 1);
    size_t pos = 0;
    auto next = [&]() -> const detail::Token& {
        if (pos >= toks.size()) throw ParseError("unexpected end of input", toks.back().line, toks.back().column);
        return toks[pos++];
    };

    const detail::Token& head = next();
    PolySpec spec;

    if (head.text == "generate") {
        GenInfo gi;
        gi.family = next().text;
        while (pos < toks.size()) {
            const detail::Token& t = next();
            size_t eq = t.text.find('=');
            if (eq == std::string::npos) throw ParseError("expected key=value, got '" + t.text + "'", t.line, t.column);
            std::string key = t.text.substr(0, eq);
            std::string val = t.text.substr(eq + 1);
            try {
                if (key == "n") gi.n = std::stoi(val);
                else if (key == "tau") gi.tau = std::stoi(val);
                else if (key == "seed") gi.seed = std::stoull(val);
                else if (key == "scale") gi.scale = std::stoi(val);
                else throw ParseError("unknown generator key '" + key + "'", t.line, t.column);
            } catch (const ParseError&) {
                throw;
            } catch (const std::exception&) {
                throw ParseError("bad value for '" + key + "'", t.line, t.column);
            }
        }
        ZPoly p;
        try {
            p = gen_family(gi.family, gi.n, gi.tau, gi.seed, gi.scale);
        } catch (const DegenerateInputError& e) {
            throw ParseError(e.what(), head.line, head.column);
        }
        spec.coeffs.reserve(p.size());
        for (auto& c : p) spec.coeffs.emplace_back(std::move(c));
        spec.generated = gi;
    } else if (head.text == "sparse") {
        std::vector<std::pair<long, mpq_class>> entries;
        long max_exp = -1;
        while (pos < toks.size()) {
            const detail::Token& t = next();
            size_t colon = t.text.find(':');
            if (colon == std::string::npos)
                throw ParseError("expected exp:coeff, got '" + t.text + "'", t.line, t.column);
            long e = 0;
            try {
                e = std::stol(t.text.substr(0, colon));
            } catch (const std::exception&) {
                throw ParseError("bad exponent in '" + t.text + "'", t.line, t.column);
            }
            if (e < 0) throw ParseError("negative exponent in '" + t.text + "'", t.line, t.column);
            detail::Token ct{t.text.substr(colon + 1), t.line, t.column + static_cast<int>(colon) + 1};
            entries.emplace_back(e, detail::parse_coeff(ct));
            max_exp = std::max(max_exp, e);
        }
        if (max_exp < 0) throw ParseError("no coefficients", head.line, head.column);
        spec.coeffs.assign(static_cast<size_t>(max_exp) + 1, mpq_class(0));
        for (auto& [e, q] : entries) spec.coeffs[static_cast<size_t>(e)] += q;
    } else if (head.text == "dense") {
        const detail::Token& order = next();
        bool lowest_first = false;
        if (order.text == "lowest-first") lowest_first = true;
        else if (order.text == "highest-first") lowest_first = false;
        else throw ParseError("expected lowest-first or highest-first", order.line, order.column);
        while (pos < toks.size()) spec.coeffs.push_back(detail::parse_coeff(next()));
        if (spec.coeffs.empty()) throw ParseError("no coefficients", head.line, head.column);
        if (!lowest_first) std::reverse(spec.coeffs.begin(), spec.coeffs.end());
    } else {
        throw ParseError("expected header: dense lowest-first | dense highest-first | sparse | generate", head.line,
                         head.column);
    }

    if (spec.coeffs.size() < 2) throw ParseError("degree must be at least 1", 1, 1);
    if (spec.coeffs.back() == 0) throw ParseError("zero leading coefficient", 1, 1);
    return spec;
}

inline std::unique_ptr<CoefficientOracle> make_oracle(const PolySpec& spec) {
    return std::make_unique<RationalOracle>(spec.coeffs);
}

inline ZPoly spec_to_zpoly(const PolySpec& spec) {
    // common-denominator clearing: exact integer multiple with the same roots
    mpz_class lcm = 1;
    for (const auto& q : spec.coeffs) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den().get_mpz_t());
    ZPoly out;
    out.reserve(spec.coeffs.size());
    for (const auto& q : spec.coeffs) {
        mpq_class v = q * lcm;
        v.canonicalize();
        out.push_back(v.get_num());
    }
    return out;
}

}  // namespace rootiso
