#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>

#include "enscale/errors.hpp"

// Entropy dating: solve e^(m*t) = H' for the age t of a system whose entropy
// rate H' has grown at m per time unit, the divergence-rate/4 consistency
// check, and the entropy gained by adding customers to a network.

namespace enscale::chronometry {

/// Inputs for an age estimate: current entropy rate H' and per-time-unit
/// growth m. The time unit is a display label only; rates are plain reals.
struct DatingScenario {
    double H_prime = 0.0;
    double m = 0.0;
    std::string time_unit = "ky";

    void validate() const {
        enscale::detail::require(std::isfinite(H_prime) && H_prime > 1.0, Errc::parameter_domain,
                                 "H_prime must be finite and > 1 (ln must be positive)", "H_prime");
        enscale::detail::require(std::isfinite(m) && m > 0.0, Errc::parameter_domain,
                                 "growth rate m must be finite and > 0", "m");
    }
};

/// Age t = ln(H') / m, in the scenario's time units.
inline double solve_age(const DatingScenario& scen) {
    scen.validate();
    return std::log(scen.H_prime) / scen.m;
}

/// Implied growth rate from a lexical divergence rate: divergence runs at
/// four times the average growth rate, so m = divergence / 4.
inline double glottochronology_check(double divergence_rate) {
    enscale::detail::require(std::isfinite(divergence_rate) && divergence_rate > 0.0,
                             Errc::parameter_domain, "divergence rate must be finite and > 0",
                             "divergence");
    return divergence_rate / 4.0;
}

/// Entropy-rate gain m*C*log_L(1 + A/n1) from adding A customers to a
/// network of n1, with the inputs echoed back alongside the delta.
struct ValueDelta {
    std::int64_t n1 = 0;  // initial customer count
    std::int64_t A = 0;   // added customers
    double m = 0.0;
    double C = 0.0;
    double L = 0.0;
    double delta_H = 0.0;
};

inline ValueDelta network_value_delta(std::int64_t n1, std::int64_t A, double m, double C,
                                      double L) {
    enscale::detail::require(n1 >= 1, Errc::parameter_domain,
                             "initial customer count n1 must be >= 1", "n1");
    enscale::detail::require(A >= 0, Errc::parameter_domain,
                             "added customer count A must be >= 0", "A");
    enscale::detail::require(std::isfinite(m) && m > 0.0, Errc::parameter_domain,
                             "rate m must be finite and > 0", "m");
    enscale::detail::require(std::isfinite(C) && C > 0.0 && C <= 1.0, Errc::parameter_domain,
                             "clustering coefficient C must lie in (0, 1]", "C");
    enscale::detail::require(std::isfinite(L), Errc::parameter_domain,
                             "path length L must be finite", "L");
    if (L <= 1.0)
        throw Error(Errc::entropy_undefined, "value delta needs path length L > 1 as log base",
                    "L");

    ValueDelta v;
    v.n1 = n1;
    v.A = A;
    v.m = m;
    v.C = C;
    v.L = L;
    v.delta_H = m * C * std::log1p(static_cast<double>(A) / static_cast<double>(n1)) / std::log(L);
    return v;
}

/// Rate per cluster generation, m = H' / h.
inline double rate_from_entropy(double H_prime, double h) {
    enscale::detail::require(std::isfinite(H_prime) && H_prime > 0.0, Errc::parameter_domain,
                             "H_prime must be finite and > 0", "H_prime");
    enscale::detail::require(std::isfinite(h) && h > 0.0, Errc::parameter_domain,
                             "generation count h must be > 0", "h");
    return H_prime / h;
}

// ---------------------------------------------------------------------------
// Flat key/value scenario documents: one `key = value` per line, lines whose
// first non-blank character is '#' are comments, blank lines are skipped.
// ---------------------------------------------------------------------------

inline std::map<std::string, std::string> parse_key_values(std::string_view text) {
    std::map<std::string, std::string> values;

    const auto trim = [](std::string_view s) {
        while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
        while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
            s.remove_suffix(1);
        return s;
    };

    std::size_t line_number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos
                                                                               : eol - pos);
        pos = (eol == std::string_view::npos) ? text.size() + 1 : eol + 1;
        ++line_number;

        line = trim(line);
        if (line.empty() || line.front() == '#') continue;

        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos)
            throw Error(Errc::parse,
                        "line " + std::to_string(line_number) + ": expected `key = value`",
                        "scenario");
        const std::string key{trim(line.substr(0, eq))};
        const std::string value{trim(line.substr(eq + 1))};
        if (key.empty())
            throw Error(Errc::parse, "line " + std::to_string(line_number) + ": empty key",
                        "scenario");
        if (!values.emplace(key, value).second)
            throw Error(Errc::parse,
                        "line " + std::to_string(line_number) + ": duplicate key `" + key + "`",
                        "scenario");
    }
    return values;
}

namespace detail {

inline double parse_real(const std::map<std::string, std::string>& kv, const std::string& key) {
    const auto it = kv.find(key);
    if (it == kv.end())
        throw Error(Errc::parse, "missing required key `" + key + "`", key);
    try {
        std::size_t consumed = 0;
        const double value = std::stod(it->second, &consumed);
        if (consumed != it->second.size())
            throw Error(Errc::parse, "key `" + key + "` has a malformed number", key);
        return value;
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        throw Error(Errc::parse, "key `" + key + "` has a malformed number", key);
    }
}

}  // namespace detail

/// Builds a DatingScenario from a parsed scenario document. Required keys:
/// H_prime and m; time_unit is optional and defaults to "ky".
inline DatingScenario dating_scenario_from_text(std::string_view text) {
    const auto kv = parse_key_values(text);
    DatingScenario scen;
    scen.H_prime = detail::parse_real(kv, "H_prime");
    scen.m = detail::parse_real(kv, "m");
    if (const auto it = kv.find("time_unit"); it != kv.end()) scen.time_unit = it->second;
    scen.validate();
    return scen;
}

/// Builds value-delta inputs from the same document format. Required keys:
/// n1, A, m, C, L.
inline ValueDelta value_delta_from_text(std::string_view text) {
    const auto kv = parse_key_values(text);
    const double n1 = detail::parse_real(kv, "n1");
    const double A = detail::parse_real(kv, "A");
    return network_value_delta(static_cast<std::int64_t>(n1), static_cast<std::int64_t>(A),
                               detail::parse_real(kv, "m"), detail::parse_real(kv, "C"),
                               detail::parse_real(kv, "L"));
}

}  // namespace enscale::chronometry
