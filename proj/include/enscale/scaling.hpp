#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "enscale/errors.hpp"

// Nested cluster-generation arithmetic: per-generation energy tables,
// geometric energy sums, mean energy per source, the oscillator mean,
// and the numeric recovery of the optimal scaling base.

namespace enscale::scaling {

inline constexpr int kMaxGenerations = 10'000;    // cap on h for tables
inline constexpr int kMaxSumGenerations = 1'000;  // cap on h for energy sums

namespace detail {

inline const double kMaxExpArg = std::log(std::numeric_limits<double>::max());

inline void check_exp_arg(double arg, const char* parameter) {
    enscale::detail::require(arg <= kMaxExpArg, Errc::range_overflow,
                             "exponential overflows double range", parameter);
}

}  // namespace detail

/// A nested cluster-generation system: scaling factor S, generation count h,
/// and energy unit epsilon. The unit model (energy unit 1, cluster base S)
/// is the special case epsilon = ln(S).
struct ScalingModel {
    double S = 0.0;
    int h = 0;
    double epsilon = 0.0;

    void validate() const {
        enscale::detail::require(std::isfinite(S) && S > 1.0, Errc::parameter_domain,
                                 "scaling factor S must be finite and > 1", "S");
        enscale::detail::require(h >= 1, Errc::parameter_domain,
                                 "generation count h must be >= 1", "h");
        enscale::detail::require(h <= kMaxGenerations, Errc::parameter_domain,
                                 "generation count h exceeds the supported cap", "h");
        enscale::detail::require(std::isfinite(epsilon) && epsilon > 0.0, Errc::parameter_domain,
                                 "energy unit epsilon must be finite and > 0", "epsilon");
        detail::check_exp_arg(static_cast<double>(h) * std::log(S), "S");
        // bound covers the row totals eps * e^(h*eps), not just e^(h*eps)
        detail::check_exp_arg(static_cast<double>(h) * epsilon + std::max(0.0, std::log(epsilon)),
                              "epsilon");
    }

    /// Derived node count n = S^h.
    double node_count() const { return std::exp(static_cast<double>(h) * std::log(S)); }
};

struct GenerationRow {
    int k = 0;
    double cluster_count = 0.0;       // e^(k*eps)
    double energy_per_cluster = 0.0;  // e^(eps*(h-k)) * eps
    double generation_total = 0.0;    // product; invariant across k
};

/// One row per generation k = 1..h. Every generation_total equals
/// eps * e^(h*eps); the constancy is the point of the table.
inline std::vector<GenerationRow> generation_table(const ScalingModel& model) {
    model.validate();
    std::vector<GenerationRow> rows;
    rows.reserve(static_cast<std::size_t>(model.h));
    for (int k = 1; k <= model.h; ++k) {
        GenerationRow row;
        row.k = k;
        row.cluster_count = std::exp(static_cast<double>(k) * model.epsilon);
        row.energy_per_cluster =
            std::exp(model.epsilon * static_cast<double>(model.h - k)) * model.epsilon;
        row.generation_total = row.cluster_count * row.energy_per_cluster;
        rows.push_back(row);
    }
    return rows;
}

namespace detail {

inline void check_sum_args(double epsilon, int h) {
    enscale::detail::require(std::isfinite(epsilon) && epsilon > 0.0, Errc::parameter_domain,
                             "epsilon must be finite and > 0", "epsilon");
    enscale::detail::require(h >= 1 && h <= kMaxSumGenerations, Errc::parameter_domain,
                             "h must be in [1, 1000]", "h");
    check_exp_arg(static_cast<double>(h) * epsilon + std::max(0.0, std::log(epsilon)), "epsilon");
}

}  // namespace detail

/// Closed form of the geometric energy sum over one nested series:
/// G = eps * (e^(h*eps) - 1) / (e^eps - 1).
inline double geometric_sum_G(double epsilon, int h) {
    detail::check_sum_args(epsilon, h);
    return epsilon * std::expm1(static_cast<double>(h) * epsilon) / std::expm1(epsilon);
}

/// G divided by the source's e^(h*eps) energy units:
/// eps * (1 - e^(-h*eps)) / (e^eps - 1). Increases with h toward
/// eps / (e^eps - 1).
inline double mean_energy_per_source(double epsilon, int h) {
    detail::check_sum_args(epsilon, h);
    return epsilon * (-std::expm1(-static_cast<double>(h) * epsilon)) / std::expm1(epsilon);
}

/// Mean energy per oscillator, eps / (e^(eps/kT) - 1). At kT = 1 this is the
/// h -> infinity limit of mean_energy_per_source.
inline double oscillator_mean(double epsilon, double kT) {
    enscale::detail::require(std::isfinite(epsilon) && epsilon > 0.0, Errc::parameter_domain,
                             "epsilon must be finite and > 0", "epsilon");
    enscale::detail::require(std::isfinite(kT) && kT > 0.0, Errc::parameter_domain,
                             "kT must be finite and > 0", "kT");
    return epsilon / std::expm1(epsilon / kT);
}

/// Root of ln(S) - 1 = 0 by bisection on [2, 3], i.e. the base at which a
/// node's energy receipt rate balances its distribution rate. Interval is
/// narrowed to 1e-12; the value is found live, never returned as a constant.
inline double solve_optimal_base() {
    double lo = 2.0;
    double hi = 3.0;
    // f(lo) < 0 < f(hi) for f(S) = ln(S) - 1
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        if (std::log(mid) - 1.0 < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

/// Telescoping residue sum(S^i, i=1..h) - S^h - sum(S^i, i=1..h-1),
/// evaluated by literal accumulation. Zero (to rounding) for every valid
/// S and h; a nonzero value would break the nesting argument.
inline double nested_sum_check(double S, int h) {
    enscale::detail::require(std::isfinite(S) && S > 1.0, Errc::parameter_domain,
                             "S must be finite and > 1", "S");
    enscale::detail::require(h >= 1 && h <= kMaxGenerations, Errc::parameter_domain,
                             "h must be >= 1 and below the supported cap", "h");
    // the accumulated sum reaches S(S^h - 1)/(S - 1), not just S^h
    detail::check_exp_arg(static_cast<double>(h + 1) * std::log(S) - std::log(S - 1.0), "S");

    double full = 0.0;     // sum_{i=1..h} S^i
    double partial = 0.0;  // sum_{i=1..h-1} S^i
    double power = 1.0;
    for (int i = 1; i <= h; ++i) {
        power *= S;
        full += power;
        if (i < h) partial += power;
    }
    enscale::detail::require(std::isfinite(full), Errc::range_overflow,
                             "nested sum overflows double range", "S");
    return full - power - partial;
}

}  // namespace enscale::scaling
