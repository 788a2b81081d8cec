#pragma once

#include <cmath>
#include <limits>

#include "enscale/errors.hpp"
#include "enscale/ratio.hpp"

// Radiating-cone scaling: per-section dimensions grow by beta = S^(1/2)
// (diameter) and gamma = S^(1/3) (length), the transmitting volume by
// S^(4k/3) while the absorbing volume grows by S^k. The 4/3 between those
// two exponents is the transmit/absorb entropy ratio; it reappears as the
// fractal dimension of the transmitting length and in the entropy-density
// step dS/dv = (4/3) E/T.

namespace enscale::cone {

namespace detail {

inline const double kMaxExpArg = std::log(std::numeric_limits<double>::max());

inline void check_exp_arg(double arg, const char* parameter) {
    enscale::detail::require(arg <= kMaxExpArg, Errc::range_overflow,
                             "power of S overflows double range", parameter);
}

inline void check_scaling_factor(double S) {
    enscale::detail::require(std::isfinite(S) && S > 1.0, Errc::parameter_domain,
                             "scaling factor S must be finite and > 1", "S");
}

inline void check_section_index(int k) {
    enscale::detail::require(k >= 1, Errc::parameter_domain,
                             "section index k must be >= 1", "k");
}

}  // namespace detail

/// First-section cone dimensions. beta and gamma are always derived from S,
/// never stored, so they cannot drift out of step.
struct ConeGeometry {
    double S = 0.0;
    double D1 = 1.0;      // first-section diameter
    double L1 = 1.0;      // first-section perpendicular length
    double theta1 = 1.0;  // first absorbing volume

    void validate() const {
        detail::check_scaling_factor(S);
        enscale::detail::require(std::isfinite(D1) && D1 > 0.0, Errc::parameter_domain,
                                 "D1 must be finite and > 0", "D1");
        enscale::detail::require(std::isfinite(L1) && L1 > 0.0, Errc::parameter_domain,
                                 "L1 must be finite and > 0", "L1");
        enscale::detail::require(std::isfinite(theta1) && theta1 > 0.0, Errc::parameter_domain,
                                 "theta1 must be finite and > 0", "theta1");
    }

    double beta() const { return std::sqrt(S); }
    double gamma() const { return std::cbrt(S); }
};

struct ConeSectionReport {
    int k = 0;
    double absorbing_volume = 0.0;          // S^k * theta1
    double transmitting_volume_ratio = 0.0; // V_{k+1} / V_1 = S^(4k/3)
    double length_ratio = 0.0;              // gamma^k = S^(k/3)
    double diameter_ratio = 0.0;            // beta^k  = S^(k/2)
};

/// Per-section scalars at section k. All power laws are evaluated as
/// exp(multiple * k * ln S) so ratios stay consistent at large k instead of
/// accumulating per-step rounding.
inline ConeSectionReport section_report(const ConeGeometry& geom, int k) {
    geom.validate();
    detail::check_section_index(k);

    const double lnS = std::log(geom.S);
    const double kd = static_cast<double>(k);
    detail::check_exp_arg((4.0 / 3.0) * kd * lnS, "k");
    detail::check_exp_arg(kd * lnS + std::log(geom.theta1), "k");

    ConeSectionReport report;
    report.k = k;
    report.absorbing_volume = std::exp(kd * lnS) * geom.theta1;
    report.transmitting_volume_ratio = std::exp((4.0 / 3.0) * kd * lnS);
    report.length_ratio = std::exp(kd * lnS / 3.0);
    report.diameter_ratio = std::exp(kd * lnS / 2.0);
    return report;
}

/// Entropy of the capacity to transmit over the entropy of the capacity to
/// absorb: log_S(S^(4k/3)) / log_S(S^k) = (4k/3)/k. Exponent arithmetic is
/// carried out on integers, so the result is exactly 4/3 for every S and k
/// rather than a value that merely rounds to it.
inline Ratio entropy_ratio(double S, int k) {
    detail::check_scaling_factor(S);
    detail::check_section_index(k);
    return Ratio::of(4 * static_cast<std::int64_t>(k), 3 * static_cast<std::int64_t>(k));
}

/// Fractal dimension of the transmitting volume's length measured in units
/// of the absorbing volume's length, log(S^(4k/9)) / log(S^(1/3)) per
/// generation. Unlike entropy_ratio this goes through live pow/log
/// evaluation and lands at 4/3 only to floating precision.
inline double fractal_dimension(double S, int k) {
    detail::check_scaling_factor(S);
    detail::check_section_index(k);
    const double kd = static_cast<double>(k);
    detail::check_exp_arg((4.0 / 9.0) * kd * std::log(S), "k");

    const double transmitting_length = std::pow(S, (4.0 / 3.0) * kd / 3.0);
    const double unit_length = std::cbrt(S);  // 1/u
    return std::log(transmitting_length) / std::log(unit_length) / kd;
}

/// Entropy density growth per unit volume, dS/dv = (4/3) E / T.
inline double stefan_entropy_density_rate(double E, double T) {
    enscale::detail::require(std::isfinite(E) && E >= 0.0, Errc::parameter_domain,
                             "energy density E must be finite and >= 0", "E");
    enscale::detail::require(std::isfinite(T) && T > 0.0, Errc::parameter_domain,
                             "absolute temperature T must be finite and > 0", "T");
    return (4.0 / 3.0) * E / T;
}

struct HeatDecomposition {
    double dQ = 0.0;
    double internal_part = 0.0;  // d(Ev) = v dE + E dv
    double emergent_part = 0.0;  // (1/3) E dv, the radial pressure term
};

/// Split of a heat quantity dQ = v dE + (4/3) E dv into the change of
/// internal energy d(Ev) and the emergent (1/3) E dv pressure term.
inline HeatDecomposition heat_decomposition(double E, double dE, double v, double dv) {
    enscale::detail::require(std::isfinite(E) && E >= 0.0, Errc::parameter_domain,
                             "energy density E must be finite and >= 0", "E");
    enscale::detail::require(std::isfinite(v) && v > 0.0, Errc::parameter_domain,
                             "volume v must be finite and > 0", "v");
    enscale::detail::require(std::isfinite(dE), Errc::parameter_domain,
                             "dE must be finite", "dE");
    enscale::detail::require(std::isfinite(dv), Errc::parameter_domain,
                             "dv must be finite", "dv");

    HeatDecomposition d;
    d.internal_part = v * dE + E * dv;
    d.emergent_part = E * dv / 3.0;
    d.dQ = d.internal_part + d.emergent_part;
    return d;
}

}  // namespace enscale::cone
