#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "enscale/errors.hpp"

// Circulatory-system variant of the cone model. Branch counts, not section
// sizes, grow with the generation index, so the scaling factors invert to
// beta = S^(-1/2) and gamma = S^(-1/3). The transmitting (tube) volume then
// grows as S^(4h/3) against the absorbed (body) volume's S^h, which pins
// the allometric exponent at a = 3/4.

namespace enscale::allometry {

namespace detail {

inline const double kMaxExpArg = std::log(std::numeric_limits<double>::max());

inline void check_exp_arg(double arg, const char* parameter) {
    enscale::detail::require(arg <= kMaxExpArg, Errc::range_overflow,
                             "power of S overflows double range", parameter);
}

}  // namespace detail

/// Capillary-level constants plus the generation counts to evaluate.
/// The capillary is the last (h-th) generation; the aorta is the first.
struct AllometryScenario {
    double S = 0.0;
    double r_c = 1.0;      // capillary radius
    double l_c = 1.0;      // capillary length
    double theta_c = 1.0;  // volume irrigated by one capillary
    std::vector<int> h_range;

    void validate() const {
        enscale::detail::require(std::isfinite(S) && S > 1.0, Errc::parameter_domain,
                                 "scaling factor S must be finite and > 1", "S");
        enscale::detail::require(std::isfinite(r_c) && r_c > 0.0, Errc::parameter_domain,
                                 "capillary radius r_c must be finite and > 0", "r_c");
        enscale::detail::require(std::isfinite(l_c) && l_c > 0.0, Errc::parameter_domain,
                                 "capillary length l_c must be finite and > 0", "l_c");
        enscale::detail::require(std::isfinite(theta_c) && theta_c > 0.0, Errc::parameter_domain,
                                 "capillary volume theta_c must be finite and > 0", "theta_c");
        enscale::detail::require(!h_range.empty(), Errc::parameter_domain,
                                 "h_range must not be empty", "h_range");
        for (int h : h_range)
            enscale::detail::require(h >= 2, Errc::parameter_domain,
                                     "every h in h_range must be >= 2", "h_range");
    }
};

struct OrganismVolumes {
    double V_Y = 0.0;      // circulatory (transmitting) volume, h*pi*S^(4h/3)*r_c^2*l_c
    double theta_M = 0.0;  // absorbed (body) volume, h*S^h*theta_c
};

/// Tube volume and body volume of an organism with h branching generations.
/// The common factor h counts generations: total volume is h times the
/// per-generation volume on both sides.
inline OrganismVolumes organism_volumes(const AllometryScenario& scen, int h) {
    scen.validate();
    enscale::detail::require(h >= 2, Errc::parameter_domain, "h must be >= 2", "h");

    const double lnS = std::log(scen.S);
    const double hd = static_cast<double>(h);
    // full log magnitude of V_Y, prefactors included
    detail::check_exp_arg((4.0 / 3.0) * hd * lnS + std::log(hd * std::numbers::pi) +
                              2.0 * std::log(scen.r_c) + std::log(scen.l_c),
                          "h");
    detail::check_exp_arg(hd * lnS + std::log(hd * scen.theta_c), "h");

    OrganismVolumes vol;
    vol.V_Y = hd * std::numbers::pi * std::exp((4.0 / 3.0) * hd * lnS) * scen.r_c * scen.r_c *
              scen.l_c;
    vol.theta_M = hd * std::exp(hd * lnS) * scen.theta_c;
    return vol;
}

/// The allometric exponent from the scaling factors alone:
/// 1/a = log_S(beta^-2 * gamma^-1) with beta = S^(-1/2), gamma = S^(-1/3),
/// evaluated through live pow/log arithmetic. Equals 3/4 for every S.
inline double closed_form_exponent(double S) {
    enscale::detail::require(std::isfinite(S) && S > 1.0, Errc::parameter_domain,
                             "scaling factor S must be finite and > 1", "S");
    const double beta = std::pow(S, -0.5);
    const double gamma = std::pow(S, -1.0 / 3.0);
    const double inv_a = std::log(1.0 / (beta * beta * gamma)) / std::log(S);
    return 1.0 / inv_a;
}

struct ExponentFit {
    double a_hat = 0.0;    // exponent such that V_Y/h is proportional to (theta_M/h)^(1/a_hat)
    double residual = 0.0; // RMS residual of the log-log regression
};

/// Least-squares recovery of the allometric exponent from synthetic
/// organisms over scen.h_range. The shared generation count h multiplies
/// both volumes and cancels from the allometric proportion, so the
/// regression runs on ln(theta_M/h) against ln(V_Y/h); leaving the h
/// bookkeeping in would tilt the slope by the spurious ln(h) term.
inline ExponentFit fit_exponent(const AllometryScenario& scen) {
    scen.validate();

    std::vector<int> hs = scen.h_range;
    std::sort(hs.begin(), hs.end());
    hs.erase(std::unique(hs.begin(), hs.end()), hs.end());
    enscale::detail::require(hs.size() >= 3, Errc::parameter_domain,
                             "h_range needs at least 3 distinct values", "h_range");

    const std::size_t n = hs.size();
    std::vector<double> xs(n), ys(n);
    for (std::size_t i = 0; i < n; ++i) {
        const OrganismVolumes vol = organism_volumes(scen, hs[i]);
        const double lnh = std::log(static_cast<double>(hs[i]));
        xs[i] = std::log(vol.theta_M) - lnh;
        ys[i] = std::log(vol.V_Y) - lnh;
    }

    double mean_x = 0.0, mean_y = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mean_x += xs[i];
        mean_y += ys[i];
    }
    mean_x /= static_cast<double>(n);
    mean_y /= static_cast<double>(n);

    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (xs[i] - mean_x) * (xs[i] - mean_x);
        sxy += (xs[i] - mean_x) * (ys[i] - mean_y);
    }
    enscale::detail::require(sxx > 0.0, Errc::parameter_domain,
                             "h_range values produce a degenerate regression", "h_range");

    const double slope = sxy / sxx;  // approx 4/3
    const double intercept = mean_y - slope * mean_x;

    double ss_res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = ys[i] - (intercept + slope * xs[i]);
        ss_res += r * r;
    }

    ExponentFit fit;
    fit.a_hat = 1.0 / slope;
    fit.residual = std::sqrt(ss_res / static_cast<double>(n));
    return fit;
}

/// Constancy condition that pins the exponent: (beta^-2 * gamma^-1) / S^(1/a)
/// must equal 1. At the model's a = 3/4 it does for every S and h; any other
/// exponent leaves a residual power of S.
inline double capillary_invariance_check(const AllometryScenario& scen, int h, double a = 0.75) {
    scen.validate();
    enscale::detail::require(h >= 2, Errc::parameter_domain, "h must be >= 2", "h");
    enscale::detail::require(std::isfinite(a) && a > 0.0, Errc::parameter_domain,
                             "exponent a must be finite and > 0", "a");

    const double beta = std::pow(scen.S, -0.5);
    const double gamma = std::pow(scen.S, -1.0 / 3.0);
    return (1.0 / (beta * beta * gamma)) / std::pow(scen.S, 1.0 / a);
}

}  // namespace enscale::allometry
