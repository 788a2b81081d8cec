#pragma once

#include <cstdint>
#include <numeric>
#include <string>

namespace enscale {

/// Exact rational with a positive denominator, kept in lowest terms.
struct Ratio {
    std::int64_t num = 0;
    std::int64_t den = 1;

    static Ratio of(std::int64_t num, std::int64_t den) {
        if (den < 0) {
            num = -num;
            den = -den;
        }
        const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
        return Ratio{num, den};
    }

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }

    std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }

    friend bool operator==(const Ratio&, const Ratio&) = default;
};

}  // namespace enscale
