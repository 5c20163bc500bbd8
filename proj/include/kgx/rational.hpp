#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <string>

#include "kgx/errors.hpp"

namespace kgx {

// Exact fraction for path scores; comparisons never go through floating point.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1; // > 0, reduced

    static Rational of(std::int64_t num, std::int64_t den) {
        if (den == 0) throw ContractError("rational with zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
        return Rational{num, den};
    }

    bool operator==(const Rational& other) const {
        return num == other.num && den == other.den;
    }
    std::strong_ordering operator<=>(const Rational& other) const {
        // Reduced form with small magnitudes; cross products fit in int64.
        return num * other.den <=> other.num * den;
    }

    double to_double() const { return double(num) / double(den); }

    std::string str() const {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }
};

} // namespace kgx
