#pragma once

#include <cstdint>

namespace nkcsim {

// Exact fraction for decision values. Kept unreduced so that a heuristic
// window of width 5 reports 9/15, matching the hand calculations the model
// is validated against. Comparisons are exact (cross-multiplied); the
// double conversion happens only at reporting boundaries.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }

    // -1, 0, +1 against one half; den is positive by construction.
    int compare_half() const {
        const std::int64_t lhs = 2 * num;
        if (lhs < den) return -1;
        if (lhs > den) return 1;
        return 0;
    }

    bool operator==(const Rational& other) const {
        return num * other.den == other.num * den;
    }
};

} // namespace nkcsim
