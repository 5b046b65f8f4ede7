#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>

namespace tridiag {

using cxd = std::complex<double>;

// Tolerance for comparing family parameters against decision boundaries
// (|rho| against 1, powers against 0, ...). Parameters within this distance
// of a boundary are treated as sitting on it.
inline constexpr double kParamTol = 1e-12;

inline bool nearly(double x, double y, double tol = kParamTol) {
    return std::abs(x - y) <= tol * std::max({1.0, std::abs(x), std::abs(y)});
}

// Extended nonnegative real with an explicit infinity tag.
struct ExtReal {
    double value = 0.0;
    bool infinite = false;

    static ExtReal inf() { return {0.0, true}; }
    static ExtReal of(double v) { return {v, false}; }

    bool finite() const { return !infinite; }
    // strict comparison, boundary-excluding: finite and value < x by more than kParamTol
    bool strictlyBelow(double x) const { return !infinite && value < x && !nearly(value, x); }

    bool operator==(const ExtReal& o) const {
        return infinite == o.infinite && (infinite || value == o.value);
    }
};

// z^n by binary exponentiation; z = 0, n = 0 gives 1 (std::pow on complex
// returns NaN there).
inline cxd ipow(cxd z, std::size_t n) {
    cxd r{1.0, 0.0};
    while (n) {
        if (n & 1) r *= z;
        z *= z;
        n >>= 1;
    }
    return r;
}

// Three-valued verdict for tests whose hypotheses can fail to apply.
enum class Tri { No, Yes, Indeterminate };

inline const char* to_string(Tri t) {
    switch (t) {
        case Tri::No: return "no";
        case Tri::Yes: return "yes";
        default: return "indeterminate";
    }
}

} // namespace tridiag
