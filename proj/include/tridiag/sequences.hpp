#pragma once

// Parametric sequence families  x_n = C * rho^n * (n+1)^p  (C, rho nonzero
// complex, p real) with finitely many per-index overrides, and the exact
// asymptotic classification built on them.
//
// The restricted shape makes every sup / lim / limsup / series criterion used
// by the toolkit exactly decidable from (|C|, |rho|, p); finitely many
// overrides never change an asymptotic verdict and are ignored by the
// decision table. Finite-horizon numeric scans are advisory cross-checks,
// never verdicts.

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "tridiag/types.hpp"

namespace tridiag {

class SequenceFamily {
public:
    // Throws std::invalid_argument on zero coeff/base or a zero override.
    SequenceFamily(cxd coeff, cxd base, double power,
                   std::map<std::size_t, cxd> overrides = {});

    // overrides[n] if present, else C * rho^n * (n+1)^p; never zero
    cxd term(std::size_t n) const;
    // log|term(n)|, safe where term itself would overflow
    double logAbsTerm(std::size_t n) const;

    cxd coeff() const { return coeff_; }
    cxd base() const { return base_; }
    double power() const { return power_; }
    const std::map<std::size_t, cxd>& overrides() const { return overrides_; }
    bool hasOverrides() const { return !overrides_.empty(); }
    std::size_t lastOverrideIndex() const;  // 0 when no overrides

private:
    cxd coeff_{1.0, 0.0};
    cxd base_{1.0, 0.0};
    double power_ = 0.0;
    std::map<std::size_t, cxd> overrides_;
};

// Free-function spelling of term evaluation.
inline cxd eval(const SequenceFamily& f, std::size_t n) { return f.term(n); }

// Immutable pair (a, b) generating the space H_{a,b}.
struct SequencePair {
    SequenceFamily a;
    SequenceFamily b;

    // c_n = b_n/a_n - b_{n-1}/a_{n-1}, n >= 1
    cxd c(std::size_t n) const;
};

// Asymptotic magnitude model |x_n| ~ coeff * base^n * (n+1)^power, with an
// explicit tag for sequences that cancel identically.
struct GrowthRate {
    double coeff = 0.0;
    double base = 0.0;
    double power = 0.0;
    bool zero = false;

    static GrowthRate zeroRate() { return {0.0, 0.0, 0.0, true}; }

    GrowthRate scaledBase(double factor) const {
        if (zero) return *this;
        return {coeff, base * factor, power, false};
    }
    GrowthRate times(const GrowthRate& o) const {
        if (zero || o.zero) return zeroRate();
        return {coeff * o.coeff, base * o.base, power + o.power, false};
    }

    bool supInfinite() const {
        if (zero) return false;
        if (nearly(base, 1.0)) return power > kParamTol;
        return base > 1.0;
    }
    bool limInfinite() const { return supInfinite(); }
    bool limZero() const {
        if (zero) return true;
        if (nearly(base, 1.0)) return power < -kParamTol;
        return base < 1.0;
    }
    bool bounded() const {
        if (zero) return true;
        if (nearly(base, 1.0)) return power <= kParamTol;
        return base < 1.0;
    }
    // sum |x_n|^-2 < infinity; false for the zero sequence
    bool inverseSquareSummable() const {
        if (zero) return false;
        if (nearly(base, 1.0)) return 2.0 * power > 1.0 + kParamTol;
        return base > 1.0;
    }
    ExtReal limAbs() const {
        if (limZero()) return ExtReal::of(0.0);
        if (limInfinite()) return ExtReal::inf();
        return ExtReal::of(coeff);  // base == 1, power == 0
    }
};

// Larger of two magnitude families (asymptotics of |x_n| + |y_n|).
GrowthRate max_growth(const GrowthRate& x, const GrowthRate& y);

enum class CZeroStatus {
    AllNonzero,              // c_n != 0 for every n >= 1 checked
    ZeroAtFinitelyMany,      // asymptotically nonzero, but vanishes at some indices
    EventuallyIdenticallyZero
};

struct AsymptoticsReport {
    double ratioLimitA = 0.0;          // lim |a_{n+1}/a_n| = |rho_a|
    ExtReal tridiagLimsup;             // limsup |b_n / a_{n+1}|
    bool tridiagLessThanOne = false;
    bool cLimitZero = false;
    bool ratioBounded = true;          // sup |a_{n+1}/a_n| < infinity
    bool cBounded = false;
    CZeroStatus cZeroStatus = CZeroStatus::AllNonzero;

    // Geometric tail certificate: |b_n/a_{n+1}| <= geomR for all n >= geomN,
    // overrides included. Valid iff tridiagLessThanOne.
    double geomR = 0.0;
    std::size_t geomN = 0;

    GrowthRate aGrowth, bGrowth, cGrowth, tridiagGrowth, kernelDiagGrowth;
};

AsymptoticsReport asymptotics(const SequencePair& pair);

struct DivergenceTests {
    bool supInfinite = false;            // sup |lambda^n a_n| = infinity
    bool limInfinite = false;            // lim |lambda^n a_n| = infinity
    bool inverseSquareSummable = false;  // sum |lambda^n a_n|^-2 < infinity
    Tri supCAInfinite = Tri::Indeterminate;  // sup |lambda^n c_n a_n|
    Tri limCAInfinite = Tri::Indeterminate;
    bool supKernelDiagInfinite = false;  // sup |lambda|^n (|a_n| + |b_{n-1}|)
    bool limKernelDiagInfinite = false;
};

// All verdicts depend on lambda only through its modulus.
DivergenceTests divergence_tests(const SequencePair& pair, double lambdaAbs);

} // namespace tridiag
