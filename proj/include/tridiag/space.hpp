#pragma once

// The space H_{a,b}: orthonormal basis f_n(z) = (a_n + b_n z) z^n, kernel
// evaluation (two independently coded summation routes), monomial expansions
// z^n = sum_j alpha_{n+j} f_{n+j} with certified geometric tail bounds,
// coordinate conversions between power-series coefficients and basis
// coordinates, and the kernel-derivative norm n! (|a_n|^2 + |b_{n-1}|^2)^{1/2}.

#include <optional>
#include <span>
#include <vector>

#include "tridiag/sequences.hpp"
#include "tridiag/types.hpp"

namespace tridiag {

struct SpaceOptions {
    std::size_t defaultTruncation = 256;
    double tailSafetyFactor = 1.0;  // >= 1, multiplies certified tail bounds
};

class TridiagonalSpace {
public:
    explicit TridiagonalSpace(SequencePair pair, SpaceOptions opts = {});

    const SequencePair& pair() const { return pair_; }
    const AsymptoticsReport& asym() const { return asym_; }
    const SpaceOptions& options() const { return opts_; }
    std::size_t defaultTruncation() const { return opts_.defaultTruncation; }

    // Standing assumption: the kernel series has radius of convergence 1,
    // i.e. max(|rho_a|, |rho_b|) == 1. Recorded, not enforced.
    bool unitRadius() const { return unitRadius_; }

    // Tail certificates usable: limsup |b_n/a_{n+1}| < 1 and the certified
    // index is within practical reach.
    bool tailCertified() const;

private:
    SequencePair pair_;
    SpaceOptions opts_;
    AsymptoticsReport asym_;
    bool unitRadius_ = false;
};

cxd basis_eval(const TridiagonalSpace& sp, std::size_t n, cxd z);

// sum_{n<N} f_n(z) conj(f_n(w)); throws on N < 1
cxd kernel_eval(const TridiagonalSpace& sp, cxd z, cxd w, std::size_t N);
// the same truncation through the four tridiagonal sums; agrees with
// kernel_eval to rounding
cxd kernel_eval_tridiag(const TridiagonalSpace& sp, cxd z, cxd w, std::size_t N);

struct MonomialExpansion {
    std::size_t n = 0;
    std::vector<cxd> coefficients;    // alpha_{n+j}, j = 0..J
    std::optional<double> tailBound;  // bound on sum_{j>J} |alpha_{n+j}|^2
};
MonomialExpansion monomial_expand(const TridiagonalSpace& sp, std::size_t n, std::size_t J);

struct NormResult {
    double normSq = 0.0;
    double relTail = 0.0;    // certified relative tail bound
    bool certified = false;  // false: normSq is a lower bound (partial sum)
};
// ||z^n||^2 with certified relative tail < 1e-12 where the geometric
// certificate applies; otherwise flagged partial sum.
NormResult monomial_norm_sq(const TridiagonalSpace& sp, std::size_t n);
double monomial_norm(const TridiagonalSpace& sp, std::size_t n);

// Forward substitution for a_j x_j + b_{j-1} x_{j-1} = coeff_j (x_{-1} = 0).
// Returns basis coordinates of length `depth`; requires coeffs.size() <= depth.
std::vector<cxd> coeffs_to_basis(const TridiagonalSpace& sp,
                                 std::span<const cxd> powerCoeffs, std::size_t depth);

// A_0 = x_0 a_0, A_n = x_{n-1} b_{n-1} + x_n a_n; output length size+1.
std::vector<cxd> basis_to_coeffs(const TridiagonalSpace& sp,
                                 std::span<const cxd> basisCoords);

struct KernelDerivNorm {
    double value = 0.0;     // may overflow to +inf for large n
    double logValue = 0.0;  // always finite
};
// (d^{2n} k / dz^n dwbar^n (0,0))^{1/2} = n! (|a_n|^2 + |b_{n-1}|^2)^{1/2}
KernelDerivNorm kernel_deriv_norm(const TridiagonalSpace& sp, std::size_t n);

struct NormEstimateReport {
    std::size_t nBegin = 0, nEnd = 0;
    std::vector<double> norms;  // ||z^n||, n in [nBegin, nEnd)
    double m1 = 0.0;            // smallest M1 with ||z^n|| <= M1/|c_n a_n| on range
    bool m1Valid = false;       // false when some c_n = 0 in range
    double m2 = 0.0;            // smallest M2 with ||z^n|| <= M2/|a_n| on range
    bool certified = true;
};
NormEstimateReport norm_estimates(const TridiagonalSpace& sp,
                                  std::size_t nBegin, std::size_t nEnd);

} // namespace tridiag
