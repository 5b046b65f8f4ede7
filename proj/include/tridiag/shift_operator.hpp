#pragma once

// The backward shift B on H_{a,b}: truncated matrix in the orthonormal basis,
// boundedness reports, and the exact band decomposition
// [B] = [B_w] + [D] + sum_m [F_m] with per-band norms and compactness
// diagnostics.
//
// Matrix layout: superdiagonal a_n/a_{n-1}; diagonal (b_0/a_0, c_1, c_2, ...);
// column 0 below the diagonal carries (-1)^j b_0^2 b_1...b_{j-1}/(a_0...a_j);
// column n >= 1 carries (-1)^j c_n b_n...b_{n+j-1}/(a_{n+1}...a_{n+j}) at row
// n+j. All entries are built from ratio products, so large raw terms never
// appear.

#include <string>
#include <vector>

#include "tridiag/dense_matrix.hpp"
#include "tridiag/space.hpp"

namespace tridiag {

// N x N truncation; throws on N < 2.
DenseMatrix build_matrix(const TridiagonalSpace& sp, std::size_t N);

// Coefficient backward shift: drops the constant coefficient.
std::vector<cxd> apply_shift_coeffs(std::span<const cxd> powerCoeffs);

enum class BoundednessVerdict { Bounded, NotProvenBounded, Unbounded, Indeterminate };

const char* to_string(BoundednessVerdict v);

struct BoundednessReport {
    bool necessaryOk = false;   // ratio and c_n bounded
    Tri sufficientOk = Tri::Indeterminate;
    bool strongOk = false;      // sup ratio < inf and limsup |b_n/a_{n+1}| < 1
    ExtReal tridiagLimsup;
    double bandSeriesPartialSum = 0.0;  // advisory numeric partial sum
    std::size_t horizon = 0;
    BoundednessVerdict verdict = BoundednessVerdict::Indeterminate;
    std::string provenance;
};

// Analytic verdicts from the family decision table; numeric partial sums of
// the band-norm series up to `horizon` attached as advisory evidence.
// Throws on horizon < 16.
BoundednessReport boundedness_report(const SequencePair& pair, std::size_t horizon);

struct Decomposition {
    std::size_t N = 0, M = 0;
    std::vector<cxd> weights;   // w_n = a_n/a_{n-1}, n = 1..N-1
    std::vector<cxd> diagonal;  // b_0/a_0, c_1, ..., c_{N-1}

    struct Band {
        std::size_t m = 0;
        cxd firstColumnEntry;            // row m, column 0
        std::vector<cxd> columnEntries;  // column j at row j+m, j = 1..N-1-m
        double norm = 0.0;               // max |entry| over the truncation
        bool supFiniteAnalytic = false;  // table certifies sup_j stays bounded
    };
    std::vector<Band> bands;  // m = 1..M

    double residualWithinBands = 0.0;  // entries of depth <= M: exact zero expected
    double residualBeyondBands = 0.0;  // dropped deeper entries (zero iff M = N-1)
};

// Exact splitting of the truncation; throws unless 1 <= M < N.
Decomposition decompose(const TridiagonalSpace& sp, std::size_t N, std::size_t M);

struct CompactnessDiagnostic {
    bool hypothesesHold = false;   // sup ratio < inf, limsup < 1, c_n -> 0
    bool certifiedCompact = false;
    std::size_t decayIndex = 0;    // diagonal and band entries < tol from this row on
    double tol = 0.0;
    std::string note;
};

CompactnessDiagnostic compactness_check(const TridiagonalSpace& sp, std::size_t N, double tol);

} // namespace tridiag
