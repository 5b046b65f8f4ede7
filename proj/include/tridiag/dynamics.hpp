#pragma once

// Classification of lambda*B as hypercyclic / mixing / chaotic, plus finite
// numeric witnesses: decreasing-norm traces for the hypercyclicity criterion,
// unconditional-series partial sums, truncated periodic-vector constructions,
// and orbit norm traces.
//
// Verdicts come from the analytic decision tables, never from finite traces;
// traces are attached as evidence. In the regime limsup |b_n/a_{n+1}| < 1 the
// three properties are exact equivalences on |lambda^n a_n|; outside it only
// the one-sided clauses can decide and reports may stay Indeterminate.

#include <string>
#include <vector>

#include "tridiag/shift_operator.hpp"
#include "tridiag/space.hpp"
#include "tridiag/spectrum.hpp"

namespace tridiag {

struct DynamicsQuery {
    explicit DynamicsQuery(cxd lambdaIn);
    cxd lambda;
    double lambdaAbs;
};

enum class HcVerdict { YesIff, YesSufficient, NoIff, NoNecessary, Indeterminate };
enum class ChaosVerdict { Yes, No, Indeterminate };

const char* to_string(HcVerdict v);
const char* to_string(ChaosVerdict v);
bool is_yes(HcVerdict v);

struct DynamicsReport {
    BoundednessReport boundedness;
    double lambdaAbs = 0.0;

    HcVerdict hypercyclic = HcVerdict::Indeterminate;
    std::string hypercyclicClause;
    HcVerdict mixing = HcVerdict::Indeterminate;
    std::string mixingClause;
    ChaosVerdict chaotic = ChaosVerdict::Indeterminate;
    std::string chaoticClause;

    Tri hypercyclicSubspace = Tri::Indeterminate;
    std::string subspaceClause;
};

// Pure function of (pair, |lambda|).
DynamicsReport classify(const SequencePair& pair, const DynamicsQuery& q);

struct WitnessTrace {
    std::vector<double> values;
    bool certifiedNorms = true;
};

// |lambda|^{-n} ||z^{n+m}|| for n = 0..nMax: the norms of lambda^{-n} S^n z^m
// under S(z^k) = z^{k+1}. Tends to 0 exactly in the mixing regime.
WitnessTrace gethner_shapiro_witness(const TridiagonalSpace& sp, const DynamicsQuery& q,
                                     std::size_t m, std::size_t nMax);

struct PeriodicVectorResult {
    std::vector<cxd> basisCoords;    // y, truncated to N basis coordinates
    std::vector<cxd> powerCoeffs;    // exact power coefficients of y
    std::vector<cxd> coeffResidual;  // y - (lambda B)^p y in power coefficients (exact)
    double residualNorm = 0.0;       // ||(lambda B)^p y - y|| via the truncated matrix
    bool experimental = false;       // set when the chaos verdict is not Yes
};

// y = sum_{k=0..K} S^{kp} f with S(z^n) = lambda^{-1} z^{n+1}; f given by its
// power coefficients. Requires K*p + deg(f) < N.
PeriodicVectorResult periodic_vector(const TridiagonalSpace& sp, const DynamicsQuery& q,
                                     std::size_t period, std::span<const cxd> fPowerCoeffs,
                                     std::size_t K, std::size_t N);

struct SeriesTrace {
    std::vector<double> incrementNorms;   // ||lambda^{-n} z^n||
    std::vector<double> partialSumNorms;  // running coefficient-vector norms
    bool convergesAnalytic = false;
    bool divergenceFlagged = false;
};

// Partial sums of sum_n lambda^{-n} z^n in basis coordinates.
SeriesTrace unconditional_series_check(const TridiagonalSpace& sp, const DynamicsQuery& q,
                                       std::size_t nMax);

// ||(lambda B)^k x|| for k = 0..steps. The shift is applied exactly on power
// coefficients (polynomials are eventually annihilated exactly); norms come
// from basis coordinates at depth N. Requires steps + x.size() <= N.
std::vector<double> orbit(const TridiagonalSpace& sp, const DynamicsQuery& q,
                          std::span<const cxd> basisCoords, std::size_t steps, std::size_t N);

} // namespace tridiag
