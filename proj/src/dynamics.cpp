#include "tridiag/dynamics.hpp"

#include <cmath>
#include <stdexcept>

namespace tridiag {

DynamicsQuery::DynamicsQuery(cxd lambdaIn) : lambda(lambdaIn), lambdaAbs(std::abs(lambdaIn)) {
    if (!(lambdaAbs > 0.0)) throw std::invalid_argument("lambda must be nonzero");
}

const char* to_string(HcVerdict v) {
    switch (v) {
        case HcVerdict::YesIff: return "YesIff";
        case HcVerdict::YesSufficient: return "YesSufficient";
        case HcVerdict::NoIff: return "NoIff";
        case HcVerdict::NoNecessary: return "NoNecessary";
        default: return "Indeterminate";
    }
}

const char* to_string(ChaosVerdict v) {
    switch (v) {
        case ChaosVerdict::Yes: return "Yes";
        case ChaosVerdict::No: return "No";
        default: return "Indeterminate";
    }
}

bool is_yes(HcVerdict v) { return v == HcVerdict::YesIff || v == HcVerdict::YesSufficient; }

DynamicsReport classify(const SequencePair& pair, const DynamicsQuery& q) {
    DynamicsReport rep;
    rep.lambdaAbs = q.lambdaAbs;
    rep.boundedness = boundedness_report(pair, 64);

    const HcSubspaceResult sub = hc_subspace_check(pair, cxd{q.lambdaAbs, 0.0});
    rep.hypercyclicSubspace = sub.hasSubspace;
    rep.subspaceClause = sub.provenance;

    if (rep.boundedness.verdict != BoundednessVerdict::Bounded) {
        // nothing below applies to an operator not proven bounded
        return rep;
    }

    const AsymptoticsReport as = asymptotics(pair);
    const DivergenceTests dt = divergence_tests(pair, q.lambdaAbs);

    if (as.tridiagLessThanOne) {
        rep.hypercyclic = dt.supInfinite ? HcVerdict::YesIff : HcVerdict::NoIff;
        rep.hypercyclicClause = "4.2(iii)";
        rep.mixing = dt.limInfinite ? HcVerdict::YesIff : HcVerdict::NoIff;
        rep.mixingClause = "4.3(iii)";
        rep.chaotic = dt.inverseSquareSummable ? ChaosVerdict::Yes : ChaosVerdict::No;
        rep.chaoticClause = "4.4(iii)";
        return rep;
    }

    // bounded but outside the equivalence regime: one-sided clauses only;
    // the sufficient clause needs c_n != 0 for every n
    if (as.cZeroStatus == CZeroStatus::AllNonzero && dt.supCAInfinite == Tri::Yes) {
        rep.hypercyclic = HcVerdict::YesSufficient;
        rep.hypercyclicClause = "4.2(i)";
    } else if (!dt.supKernelDiagInfinite) {
        rep.hypercyclic = HcVerdict::NoNecessary;
        rep.hypercyclicClause = "4.2(ii)";
    }
    if (as.cZeroStatus == CZeroStatus::AllNonzero && dt.limCAInfinite == Tri::Yes) {
        rep.mixing = HcVerdict::YesSufficient;
        rep.mixingClause = "4.3(i)";
    } else if (!dt.limKernelDiagInfinite) {
        rep.mixing = HcVerdict::NoNecessary;
        rep.mixingClause = "4.3(ii)";
    }
    // the chaos equivalence is stated only under limsup < 1
    rep.chaotic = ChaosVerdict::Indeterminate;
    rep.chaoticClause = "";
    return rep;
}

WitnessTrace gethner_shapiro_witness(const TridiagonalSpace& sp, const DynamicsQuery& q,
                                     std::size_t m, std::size_t nMax) {
    WitnessTrace tr;
    tr.values.reserve(nMax + 1);
    double scale = 1.0;  // |lambda|^{-n}
    for (std::size_t n = 0; n <= nMax; ++n) {
        const NormResult nr = monomial_norm_sq(sp, n + m);
        tr.certifiedNorms = tr.certifiedNorms && nr.certified;
        tr.values.push_back(scale * std::sqrt(nr.normSq));
        scale /= q.lambdaAbs;
    }
    return tr;
}

namespace {

// lambda^{-p} with integer p via repeated multiplication
cxd inv_lambda_pow(cxd lambda, std::size_t p) {
    const cxd inv = cxd{1.0, 0.0} / lambda;
    cxd r{1.0, 0.0};
    for (std::size_t i = 0; i < p; ++i) r *= inv;
    return r;
}

std::size_t poly_degree(std::span<const cxd> coeffs) {
    std::size_t deg = 0;
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        if (coeffs[i] != cxd{}) deg = i;
    return deg;
}

} // namespace

PeriodicVectorResult periodic_vector(const TridiagonalSpace& sp, const DynamicsQuery& q,
                                     std::size_t period, std::span<const cxd> fPowerCoeffs,
                                     std::size_t K, std::size_t N) {
    if (period < 1) throw std::invalid_argument("period must be >= 1");
    if (fPowerCoeffs.empty()) throw std::invalid_argument("f must be a nonzero polynomial");
    const std::size_t degF = poly_degree(fPowerCoeffs);
    if (K * period + degF >= N)
        throw std::invalid_argument("matrix truncation too small for K*period + deg f");

    PeriodicVectorResult out;
    out.experimental = classify(sp.pair(), q).chaotic != ChaosVerdict::Yes;

    // y = sum_k lambda^{-kp} z^{kp} * f in power coefficients
    out.powerCoeffs.assign(K * period + degF + 1, cxd{});
    const cxd stepScale = inv_lambda_pow(q.lambda, period);
    cxd scale{1.0, 0.0};
    for (std::size_t k = 0; k <= K; ++k) {
        for (std::size_t j = 0; j <= degF; ++j)
            out.powerCoeffs[k * period + j] += scale * fPowerCoeffs[j];
        scale *= stepScale;
    }

    // exact coefficient-space residual y - (lambda B)^p y
    {
        std::vector<cxd> shifted(out.powerCoeffs.begin() + static_cast<std::ptrdiff_t>(period),
                                 out.powerCoeffs.end());
        cxd lp{1.0, 0.0};
        for (std::size_t i = 0; i < period; ++i) lp *= q.lambda;
        out.coeffResidual = out.powerCoeffs;
        for (std::size_t i = 0; i < shifted.size(); ++i) out.coeffResidual[i] -= lp * shifted[i];
    }

    // truncated-matrix residual in basis coordinates
    out.basisCoords = coeffs_to_basis(sp, out.powerCoeffs, N);
    const DenseMatrix B = build_matrix(sp, N);
    std::vector<cxd> v = out.basisCoords;
    for (std::size_t i = 0; i < period; ++i) {
        v = B.apply(v);
        for (cxd& e : v) e *= q.lambda;
    }
    double s = 0.0;
    for (std::size_t i = 0; i < N; ++i) s += std::norm(out.basisCoords[i] - v[i]);
    out.residualNorm = std::sqrt(s);
    return out;
}

SeriesTrace unconditional_series_check(const TridiagonalSpace& sp, const DynamicsQuery& q,
                                       std::size_t nMax) {
    const auto& p = sp.pair();
    SeriesTrace tr;
    tr.convergesAnalytic = divergence_tests(p, q.lambdaAbs).inverseSquareSummable;
    tr.incrementNorms.reserve(nMax + 1);
    tr.partialSumNorms.reserve(nMax + 1);

    const std::size_t depth = nMax + 64;
    std::vector<cxd> acc(depth, cxd{});
    double sumSq = 0.0;
    cxd scale{1.0, 0.0};
    const cxd invLambda = cxd{1.0, 0.0} / q.lambda;
    for (std::size_t n = 0; n <= nMax; ++n) {
        // basis coordinates of z^n enter at indices n, n+1, ...
        cxd alpha = cxd{1.0, 0.0} / p.a.term(n);
        for (std::size_t idx = n; idx < depth; ++idx) {
            const cxd add = scale * alpha;
            if (std::abs(add) < 1e-300) break;
            const cxd old = acc[idx];
            acc[idx] += add;
            sumSq += std::norm(acc[idx]) - std::norm(old);
            if (idx + 1 < depth) alpha *= -p.b.term(idx) / p.a.term(idx + 1);
        }
        tr.incrementNorms.push_back(std::abs(scale) * monomial_norm(sp, n));
        tr.partialSumNorms.push_back(std::sqrt(std::max(0.0, sumSq)));
        scale *= invLambda;
    }
    if (!tr.convergesAnalytic && tr.incrementNorms.size() >= 2 &&
        tr.incrementNorms.back() >= tr.incrementNorms.front())
        tr.divergenceFlagged = true;
    return tr;
}

std::vector<double> orbit(const TridiagonalSpace& sp, const DynamicsQuery& q,
                          std::span<const cxd> basisCoords, std::size_t steps, std::size_t N) {
    if (basisCoords.empty()) throw std::invalid_argument("empty start vector");
    if (steps + basisCoords.size() > N)
        throw std::invalid_argument("truncation too small for steps + degree");

    std::vector<cxd> coeffs = basis_to_coeffs(sp, basisCoords);
    std::vector<double> trace;
    trace.reserve(steps + 1);
    for (std::size_t k = 0; k <= steps; ++k) {
        const std::vector<cxd> yb = coeffs_to_basis(sp, coeffs, std::max(N, coeffs.size()));
        double s = 0.0;
        for (const cxd& v : yb) s += std::norm(v);
        trace.push_back(std::sqrt(s));
        if (k == steps) break;
        coeffs = apply_shift_coeffs(coeffs);
        for (cxd& v : coeffs) v *= q.lambda;
    }
    return trace;
}

} // namespace tridiag
