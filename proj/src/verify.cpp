#include "tridiag/verify.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "tridiag/shift_operator.hpp"

namespace tridiag {

double matrix_columns_deviation(const TridiagonalSpace& sp, const DenseMatrix& candidate) {
    const std::size_t N = candidate.rows();
    const auto& p = sp.pair();
    double dev = 0.0;
    for (std::size_t n = 0; n < N; ++n) {
        // power coefficients of f_n, shifted down by one
        std::vector<cxd> fn(n + 2, cxd{});
        fn[n] = p.a.term(n);
        fn[n + 1] = p.b.term(n);
        const std::vector<cxd> shifted = apply_shift_coeffs(fn);
        const std::vector<cxd> col = coeffs_to_basis(sp, shifted, N);
        for (std::size_t i = 0; i < N; ++i)
            dev = std::max(dev, std::abs(col[i] - candidate.at(i, n)));
    }
    return dev;
}

double monomial_norms_deviation(const TridiagonalSpace& sp,
                                std::span<const double> normSqByIndex) {
    const auto& as = sp.asym();
    // depth where the forward-substitution tail is negligible
    std::size_t extra = 96;
    if (as.tridiagLessThanOne && as.geomR > 0.5) {
        const double r = as.geomR;
        extra = static_cast<std::size_t>(std::ceil(std::log(1e-16) / (2.0 * std::log(r)))) + 32;
    }
    double dev = 0.0;
    for (std::size_t n = 0; n < normSqByIndex.size(); ++n) {
        std::vector<cxd> mono(n + 1, cxd{});
        mono[n] = 1.0;
        const std::size_t depth = n + 1 + std::max<std::size_t>(extra, as.geomN > n ? as.geomN - n : 0);
        const std::vector<cxd> coords = coeffs_to_basis(sp, mono, depth);
        double s = 0.0;
        for (const cxd& v : coords) s += std::norm(v);
        const double ref = normSqByIndex[n];
        dev = std::max(dev, std::abs(s - ref) / std::max(1.0, std::abs(ref)));
    }
    return dev;
}

double annulus_tables_deviation(const SequencePair& pair, const SpectralAnnulus& candidate) {
    // weight products, no cancellation of the telescoping ratio
    const std::size_t nMax = candidate.nMax, kMax = candidate.kMax;
    std::vector<double> weightAbs(nMax + kMax + 1, 0.0);  // |a_i / a_{i-1}|
    for (std::size_t i = 1; i <= nMax + kMax; ++i)
        weightAbs[i] = std::abs(pair.a.term(i) / pair.a.term(i - 1));

    double dev = 0.0;
    for (std::size_t n = 1; n <= nMax; ++n) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = 0.0;
        for (std::size_t k = 1; k <= kMax; ++k) {
            double prod = 1.0;
            for (std::size_t i = 1; i <= n; ++i) prod *= weightAbs[k + i];
            lo = std::min(lo, prod);
            hi = std::max(hi, prod);
        }
        const double inv = 1.0 / static_cast<double>(n);
        dev = std::max(dev, std::abs(std::pow(lo, inv) - candidate.finiteInner[n - 1]));
        dev = std::max(dev, std::abs(std::pow(hi, inv) - candidate.finiteOuter[n - 1]));
    }
    return dev;
}

OracleReport oracle_matrix_columns(const TridiagonalSpace& sp, std::size_t N, double tolerance) {
    if (N > 512) throw std::invalid_argument("column oracle limited to N <= 512");
    OracleReport rep;
    rep.oracle = "matrix-columns";
    rep.instance = "N=" + std::to_string(N);
    rep.tolerance = tolerance;
    rep.maxDeviation = matrix_columns_deviation(sp, build_matrix(sp, N));
    rep.pass = rep.maxDeviation <= tolerance;
    return rep;
}

OracleReport oracle_monomial_norms(const TridiagonalSpace& sp, std::size_t nMax,
                                   double tolerance) {
    OracleReport rep;
    rep.oracle = "monomial-norms";
    rep.instance = "nMax=" + std::to_string(nMax);
    rep.tolerance = tolerance;
    std::vector<double> normSq(nMax + 1, 0.0);
    for (std::size_t n = 0; n <= nMax; ++n) normSq[n] = monomial_norm_sq(sp, n).normSq;
    rep.maxDeviation = monomial_norms_deviation(sp, normSq);
    rep.pass = rep.maxDeviation <= tolerance;
    return rep;
}

OracleReport oracle_annulus(const SequencePair& pair,
                            std::span<const std::pair<std::size_t, std::size_t>> horizons,
                            double tolerance) {
    OracleReport rep;
    rep.oracle = "annulus";
    rep.tolerance = tolerance;
    for (const auto& [nMax, kMax] : horizons) {
        rep.instance += "(" + std::to_string(nMax) + "," + std::to_string(kMax) + ")";
        rep.maxDeviation = std::max(
            rep.maxDeviation, annulus_tables_deviation(pair, essential_spectrum(pair, nMax, kMax)));
    }
    rep.pass = rep.maxDeviation <= tolerance;
    return rep;
}

std::vector<OracleReport> run_all_oracles(const TridiagonalSpace& sp) {
    std::vector<OracleReport> reps;
    reps.push_back(oracle_matrix_columns(sp, 64));
    reps.push_back(oracle_monomial_norms(sp, 64));
    const std::pair<std::size_t, std::size_t> horizons[] = {{8, 64}, {24, 256}};
    reps.push_back(oracle_annulus(sp.pair(), horizons));
    return reps;
}

} // namespace tridiag
