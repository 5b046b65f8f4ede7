#include "tridiag/spectrum.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace tridiag {

SpectralAnnulus essential_spectrum(const SequencePair& pair, std::size_t nMax, std::size_t kMax) {
    if (nMax < 2 || kMax < 2) throw std::invalid_argument("horizons must be >= 2");

    SpectralAnnulus ann;
    ann.innerRadius = std::abs(pair.a.base());
    ann.outerRadius = ann.innerRadius;
    ann.nMax = nMax;
    ann.kMax = kMax;
    ann.finiteInner.reserve(nMax);
    ann.finiteOuter.reserve(nMax);

    double bestInner = 0.0;
    double bestOuter = std::numeric_limits<double>::infinity();
    for (std::size_t n = 1; n <= nMax; ++n) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = 0.0;
        for (std::size_t k = 1; k <= kMax; ++k) {
            double ratio = std::abs(pair.a.term(k + n) / pair.a.term(k));
            // once |rho|^k leaves the double range the plain ratio degenerates;
            // recompute that cell in log scale
            if (!std::isfinite(ratio) || ratio == 0.0)
                ratio = std::exp(pair.a.logAbsTerm(k + n) - pair.a.logAbsTerm(k));
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
        }
        const double inv = 1.0 / static_cast<double>(n);
        const double innerN = std::pow(lo, inv);
        const double outerN = std::pow(hi, inv);
        ann.finiteInner.push_back(innerN);
        ann.finiteOuter.push_back(outerN);
        bestInner = std::max(bestInner, innerN);
        bestOuter = std::min(bestOuter, outerN);
    }
    ann.finiteInnerBest = bestInner;
    ann.finiteOuterBest = bestOuter;
    return ann;
}

HcSubspaceResult hc_subspace_check(const SequencePair& pair, cxd lambda) {
    const double labs = std::abs(lambda);
    if (!(labs > 0.0)) throw std::invalid_argument("lambda must be nonzero");

    const AsymptoticsReport as = asymptotics(pair);
    HcSubspaceResult res;
    if (!(as.ratioBounded && as.tridiagLessThanOne)) {
        res.hasSubspace = Tri::Indeterminate;
        res.provenance = "outside the strong hypotheses (sup ratio < inf, limsup < 1)";
        return res;
    }
    const DivergenceTests dt = divergence_tests(pair, labs);
    const double inner = std::abs(pair.a.base());
    const bool annulusMeetsDisc = inner * labs <= 1.0 + kParamTol;
    res.hasSubspace = (dt.supInfinite && annulusMeetsDisc) ? Tri::Yes : Tri::No;
    res.provenance = "4.5";
    return res;
}

} // namespace tridiag
