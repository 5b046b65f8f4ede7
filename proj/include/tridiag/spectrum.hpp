#pragma once

// Essential-spectrum annulus of B and the hypercyclic-subspace criterion.
//
// inner = sup_n ( inf_{k>=1} |a_{k+n}/a_k| )^{1/n}
// outer = inf_n ( sup_{k>=1} |a_{k+n}/a_k| )^{1/n}
//
// For the parametric family both radii equal |rho_a|; the (n+1)^p modulation
// washes out in the n-th root. Analytic radii are the verdict; the
// finite-horizon tables are diagnostics (they see overrides, the analytic
// values do not, and convergence is slow for p != 0).

#include <string>
#include <vector>

#include "tridiag/sequences.hpp"

namespace tridiag {

struct SpectralAnnulus {
    double innerRadius = 0.0;  // analytic, = |rho_a|
    double outerRadius = 0.0;  // analytic, = |rho_a|

    std::size_t nMax = 0, kMax = 0;
    std::vector<double> finiteInner;  // per n = 1..nMax
    std::vector<double> finiteOuter;
    double finiteInnerBest = 0.0;  // max over n
    double finiteOuterBest = 0.0;  // min over n

    bool overridesIgnoredInAnalytic = true;
};

// Throws unless nMax, kMax >= 2.
SpectralAnnulus essential_spectrum(const SequencePair& pair, std::size_t nMax, std::size_t kMax);

struct HcSubspaceResult {
    Tri hasSubspace = Tri::Indeterminate;
    std::string provenance;
};

// True iff sup |lambda^n a_n| = infinity and innerRadius <= 1/|lambda|;
// Indeterminate outside the strong hypotheses. Depends on lambda only
// through |lambda|.
HcSubspaceResult hc_subspace_check(const SequencePair& pair, cxd lambda);

} // namespace tridiag
