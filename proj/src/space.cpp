#include "tridiag/space.hpp"

#include <cmath>
#include <stdexcept>

namespace tridiag {

namespace {

// geometric certificates beyond this index are impractical to reach term by term
constexpr std::size_t kMaxCertIndex = 1u << 20;
constexpr std::size_t kMaxNormTerms = 1u << 22;
constexpr std::size_t kPartialTerms = 2048;  // uncertified partial-sum depth

} // namespace

TridiagonalSpace::TridiagonalSpace(SequencePair pair, SpaceOptions opts)
    : pair_(std::move(pair)), opts_(opts), asym_(asymptotics(pair_)) {
    if (opts_.defaultTruncation == 0)
        throw std::invalid_argument("defaultTruncation must be positive");
    if (!(opts_.tailSafetyFactor >= 1.0))
        throw std::invalid_argument("tailSafetyFactor must be >= 1");
    const double rmax = std::max(std::abs(pair_.a.base()), std::abs(pair_.b.base()));
    unitRadius_ = nearly(rmax, 1.0);
}

bool TridiagonalSpace::tailCertified() const {
    return asym_.tridiagLessThanOne && asym_.geomN <= kMaxCertIndex;
}

cxd basis_eval(const TridiagonalSpace& sp, std::size_t n, cxd z) {
    const auto& p = sp.pair();
    return (p.a.term(n) + p.b.term(n) * z) * ipow(z, n);
}

cxd kernel_eval(const TridiagonalSpace& sp, cxd z, cxd w, std::size_t N) {
    if (N < 1) throw std::invalid_argument("kernel truncation must be >= 1");
    const auto& p = sp.pair();
    cxd sum = 0.0;
    cxd zn = 1.0, wn = 1.0;  // z^n, w^n
    for (std::size_t n = 0; n < N; ++n) {
        const cxd fz = (p.a.term(n) + p.b.term(n) * z) * zn;
        const cxd fw = (p.a.term(n) + p.b.term(n) * w) * wn;
        sum += fz * std::conj(fw);
        zn *= z;
        wn *= w;
    }
    return sum;
}

cxd kernel_eval_tridiag(const TridiagonalSpace& sp, cxd z, cxd w, std::size_t N) {
    if (N < 1) throw std::invalid_argument("kernel truncation must be >= 1");
    const auto& p = sp.pair();
    const cxd wb = std::conj(w);

    // diagonal: |a_0|^2 + sum_{1<=n<N} (|a_n|^2 + |b_{n-1}|^2) z^n wbar^n,
    // closed consistently with the basis truncation by the |b_{N-1}|^2 term
    cxd sum = std::norm(p.a.term(0));
    cxd zw = z * wb;
    cxd zwn = zw;
    for (std::size_t n = 1; n < N; ++n) {
        sum += (std::norm(p.a.term(n)) + std::norm(p.b.term(n - 1))) * zwn;
        zwn *= zw;
    }
    sum += std::norm(p.b.term(N - 1)) * zwn;

    // first superdiagonal: sum_{n<N} a_n conj(b_n) z^n wbar^{n+1}
    cxd zn = 1.0, wbn = 1.0;
    for (std::size_t n = 0; n < N; ++n) {
        sum += p.a.term(n) * std::conj(p.b.term(n)) * zn * wbn * wb;
        sum += std::conj(p.a.term(n)) * p.b.term(n) * zn * z * wbn;
        zn *= z;
        wbn *= wb;
    }
    return sum;
}

MonomialExpansion monomial_expand(const TridiagonalSpace& sp, std::size_t n, std::size_t J) {
    const auto& p = sp.pair();
    MonomialExpansion ex;
    ex.n = n;
    ex.coefficients.resize(J + 1);
    cxd run = 1.0 / p.a.term(n);
    ex.coefficients[0] = run;
    for (std::size_t j = 1; j <= J; ++j) {
        run *= -p.b.term(n + j - 1) / p.a.term(n + j);
        ex.coefficients[j] = run;
    }

    const auto& as = sp.asym();
    if (sp.tailCertified()) {
        const double r = as.geomR;
        const double geomFactor = r * r / (1.0 - r * r);
        double t = std::abs(run);  // |alpha_{n+J}|
        double extra = 0.0;
        std::size_t j = J;
        // extend explicitly until the geometric regime covers the tail
        while (n + j < as.geomN && j < J + kMaxCertIndex) {
            ++j;
            t *= std::abs(p.b.term(n + j - 1) / p.a.term(n + j));
            extra += t * t;
        }
        ex.tailBound = sp.options().tailSafetyFactor * (extra + t * t * geomFactor);
    }
    return ex;
}

NormResult monomial_norm_sq(const TridiagonalSpace& sp, std::size_t n) {
    const auto& p = sp.pair();
    const auto& as = sp.asym();
    NormResult res;

    double t = 1.0 / std::abs(p.a.term(n));  // running |alpha_{n+j}|
    double sum = t * t;

    if (sp.tailCertified()) {
        const double r = as.geomR;
        const double geomFactor = r * r / (1.0 - r * r) * sp.options().tailSafetyFactor;
        std::size_t j = 0;
        while (j < kMaxNormTerms) {
            if (n + j >= as.geomN) {
                const double tail = t * t * geomFactor;
                if (tail <= 1e-12 * sum) {
                    res.normSq = sum;
                    res.relTail = tail / sum;
                    res.certified = true;
                    return res;
                }
            }
            ++j;
            t *= std::abs(p.b.term(n + j - 1) / p.a.term(n + j));
            sum += t * t;
        }
    } else {
        for (std::size_t j = 1; j <= kPartialTerms; ++j) {
            t *= std::abs(p.b.term(n + j - 1) / p.a.term(n + j));
            sum += t * t;
            if (t * t <= 1e-30 * sum) break;
        }
    }
    res.normSq = sum;
    res.relTail = 0.0;
    res.certified = false;  // lower bound only
    return res;
}

double monomial_norm(const TridiagonalSpace& sp, std::size_t n) {
    return std::sqrt(monomial_norm_sq(sp, n).normSq);
}

std::vector<cxd> coeffs_to_basis(const TridiagonalSpace& sp,
                                 std::span<const cxd> powerCoeffs, std::size_t depth) {
    if (powerCoeffs.size() > depth)
        throw std::invalid_argument("power coefficient vector longer than requested depth");
    const auto& p = sp.pair();
    std::vector<cxd> x(depth, cxd{});
    cxd prev = 0.0;
    for (std::size_t j = 0; j < depth; ++j) {
        const cxd cj = j < powerCoeffs.size() ? powerCoeffs[j] : cxd{};
        const cxd bj1 = j == 0 ? cxd{} : p.b.term(j - 1);
        x[j] = (cj - bj1 * prev) / p.a.term(j);
        prev = x[j];
    }
    return x;
}

std::vector<cxd> basis_to_coeffs(const TridiagonalSpace& sp,
                                 std::span<const cxd> basisCoords) {
    const auto& p = sp.pair();
    const std::size_t L = basisCoords.size();
    std::vector<cxd> A(L + 1, cxd{});
    if (L == 0) return A;
    A[0] = basisCoords[0] * p.a.term(0);
    for (std::size_t nvar = 1; nvar < L; ++nvar)
        A[nvar] = basisCoords[nvar - 1] * p.b.term(nvar - 1) + basisCoords[nvar] * p.a.term(nvar);
    A[L] = basisCoords[L - 1] * p.b.term(L - 1);
    return A;
}

KernelDerivNorm kernel_deriv_norm(const TridiagonalSpace& sp, std::size_t n) {
    const auto& p = sp.pair();
    // log(|a_n|^2 + |b_{n-1}|^2) via the dominant term, overflow-safe
    const double la = p.a.logAbsTerm(n);
    double logDiag;
    if (n == 0) {
        logDiag = 2.0 * la;  // b_{-1} := 0
    } else {
        const double lb = p.b.logAbsTerm(n - 1);
        const double m = std::max(la, lb);
        logDiag = 2.0 * m + std::log1p(std::exp(2.0 * (std::min(la, lb) - m)));
    }
    KernelDerivNorm out;
    out.logValue = std::lgamma(static_cast<double>(n) + 1.0) + 0.5 * logDiag;
    out.value = std::exp(out.logValue);
    return out;
}

NormEstimateReport norm_estimates(const TridiagonalSpace& sp,
                                  std::size_t nBegin, std::size_t nEnd) {
    if (nEnd < nBegin) throw std::invalid_argument("empty range");
    const auto& p = sp.pair();
    NormEstimateReport rep;
    rep.nBegin = nBegin;
    rep.nEnd = nEnd;
    rep.norms.reserve(nEnd - nBegin);
    rep.m1Valid = true;
    for (std::size_t n = nBegin; n < nEnd; ++n) {
        const NormResult nr = monomial_norm_sq(sp, n);
        rep.certified = rep.certified && nr.certified;
        const double norm = std::sqrt(nr.normSq);
        rep.norms.push_back(norm);
        const double absA = std::abs(p.a.term(n));
        rep.m2 = std::max(rep.m2, norm * absA);
        if (n >= 1) {
            const double absCA = std::abs(p.c(n)) * absA;
            if (absCA == 0.0) rep.m1Valid = false;
            else rep.m1 = std::max(rep.m1, norm * absCA);
        }
    }
    return rep;
}

} // namespace tridiag
