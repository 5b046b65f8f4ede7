#include "tridiag/sequences.hpp"

#include <cmath>
#include <stdexcept>

namespace tridiag {

namespace {

bool is_zero(cxd z) { return z.real() == 0.0 && z.imag() == 0.0; }

} // namespace

SequenceFamily::SequenceFamily(cxd coeff, cxd base, double power,
                               std::map<std::size_t, cxd> overrides)
    : coeff_(coeff), base_(base), power_(power), overrides_(std::move(overrides)) {
    if (is_zero(coeff_)) throw std::invalid_argument("sequence coefficient must be nonzero");
    if (is_zero(base_)) throw std::invalid_argument("sequence base must be nonzero");
    if (!std::isfinite(power_)) throw std::invalid_argument("sequence power must be finite");
    for (const auto& [n, v] : overrides_) {
        if (is_zero(v))
            throw std::invalid_argument("zero override at index " + std::to_string(n));
    }
}

cxd SequenceFamily::term(std::size_t n) const {
    if (auto it = overrides_.find(n); it != overrides_.end()) return it->second;
    return coeff_ * std::pow(base_, static_cast<double>(n)) *
           std::pow(static_cast<double>(n) + 1.0, power_);
}

double SequenceFamily::logAbsTerm(std::size_t n) const {
    if (auto it = overrides_.find(n); it != overrides_.end()) return std::log(std::abs(it->second));
    const double nd = static_cast<double>(n);
    return std::log(std::abs(coeff_)) + nd * std::log(std::abs(base_)) +
           power_ * std::log(nd + 1.0);
}

std::size_t SequenceFamily::lastOverrideIndex() const {
    return overrides_.empty() ? 0 : overrides_.rbegin()->first;
}

cxd SequencePair::c(std::size_t n) const {
    if (n == 0) throw std::invalid_argument("c_n is defined for n >= 1");
    return b.term(n) / a.term(n) - b.term(n - 1) / a.term(n - 1);
}

GrowthRate max_growth(const GrowthRate& x, const GrowthRate& y) {
    if (x.zero) return y;
    if (y.zero) return x;
    if (nearly(x.base, y.base)) {
        if (nearly(x.power, y.power))
            return {x.coeff + y.coeff, std::max(x.base, y.base), x.power, false};
        return x.power > y.power ? x : y;
    }
    return x.base > y.base ? x : y;
}

namespace {

GrowthRate family_growth(const SequenceFamily& f) {
    return {std::abs(f.coeff()), std::abs(f.base()), f.power(), false};
}

// Magnitude family of c_n, derived from g_n := b_n/a_n = K tau^n (n+1)^s.
//   tau == 1, s == 0 : c_n identically zero past overrides
//   tau == 1, s != 0 : c_n ~ K s (n+1)^{s-1}
//   otherwise        : c_n ~ K (tau-1)/tau * tau^n (n+1)^s
GrowthRate c_growth(const SequencePair& pair) {
    const cxd K = pair.b.coeff() / pair.a.coeff();
    const cxd tau = pair.b.base() / pair.a.base();
    const double s = pair.b.power() - pair.a.power();
    const double t = std::abs(pair.b.base()) / std::abs(pair.a.base());
    const bool tauOne = std::abs(tau - cxd(1.0, 0.0)) <= kParamTol;
    if (tauOne && std::abs(s) <= kParamTol) return GrowthRate::zeroRate();
    if (tauOne) return {std::abs(K) * std::abs(s), t, s - 1.0, false};
    return {std::abs(K) * std::abs(tau - cxd(1.0, 0.0)) / std::abs(tau), t, s, false};
}

GrowthRate tridiag_growth(const SequencePair& pair) {
    const double coeff =
        std::abs(pair.b.coeff()) / (std::abs(pair.a.coeff()) * std::abs(pair.a.base()));
    const double t = std::abs(pair.b.base()) / std::abs(pair.a.base());
    return {coeff, t, pair.b.power() - pair.a.power(), false};
}

// |b_{n-1}| as a family in n (the n = 0 term |b_{-1}| := 0 is irrelevant
// asymptotically).
GrowthRate b_shift_growth(const SequenceFamily& b) {
    return {std::abs(b.coeff()) / std::abs(b.base()), std::abs(b.base()), b.power(), false};
}

// |b_n / a_{n+1}| in log scale; immune to term under/overflow at large n
double actual_ratio(const SequencePair& pair, std::size_t n) {
    return std::exp(pair.b.logAbsTerm(n) - pair.a.logAbsTerm(n + 1));
}

// Smallest convenient index from which the override-free |b_n/a_{n+1}| stays
// <= r. Uses the monotone envelope K1 t^n (n+1)^s >= h(n), s = p_b - p_a,
// K1 = coeff * 2^{|p_a|}.
std::size_t family_tail_index(const SequencePair& pair, const GrowthRate& tg, double r) {
    const double t = tg.base;
    const double s = pair.b.power() - pair.a.power();
    const double pa = pair.a.power();
    const double logR = std::log(r);

    if (nearly(t, 1.0) && std::abs(s) <= kParamTol) {
        // h(n) = coeff * ((n+1)/(n+2))^{pa}
        if (pa >= 0.0) return 0;  // h <= coeff = limsup < r
        const double q = std::pow(r / tg.coeff, 1.0 / std::abs(pa));  // > 1
        const double n1 = 1.0 / (q - 1.0) - 1.0;
        return n1 <= 0.0 ? 0 : static_cast<std::size_t>(std::ceil(n1));
    }

    const double logK1 = std::log(tg.coeff) + std::abs(pa) * std::log(2.0);
    auto logEnv = [&](double n) { return logK1 + n * std::log(t) + s * std::log(n + 1.0); };

    // start of the envelope's monotone-decreasing range
    std::size_t n0 = 0;
    if (t < 1.0 && s > 0.0)
        n0 = static_cast<std::size_t>(std::ceil(s / (-std::log(t)))) + 1;

    // doubling search then binary refine over the monotone range
    std::size_t lo = n0;
    if (logEnv(static_cast<double>(lo)) <= logR) return lo;
    std::size_t hi = lo + 1;
    while (logEnv(static_cast<double>(hi)) > logR) {
        lo = hi;
        if (hi > (std::size_t{1} << 50)) return hi;  // degenerate parameters; still valid
        hi *= 2;
    }
    while (hi - lo > 1) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (logEnv(static_cast<double>(mid)) <= logR) hi = mid;
        else lo = mid;
    }
    return hi;
}

} // namespace

AsymptoticsReport asymptotics(const SequencePair& pair) {
    AsymptoticsReport rep;
    rep.aGrowth = family_growth(pair.a);
    rep.bGrowth = family_growth(pair.b);
    rep.cGrowth = c_growth(pair);
    rep.tridiagGrowth = tridiag_growth(pair);
    rep.kernelDiagGrowth = max_growth(rep.aGrowth, b_shift_growth(pair.b));

    rep.ratioLimitA = std::abs(pair.a.base());
    rep.tridiagLimsup = rep.tridiagGrowth.limAbs();
    rep.tridiagLessThanOne = rep.tridiagLimsup.strictlyBelow(1.0);
    rep.cLimitZero = rep.cGrowth.limZero();
    rep.ratioBounded = true;  // ratio tends to |rho_a|; finite overrides stay finite
    rep.cBounded = rep.cGrowth.bounded();

    // c_n == 0 scan: overrides at index m touch c_m and c_{m+1}; in-family
    // isolated zeros need tau = (n/(n+1))^s with tau real positive.
    if (rep.cGrowth.zero) {
        rep.cZeroStatus = CZeroStatus::EventuallyIdenticallyZero;
    } else {
        rep.cZeroStatus = CZeroStatus::AllNonzero;
        const std::size_t lastOv =
            std::max(pair.a.lastOverrideIndex(), pair.b.lastOverrideIndex());
        const std::size_t scanTo = std::max<std::size_t>(256, lastOv + 2);
        auto cIsZero = [&](std::size_t n) {
            const cxd g1 = pair.b.term(n) / pair.a.term(n);
            const cxd g0 = pair.b.term(n - 1) / pair.a.term(n - 1);
            const double scale = std::abs(g1) + std::abs(g0);
            if (scale == 0.0) return false;  // both ratios underflowed, not a true zero
            return std::abs(g1 - g0) <= 1e-14 * scale;
        };
        for (std::size_t n = 1; n <= scanTo; ++n) {
            if (cIsZero(n)) {
                rep.cZeroStatus = CZeroStatus::ZeroAtFinitelyMany;
                break;
            }
        }
        if (rep.cZeroStatus == CZeroStatus::AllNonzero) {
            // analytic candidate for an in-family zero beyond the scan
            const cxd tau = pair.b.base() / pair.a.base();
            const double s = pair.b.power() - pair.a.power();
            if (std::abs(tau.imag()) <= kParamTol && tau.real() > 0.0 && std::abs(s) > kParamTol) {
                const double tprime = std::pow(tau.real(), 1.0 / s);
                if (tprime > 0.0 && tprime < 1.0) {
                    const double nstar = tprime / (1.0 - tprime);
                    for (double d : {std::floor(nstar) - 1.0, std::floor(nstar),
                                     std::floor(nstar) + 1.0}) {
                        if (d >= 1.0 && d <= 1e15) {
                            const auto n = static_cast<std::size_t>(d);
                            if (n > scanTo && cIsZero(n))
                                rep.cZeroStatus = CZeroStatus::ZeroAtFinitelyMany;
                        }
                    }
                }
            }
        }
    }

    if (rep.tridiagLessThanOne) {
        const double L = rep.tridiagLimsup.value;
        rep.geomR = std::max(0.5 * (1.0 + L), 0.5);
        std::size_t nf = family_tail_index(pair, rep.tridiagGrowth, rep.geomR);

        // overrides: a-override at m shifts ratio index m-1, b-override index m
        std::size_t lastAffected = 0;
        bool anyAffected = false;
        for (const auto& [m, v] : pair.b.overrides()) {
            (void)v;
            lastAffected = std::max(lastAffected, m);
            anyAffected = true;
        }
        for (const auto& [m, v] : pair.a.overrides()) {
            (void)v;
            lastAffected = std::max(lastAffected, m);  // affects indices m-1 and (via a_{n+1}) m
            anyAffected = true;
        }
        if (anyAffected) {
            for (std::size_t n = nf; n <= lastAffected; ++n)
                if (actual_ratio(pair, n) > rep.geomR) nf = n + 1;
        }
        // minimize by scanning down through actually-satisfied indices
        std::size_t guard = 0;
        while (nf > 0 && guard < 100000 && actual_ratio(pair, nf - 1) <= rep.geomR) {
            --nf;
            ++guard;
        }
        rep.geomN = nf;
    }
    return rep;
}

DivergenceTests divergence_tests(const SequencePair& pair, double lambdaAbs) {
    if (!(lambdaAbs > 0.0)) throw std::invalid_argument("lambdaAbs must be positive");
    const AsymptoticsReport rep = asymptotics(pair);
    DivergenceTests dt;

    const GrowthRate aL = rep.aGrowth.scaledBase(lambdaAbs);
    dt.supInfinite = aL.supInfinite();
    dt.limInfinite = aL.limInfinite();
    dt.inverseSquareSummable = aL.inverseSquareSummable();

    if (rep.cGrowth.zero) {
        // exact cancellation: no single-term asymptotic form for c_n
        dt.supCAInfinite = Tri::Indeterminate;
        dt.limCAInfinite = Tri::Indeterminate;
    } else {
        const GrowthRate caL = rep.cGrowth.times(rep.aGrowth).scaledBase(lambdaAbs);
        dt.supCAInfinite = caL.supInfinite() ? Tri::Yes : Tri::No;
        dt.limCAInfinite = caL.limInfinite() ? Tri::Yes : Tri::No;
    }

    const GrowthRate kdL = rep.kernelDiagGrowth.scaledBase(lambdaAbs);
    dt.supKernelDiagInfinite = kdL.supInfinite();
    dt.limKernelDiagInfinite = kdL.limInfinite();
    return dt;
}

} // namespace tridiag
