#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "testutil.hpp"
#include "tridiag/space.hpp"

using namespace tridiag;

namespace {

TridiagonalSpace space_const(double a, double b) {
    return TridiagonalSpace({SequenceFamily(cxd{a, 0}, cxd{1, 0}, 0.0),
                             SequenceFamily(cxd{b, 0}, cxd{1, 0}, 0.0)});
}

TridiagonalSpace space_poly_geo() {
    return TridiagonalSpace({SequenceFamily(cxd{1, 0}, cxd{1, 0}, 1.0),
                             SequenceFamily(cxd{1, 0}, cxd{0.5, 0}, 0.0)});
}

TridiagonalSpace space_poly_one() {
    return TridiagonalSpace({SequenceFamily(cxd{1, 0}, cxd{1, 0}, 1.0),
                             SequenceFamily(cxd{1, 0}, cxd{1, 0}, 0.0)});
}

} // namespace

TEST_CASE("basis evaluation") {
    const TridiagonalSpace sp = space_const(1.0, 0.5);
    CHECK(basis_eval(sp, 0, cxd{0, 0}) == cxd{1, 0});
    CHECK(std::abs(basis_eval(sp, 1, cxd{0.5, 0}) - cxd{0.625, 0}) < 1e-15);

    const TridiagonalSpace pg = space_poly_one();
    // f_2(i) = (3 + i) * i^2 = -3 - i
    CHECK(std::abs(basis_eval(pg, 2, cxd{0, 1}) - cxd{-3, -1}) < 1e-15);
}

TEST_CASE("kernel evaluation: two routes, symmetry, positivity") {
    const TridiagonalSpace sp = space_const(1.0, 0.5);
    CHECK(kernel_eval(sp, cxd{0, 0}, cxd{0, 0}, 64) == cxd{1, 0});
    CHECK_THROWS_AS(kernel_eval(sp, cxd{0, 0}, cxd{0, 0}, 0), std::invalid_argument);

    SUBCASE("the basis sum and the four-sum tridiagonal form agree") {
        const cxd z{0.5, 0}, w{0.5, 0};
        CHECK(std::abs(kernel_eval(sp, z, w, 200) - kernel_eval_tridiag(sp, z, w, 200)) < 1e-12);

        std::mt19937 rng(7741);
        const TridiagonalSpace pg = space_poly_geo();
        for (int i = 0; i < 100; ++i) {
            const cxd zz = testutil::random_on_annulus(rng, 0.0, 0.7);
            const cxd ww = testutil::random_on_annulus(rng, 0.0, 0.7);
            CHECK(std::abs(kernel_eval(sp, zz, ww, 300) - kernel_eval_tridiag(sp, zz, ww, 300)) <
                  1e-12);
            CHECK(std::abs(kernel_eval(pg, zz, ww, 300) - kernel_eval_tridiag(pg, zz, ww, 300)) <
                  1e-12);
        }
    }

    SUBCASE("Hermitian symmetry") {
        std::mt19937 rng(991);
        for (int i = 0; i < 50; ++i) {
            const cxd z = testutil::random_on_annulus(rng, 0.0, 0.7);
            const cxd w = testutil::random_on_annulus(rng, 0.0, 0.7);
            CHECK(std::abs(kernel_eval(sp, z, w, 200) - std::conj(kernel_eval(sp, w, z, 200))) <
                  1e-12);
        }
    }

    SUBCASE("Gram positivity on sample points") {
        std::mt19937 rng(1337);
        for (int rep = 0; rep < 5; ++rep) {
            const std::size_t m = 8;
            std::vector<cxd> pts;
            for (std::size_t i = 0; i < m; ++i)
                pts.push_back(testutil::random_on_annulus(rng, 0.0, 0.6));
            DenseMatrix G(m, m);
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j < m; ++j) G.at(i, j) = kernel_eval(sp, pts[i], pts[j], 300);
            CHECK(testutil::hermitian_min_eigenvalue(G) >= -1e-10);
        }
    }
}

TEST_CASE("monomial expansion closed form") {
    const TridiagonalSpace sp = space_const(1.0, 0.5);
    const MonomialExpansion ex = monomial_expand(sp, 3, 10);
    for (std::size_t j = 0; j <= 10; ++j) {
        const double expect = (j % 2 ? -1.0 : 1.0) * std::pow(2.0, -double(j));
        CHECK(std::abs(ex.coefficients[j] - cxd{expect, 0}) < 1e-15);
    }
    REQUIRE(ex.tailBound.has_value());
    CHECK(*ex.tailBound >= std::pow(2.0, -22.0) / 3.0 * 0.99);  // true tail sum_{j>10} 4^{-j}

    const TridiagonalSpace pg = space_poly_one();
    const MonomialExpansion e0 = monomial_expand(pg, 0, 2);
    CHECK(std::abs(e0.coefficients[2] - cxd{1.0 / 6.0, 0}) < 1e-15);  // (1*1)/(2*3)

    // j = 0 term is always 1/a_n
    for (std::size_t n = 0; n < 6; ++n)
        CHECK(std::abs(monomial_expand(pg, n, 0).coefficients[0] -
                       cxd{1.0 / double(n + 1), 0}) < 1e-15);
}

TEST_CASE("monomial norms") {
    SUBCASE("constant families: ||z^n||^2 = 4/3 against the geometric oracle") {
        const TridiagonalSpace sp = space_const(1.0, 0.5);
        double oracle = 0.0;  // sum of 4^{-j}
        for (int j = 199; j >= 0; --j) oracle += std::pow(4.0, -double(j));
        for (std::size_t n = 0; n <= 100; ++n) {
            const NormResult nr = monomial_norm_sq(sp, n);
            CHECK(nr.certified);
            CHECK(std::abs(nr.normSq - oracle) < 1e-10);
        }
    }
    SUBCASE("first term is a lower bound") {
        const TridiagonalSpace pg = space_poly_geo();
        for (std::size_t n = 0; n < 50; ++n) {
            const double a2 = std::norm(pg.pair().a.term(n));
            // allow one ulp: the sum starts from fl((1/|a_n|)^2)
            CHECK(monomial_norm_sq(pg, n).normSq >= (1.0 / a2) * (1.0 - 1e-14));
        }
    }
    SUBCASE("Bergman-like: (n+1) ||z^n||^2 -> 1") {
        const TridiagonalSpace bg = TridiagonalSpace(
            {SequenceFamily(cxd{1, 0}, cxd{1, 0}, 0.5), SequenceFamily(cxd{1, 0}, cxd{0.5, 0}, 0.0)});
        const double v = monomial_norm_sq(bg, 200).normSq * 201.0;
        CHECK(std::abs(v - 1.0) < 1e-6);
    }
}

TEST_CASE("monomial reconstruction at sample points") {
    std::mt19937 rng(8080);
    const TridiagonalSpace sp = space_poly_geo();
    for (std::size_t n = 0; n <= 8; ++n) {
        const MonomialExpansion ex = monomial_expand(sp, n, 60);
        REQUIRE(ex.tailBound.has_value());
        CHECK(*ex.tailBound < 1e-24);
        for (int rep = 0; rep < 10; ++rep) {
            const cxd z = testutil::random_on_annulus(rng, 0.0, 0.5);
            cxd recon = 0.0;
            for (std::size_t j = 0; j < ex.coefficients.size(); ++j)
                recon += ex.coefficients[j] * basis_eval(sp, n + j, z);
            CHECK(std::abs(recon - std::pow(z, double(n))) < 1e-9);
        }
    }
}

TEST_CASE("coordinate conversions") {
    const TridiagonalSpace sp = space_const(1.0, 0.5);

    SUBCASE("power coefficients of f_3 map to e_3") {
        std::vector<cxd> f3(5, cxd{});
        f3[3] = sp.pair().a.term(3);
        f3[4] = sp.pair().b.term(3);
        const std::vector<cxd> x = coeffs_to_basis(sp, f3, 12);
        for (std::size_t i = 0; i < x.size(); ++i)
            CHECK(std::abs(x[i] - (i == 3 ? cxd{1, 0} : cxd{})) < 1e-14);
    }

    SUBCASE("unit monomial reproduces the expansion pattern") {
        std::vector<cxd> mono(4, cxd{});
        mono[3] = 1.0;
        const std::vector<cxd> x = coeffs_to_basis(sp, mono, 10);
        for (std::size_t i = 3; i < 10; ++i) {
            const double expect = ((i - 3) % 2 ? -1.0 : 1.0) * std::pow(2.0, -double(i - 3));
            CHECK(std::abs(x[i] - cxd{expect, 0}) < 1e-14);
        }
    }

    SUBCASE("zero maps to zero") {
        const std::vector<cxd> zero(3, cxd{});
        for (const cxd& v : coeffs_to_basis(sp, zero, 8)) CHECK(v == cxd{});
    }

    SUBCASE("basis_to_coeffs on e_0 gives the coefficients of f_0") {
        const std::vector<cxd> e0{cxd{1, 0}};
        const std::vector<cxd> A = basis_to_coeffs(sp, e0);
        REQUIRE(A.size() == 2);
        CHECK(A[0] == cxd{1, 0});
        CHECK(A[1] == cxd{0.5, 0});
    }

    SUBCASE("e_1 + e_2 for a_n = n+1, b = 1") {
        const TridiagonalSpace pg = space_poly_one();
        std::vector<cxd> x(3, cxd{});
        x[1] = x[2] = 1.0;
        const std::vector<cxd> A = basis_to_coeffs(pg, x);
        REQUIRE(A.size() == 4);
        CHECK(A[0] == cxd{0, 0});
        CHECK(A[1] == cxd{2, 0});
        CHECK(A[2] == cxd{4, 0});  // 1*1 + 1*3
        CHECK(A[3] == cxd{1, 0});
    }

    SUBCASE("round trip is the identity on random vectors") {
        std::mt19937 rng(3131);
        const TridiagonalSpace pg = space_poly_geo();
        for (int rep = 0; rep < 20; ++rep) {
            std::vector<cxd> x(64);
            for (cxd& v : x) v = testutil::random_on_annulus(rng, 0.0, 2.0);
            const std::vector<cxd> poly = basis_to_coeffs(pg, x);  // 65 coefficients
            const std::vector<cxd> back = coeffs_to_basis(pg, poly, poly.size());
            for (std::size_t i = 0; i < 64; ++i) CHECK(std::abs(back[i] - x[i]) < 1e-12);
            CHECK(std::abs(back[64]) < 1e-12);  // nothing left past the original depth
        }
    }
}

TEST_CASE("norms agree with the forward-substitution oracle") {
    const TridiagonalSpace pg = space_poly_geo();
    for (std::size_t n = 0; n < 40; ++n) {
        std::vector<cxd> mono(n + 1, cxd{});
        mono[n] = 1.0;
        const std::vector<cxd> coords = coeffs_to_basis(pg, mono, n + 80);
        double s = 0.0;
        for (const cxd& v : coords) s += std::norm(v);
        const double viaProduct = monomial_norm_sq(pg, n).normSq;
        CHECK(std::abs(s - viaProduct) <= 1e-10 * std::abs(viaProduct));
    }
}

TEST_CASE("reproducing property in basis coordinates") {
    // <f, K(., w)> computed coordinate-wise must equal f(w) evaluated through
    // the power-series route (Horner), for random polynomials f.
    const TridiagonalSpace sp = space_const(1.0, 0.5);
    std::mt19937 rng(2244);
    const std::size_t deg = 12;
    for (int rep = 0; rep < 10; ++rep) {
        const cxd w = testutil::random_on_annulus(rng, 0.0, 0.6);
        std::vector<cxd> coords(deg);
        for (cxd& v : coords) v = testutil::random_on_annulus(rng, 0.0, 1.0);

        // coordinate route: K(., w) has basis coordinates conj(f_n(w))
        cxd inner = 0.0;
        for (std::size_t m = 0; m < deg; ++m)
            inner += coords[m] * std::conj(std::conj(basis_eval(sp, m, w)));

        // independent route: expand to power coefficients and evaluate at w
        const std::vector<cxd> poly = basis_to_coeffs(sp, coords);
        cxd horner = 0.0;
        for (std::size_t i = poly.size(); i-- > 0;) horner = horner * w + poly[i];

        CHECK(std::abs(inner - horner) < 1e-10);
    }
}

TEST_CASE("kernel derivative norms") {
    const TridiagonalSpace sp = space_const(1.0, 0.5);
    CHECK(kernel_deriv_norm(sp, 0).value == 1.0);  // |a_0|
    CHECK(std::abs(kernel_deriv_norm(sp, 1).value - std::sqrt(5.0) / 2.0) < 1e-14);

    const TridiagonalSpace pg = space_poly_one();
    CHECK(std::abs(kernel_deriv_norm(pg, 2).value - 2.0 * std::sqrt(10.0)) < 1e-12);

    // log-scale value stays finite far past double overflow of n!
    const KernelDerivNorm big = kernel_deriv_norm(sp, 400);
    CHECK(std::isinf(big.value));
    CHECK(std::isfinite(big.logValue));
    const double expected = std::lgamma(401.0) + 0.5 * std::log(1.0 + 0.25);
    CHECK(std::abs(big.logValue - expected) < 1e-9);
}

TEST_CASE("uncertified regimes are flagged, not silently wrong") {
    // limsup |b_n/a_{n+1}| = 1: no geometric certificate exists
    const TridiagonalSpace wide{
        {SequenceFamily(cxd{1, 0}, cxd{1, 0}, 0.0), SequenceFamily(cxd{1, 0}, cxd{1, 0}, 0.0)}};
    CHECK_FALSE(wide.tailCertified());
    CHECK_FALSE(monomial_expand(wide, 2, 10).tailBound.has_value());
    const NormResult nr = monomial_norm_sq(wide, 2);
    CHECK_FALSE(nr.certified);
    CHECK(nr.normSq > 0.0);  // still a valid lower bound
    CHECK_FALSE(norm_estimates(wide, 0, 4).certified);
}

TEST_CASE("norm envelopes: M2 bounded by the geometric tail constant") {
    std::mt19937 rng(606060);
    for (int rep = 0; rep < 10; ++rep) {
        const SequencePair p = testutil::random_strong_pair(rng, 0.7);
        const TridiagonalSpace sp{p};
        const auto& as = sp.asym();
        REQUIRE(as.tridiagLessThanOne);
        const NormEstimateReport nr = norm_estimates(sp, as.geomN, as.geomN + 32);
        const double bound = sp.options().tailSafetyFactor /
                             std::sqrt(1.0 - as.geomR * as.geomR);
        CHECK(nr.m2 <= bound * (1.0 + 1e-12));
    }
}
