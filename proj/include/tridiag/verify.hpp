#pragma once

// Independent brute-force oracles. Each recomputes a quantity by a second
// code path that shares no arithmetic with the primary one:
//   - matrix columns via coefficient shift + forward substitution,
//   - monomial norms via forward substitution on the unit monomial,
//   - annulus tables via explicit weight products in double loops.
// The deviation-only variants accept precomputed data so tests can corrupt
// it and confirm the oracle notices.

#include <string>
#include <utility>
#include <vector>

#include "tridiag/dense_matrix.hpp"
#include "tridiag/space.hpp"
#include "tridiag/spectrum.hpp"

namespace tridiag {

struct OracleReport {
    std::string oracle;
    std::string instance;
    double maxDeviation = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

double matrix_columns_deviation(const TridiagonalSpace& sp, const DenseMatrix& candidate);
double monomial_norms_deviation(const TridiagonalSpace& sp,
                                std::span<const double> normSqByIndex);
double annulus_tables_deviation(const SequencePair& pair, const SpectralAnnulus& candidate);

// Throws on N > 512 (the oracle is quadratic per column).
OracleReport oracle_matrix_columns(const TridiagonalSpace& sp, std::size_t N,
                                   double tolerance = 1e-9);
OracleReport oracle_monomial_norms(const TridiagonalSpace& sp, std::size_t nMax,
                                   double tolerance = 1e-9);
OracleReport oracle_annulus(const SequencePair& pair,
                            std::span<const std::pair<std::size_t, std::size_t>> horizons,
                            double tolerance = 1e-12);

std::vector<OracleReport> run_all_oracles(const TridiagonalSpace& sp);

} // namespace tridiag
