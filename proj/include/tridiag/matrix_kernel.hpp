#pragma once

// Matrix-valued tridiagonal kernels
//   K(z,w) = sum_n (A_n + B_n z)(A_n^* + B_n^* wbar) z^n wbar^n
// for simultaneously unitarily diagonalizable A_n, B_n: a unitary Q and d
// scalar channels (a^{(q)}, b^{(q)}) are the primary representation, so
// K(z,w) = Q^* diag(k_q(z,w)) Q and the shift splits into a direct sum of
// scalar backward shifts. Raw A_n/B_n tables are verification inputs only.

#include <map>
#include <string>
#include <vector>

#include "tridiag/dense_matrix.hpp"
#include "tridiag/dynamics.hpp"
#include "tridiag/space.hpp"

namespace tridiag {

class MatrixKernelSpace {
public:
    // Validates ||QQ* - I||_max <= 1e-10 and the per-channel boundedness
    // hypotheses (sup ratio finite, limsup < 1); throws on violation.
    MatrixKernelSpace(DenseMatrix Q, std::vector<SequencePair> channels,
                      std::map<std::size_t, DenseMatrix> rawA = {},
                      std::map<std::size_t, DenseMatrix> rawB = {});

    std::size_t dim() const { return d_; }
    const DenseMatrix& Q() const { return Q_; }
    const std::vector<TridiagonalSpace>& channels() const { return channels_; }
    const std::map<std::size_t, DenseMatrix>& rawA() const { return rawA_; }
    const std::map<std::size_t, DenseMatrix>& rawB() const { return rawB_; }
    bool hasRawTables() const { return !rawA_.empty() || !rawB_.empty(); }

    // A_n (and B_n) reconstructed from channels and Q; used as the
    // independent route when no raw tables were supplied.
    DenseMatrix synthesizedA(std::size_t n) const;
    DenseMatrix synthesizedB(std::size_t n) const;

    static constexpr double kUnitarityTol = 1e-10;

private:
    std::size_t d_ = 0;
    DenseMatrix Q_;
    std::vector<TridiagonalSpace> channels_;
    std::map<std::size_t, DenseMatrix> rawA_, rawB_;
};

// Q^* diag(k_q(z,w)) Q truncated at N. When raw tables cover [0, N), the
// direct-sum form is evaluated as well and a disagreement beyond 1e-8 throws.
DenseMatrix mk_kernel_eval(const MatrixKernelSpace& ms, cxd z, cxd w, std::size_t N);

struct DiagDiagnostic {
    bool pass = false;
    double maxDeviation = 0.0;
    std::size_t failIndex = 0;
    char failMatrix = ' ';  // 'Q', 'A' or 'B'
    std::string note;
};

// Verifies Q unitary and Q A_n Q^* diagonal with the channel eigenvalues,
// at the given indices (raw tables required there).
DiagDiagnostic diagonalization_check(const MatrixKernelSpace& ms,
                                     std::span<const std::size_t> sampleIndices, double tol);

// Direct-sum classification of B (lambda = 1): hypercyclic iff the slowest
// channel's |a_n| is unbounded; mixing/chaotic iff every channel passes the
// corresponding scalar test.
DynamicsReport direct_sum_classify(const MatrixKernelSpace& ms);

// Per-channel scalar lambda-tests; extension beyond the lambda = 1 statement.
DynamicsReport direct_sum_classify_lambda(const MatrixKernelSpace& ms, const DynamicsQuery& q);

struct KernelCheckDiagnostic {
    bool pass = false;
    double maxDeviation = 0.0;
    cxd worstZ, worstW;
};

// Compares the direct matrix-sum evaluation of K with Q^* diag(k_q) Q at the
// sample points; the two routes share no arithmetic.
KernelCheckDiagnostic direct_sum_kernel_check(const MatrixKernelSpace& ms,
                                              std::span<const std::pair<cxd, cxd>> samples,
                                              double tol, std::size_t N = 128);

} // namespace tridiag
