#pragma once

// Dense complex matrix at desk scale. Row-major storage; no sparsity games.

#include <span>
#include <vector>

#include "tridiag/types.hpp"

namespace tridiag {

class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, cxd{}) {}

    static DenseMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    cxd& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const cxd& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::vector<cxd> apply(std::span<const cxd> x) const;
    DenseMatrix multiply(const DenseMatrix& o) const;
    DenseMatrix adjoint() const;
    DenseMatrix operator+(const DenseMatrix& o) const;
    DenseMatrix operator-(const DenseMatrix& o) const;
    DenseMatrix scaled(cxd s) const;

    double maxAbs() const;
    double maxAbsDiff(const DenseMatrix& o) const;

    const std::vector<cxd>& data() const { return data_; }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<cxd> data_;
};

} // namespace tridiag
