#include "tridiag/dense_matrix.hpp"

#include <stdexcept>

namespace tridiag {

DenseMatrix DenseMatrix::identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
}

std::vector<cxd> DenseMatrix::apply(std::span<const cxd> x) const {
    if (x.size() != cols_) throw std::invalid_argument("matrix-vector size mismatch");
    std::vector<cxd> y(rows_, cxd{});
    for (std::size_t i = 0; i < rows_; ++i) {
        cxd s = 0.0;
        const cxd* row = data_.data() + i * cols_;
        for (std::size_t j = 0; j < cols_; ++j) s += row[j] * x[j];
        y[i] = s;
    }
    return y;
}

DenseMatrix DenseMatrix::multiply(const DenseMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("matrix-matrix size mismatch");
    DenseMatrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const cxd v = at(i, k);
            if (v == cxd{}) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) r.at(i, j) += v * o.at(k, j);
        }
    return r;
}

DenseMatrix DenseMatrix::adjoint() const {
    DenseMatrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = std::conj(at(i, j));
    return r;
}

DenseMatrix DenseMatrix::operator+(const DenseMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("size mismatch");
    DenseMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] + o.data_[i];
    return r;
}

DenseMatrix DenseMatrix::operator-(const DenseMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("size mismatch");
    DenseMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] - o.data_[i];
    return r;
}

DenseMatrix DenseMatrix::scaled(cxd s) const {
    DenseMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] * s;
    return r;
}

double DenseMatrix::maxAbs() const {
    double m = 0.0;
    for (const cxd& v : data_) m = std::max(m, std::abs(v));
    return m;
}

double DenseMatrix::maxAbsDiff(const DenseMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("size mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < data_.size(); ++i)
        m = std::max(m, std::abs(data_[i] - o.data_[i]));
    return m;
}

} // namespace tridiag
