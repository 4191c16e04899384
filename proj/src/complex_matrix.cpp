// Copyright 2026 The rholab developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rholab/complex_matrix.hpp"

#include <cmath>
#include <cstddef>

#include "rholab/error.hpp"
#include "rholab/kernels.hpp"

namespace rholab {

namespace {

bool entry_is_finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

ComplexMatrix::ComplexMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows < 1 || cols < 1) throw DimensionError("ComplexMatrix: rows and cols must be >= 1");
    data_.assign(static_cast<std::size_t>(rows) * cols, cplx{0.0, 0.0});
}

ComplexMatrix::ComplexMatrix(int rows, int cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (rows < 1 || cols < 1) throw DimensionError("ComplexMatrix: rows and cols must be >= 1");
    if (data_.size() != static_cast<std::size_t>(rows) * cols) {
        throw DimensionError("ComplexMatrix: entry count does not match shape");
    }
    for (const cplx& z : data_) {
        if (!entry_is_finite(z)) throw InvariantError("ComplexMatrix: non-finite entry");
    }
}

ComplexMatrix ComplexMatrix::identity(int n) {
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<cplx>& d) {
    const int n = static_cast<int>(d.size());
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = d[static_cast<std::size_t>(i)];
    return m;
}

ComplexMatrix ComplexMatrix::from_rows(std::initializer_list<std::initializer_list<cplx>> rows) {
    const int r = static_cast<int>(rows.size());
    if (r == 0) throw DimensionError("from_rows: empty");
    const int c = static_cast<int>(rows.begin()->size());
    std::vector<cplx> entries;
    entries.reserve(static_cast<std::size_t>(r) * c);
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != c) throw DimensionError("from_rows: ragged rows");
        entries.insert(entries.end(), row.begin(), row.end());
    }
    return ComplexMatrix(r, c, std::move(entries));
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
    }
    return out;
}

cplx ComplexMatrix::trace() const {
    if (!is_square()) throw DimensionError("trace: matrix not square");
    cplx t = 0.0;
    for (int i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const cplx& z : data_) m = std::max(m, std::abs(z));
    return m;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const cplx& z : data_) s += std::norm(z);
    return std::sqrt(s);
}

double ComplexMatrix::max_abs_diff(const ComplexMatrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_) {
        throw DimensionError("max_abs_diff: shape mismatch");
    }
    double m = 0.0;
    for (std::size_t i = 0; i < data_.size(); ++i) m = std::max(m, std::abs(data_[i] - other.data_[i]));
    return m;
}

bool ComplexMatrix::is_hermitian(double tol) const {
    if (!is_square()) return false;
    for (int i = 0; i < rows_; ++i) {
        for (int j = i; j < cols_; ++j) {
            if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) return false;
        }
    }
    return true;
}

bool ComplexMatrix::is_unitary(double tol) const {
    if (!is_square()) return false;
    return (adjoint() * (*this)).is_identity(tol);
}

bool ComplexMatrix::is_identity(double tol) const {
    if (!is_square()) return false;
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) {
            const cplx want = (i == j) ? cplx{1.0, 0.0} : cplx{0.0, 0.0};
            if (std::abs((*this)(i, j) - want) > tol) return false;
        }
    }
    return true;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_) throw DimensionError("operator+=: shape mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_) throw DimensionError("operator-=: shape mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx scalar) {
    for (cplx& z : data_) z *= scalar;
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    return kernels::matmul(a, b);
}

StateVector::StateVector(std::vector<cplx> amplitudes) : amps_(std::move(amplitudes)) {
    if (amps_.empty()) throw DimensionError("StateVector: empty");
    const double n = vector_norm(amps_);
    if (std::abs(n - 1.0) > 1e-12) throw InvariantError("StateVector: norm differs from 1");
}

StateVector StateVector::basis_state(int dim, int k) {
    if (k < 0 || k >= dim) throw DimensionError("basis_state: index out of range");
    std::vector<cplx> amps(static_cast<std::size_t>(dim), cplx{0.0, 0.0});
    amps[static_cast<std::size_t>(k)] = 1.0;
    return StateVector(std::move(amps));
}

StateVector StateVector::normalized(std::vector<cplx> amplitudes) {
    const double n = vector_norm(amplitudes);
    if (n < 1e-300) throw InvariantError("StateVector::normalized: zero vector");
    for (cplx& z : amplitudes) z /= n;
    return StateVector(std::move(amplitudes));
}

double StateVector::norm() const { return vector_norm(amps_); }

cplx inner_product(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    if (a.size() != b.size()) throw DimensionError("inner_product: dimension mismatch");
    cplx s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

cplx inner_product(const StateVector& a, const StateVector& b) {
    return inner_product(a.amplitudes(), b.amplitudes());
}

double vector_norm(const std::vector<cplx>& v) {
    double s = 0.0;
    for (const cplx& z : v) s += std::norm(z);
    return std::sqrt(s);
}

std::vector<cplx> apply(const ComplexMatrix& m, const std::vector<cplx>& x) {
    return kernels::matvec(m, x);
}

StateVector apply(const ComplexMatrix& m, const StateVector& x) {
    return StateVector(kernels::matvec(m, x.amplitudes()));
}

ComplexMatrix outer_product(const StateVector& a, const StateVector& b) {
    ComplexMatrix m(a.dim(), b.dim());
    for (int i = 0; i < a.dim(); ++i) {
        for (int j = 0; j < b.dim(); ++j) m(i, j) = a[i] * std::conj(b[j]);
    }
    return m;
}

double phase_aligned_distance(const StateVector& a, const StateVector& b) {
    const cplx overlap = inner_product(b, a);
    // e^{i t} with t = arg<b|a> maximizes |<a|e^{it} b>|.
    const cplx phase = (std::abs(overlap) < 1e-300) ? cplx{1.0, 0.0} : overlap / std::abs(overlap);
    double s = 0.0;
    for (int i = 0; i < a.dim(); ++i) s += std::norm(a[i] - phase * b[i]);
    return std::sqrt(s);
}

}  // namespace rholab
