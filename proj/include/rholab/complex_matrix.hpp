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

#pragma once

#include <complex>
#include <initializer_list>
#include <vector>

namespace rholab {

using cplx = std::complex<double>;

/// Dense complex matrix, row-major. The substrate for every operator in the
/// library; all instances are desk scale (total dimension capped, see
/// max_total_dim() in linalg.hpp).
class ComplexMatrix {
public:
    /// Zero matrix of the given shape.
    ComplexMatrix(int rows, int cols);

    /// Takes ownership of row-major entries; rejects NaN/infinity and
    /// size mismatches.
    ComplexMatrix(int rows, int cols, std::vector<cplx> entries);

    static ComplexMatrix identity(int n);
    static ComplexMatrix diagonal(const std::vector<cplx>& d);
    /// Row-by-row brace construction, mostly for tests and named constants.
    static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<cplx>> rows);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    cplx& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
    const cplx& operator()(int i, int j) const {
        return data_[static_cast<std::size_t>(i) * cols_ + j];
    }

    const std::vector<cplx>& data() const { return data_; }
    std::vector<cplx>& data() { return data_; }

    ComplexMatrix adjoint() const;
    cplx trace() const;

    /// max_ij |a_ij|
    double max_abs() const;
    double frobenius_norm() const;
    /// max_ij |a_ij - b_ij|; shapes must match.
    double max_abs_diff(const ComplexMatrix& other) const;

    bool is_hermitian(double tol) const;
    bool is_unitary(double tol) const;
    bool is_identity(double tol) const;

    ComplexMatrix& operator+=(const ComplexMatrix& other);
    ComplexMatrix& operator-=(const ComplexMatrix& other);
    ComplexMatrix& operator*=(cplx scalar);

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
    friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }
    /// Dense product via the kernel layer (OpenMP above the grain size).
    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

private:
    int rows_;
    int cols_;
    std::vector<cplx> data_;
};

/// Unit vector in a finite-dimensional Hilbert space. The norm is validated
/// to 1e-12 at construction; unnormalized intermediates live in plain
/// std::vector<cplx> until normalized.
class StateVector {
public:
    explicit StateVector(std::vector<cplx> amplitudes);

    /// |k> in the given dimension.
    static StateVector basis_state(int dim, int k);
    /// Scales the input to unit norm; rejects (near-)zero vectors.
    static StateVector normalized(std::vector<cplx> amplitudes);

    int dim() const { return static_cast<int>(amps_.size()); }
    const std::vector<cplx>& amplitudes() const { return amps_; }
    const cplx& operator[](int i) const { return amps_[static_cast<std::size_t>(i)]; }

    double norm() const;

private:
    std::vector<cplx> amps_;
};

/// <a|b>
cplx inner_product(const StateVector& a, const StateVector& b);
cplx inner_product(const std::vector<cplx>& a, const std::vector<cplx>& b);

double vector_norm(const std::vector<cplx>& v);

/// y = M x; dimension checked.
std::vector<cplx> apply(const ComplexMatrix& m, const std::vector<cplx>& x);
StateVector apply(const ComplexMatrix& m, const StateVector& x);

/// |a><b|
ComplexMatrix outer_product(const StateVector& a, const StateVector& b);

/// min over a global phase of ||a - e^{i t} b||; zero iff the states are
/// physically identical. Dimensions must match.
double phase_aligned_distance(const StateVector& a, const StateVector& b);

}  // namespace rholab
