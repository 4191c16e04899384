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

// Shared helpers for the unit tests: seeded random objects and independent
// brute-force oracles. Everything here is deliberately written against the
// raw definitions (index loops), not against the library kernels it checks.

#pragma once

#include <cstdint>
#include <vector>

#include "rholab/complex_matrix.hpp"
#include "rholab/rng.hpp"

namespace rholab::testing {

inline ComplexMatrix random_matrix(int rows, int cols, std::uint64_t seed) {
    Rng rng(seed);
    ComplexMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) m(i, j) = rng.gaussian_complex();
    }
    return m;
}

inline ComplexMatrix random_hermitian(int dim, std::uint64_t seed) {
    const ComplexMatrix g = random_matrix(dim, dim, seed);
    ComplexMatrix h(dim, dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) h(i, j) = 0.5 * (g(i, j) + std::conj(g(j, i)));
    }
    return h;
}

inline StateVector random_state(int dim, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<cplx> amps(static_cast<std::size_t>(dim));
    for (cplx& z : amps) z = rng.gaussian_complex();
    return StateVector::normalized(std::move(amps));
}

// Quadruple-index-loop Kronecker oracle.
inline ComplexMatrix kron_oracle(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix c(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i1 = 0; i1 < a.rows(); ++i1)
        for (int j1 = 0; j1 < a.cols(); ++j1)
            for (int i2 = 0; i2 < b.rows(); ++i2)
                for (int j2 = 0; j2 < b.cols(); ++j2)
                    c(i1 * b.rows() + i2, j1 * b.cols() + j2) = a(i1, j1) * b(i2, j2);
    return c;
}

// Double-index-summation partial trace oracle (keep == first).
inline ComplexMatrix partial_trace_first_oracle(const ComplexMatrix& m, int dim_a, int dim_b) {
    ComplexMatrix out(dim_a, dim_a);
    for (int i = 0; i < dim_a; ++i)
        for (int j = 0; j < dim_a; ++j)
            for (int k = 0; k < dim_b; ++k) out(i, j) += m(i * dim_b + k, j * dim_b + k);
    return out;
}

inline ComplexMatrix partial_trace_second_oracle(const ComplexMatrix& m, int dim_a, int dim_b) {
    ComplexMatrix out(dim_b, dim_b);
    for (int i = 0; i < dim_b; ++i)
        for (int j = 0; j < dim_b; ++j)
            for (int k = 0; k < dim_a; ++k) out(i, j) += m(k * dim_b + i, k * dim_b + j);
    return out;
}

}  // namespace rholab::testing
