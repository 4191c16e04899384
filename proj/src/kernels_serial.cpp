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

#include <cstddef>

#include "rholab/error.hpp"
#include "rholab/kernels.hpp"

namespace rholab::kernels::serial {

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) throw DimensionError("matmul: inner dimensions differ");
    ComplexMatrix c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < b.cols(); ++j) {
            cplx sum = 0.0;
            for (int k = 0; k < a.cols(); ++k) sum += a(i, k) * b(k, j);
            c(i, j) = sum;
        }
    }
    return c;
}

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix c(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i1 = 0; i1 < a.rows(); ++i1) {
        for (int i2 = 0; i2 < b.rows(); ++i2) {
            const int row = i1 * b.rows() + i2;
            for (int j1 = 0; j1 < a.cols(); ++j1) {
                const cplx aij = a(i1, j1);
                for (int j2 = 0; j2 < b.cols(); ++j2) {
                    c(row, j1 * b.cols() + j2) = aij * b(i2, j2);
                }
            }
        }
    }
    return c;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, int dim_a, int dim_b, Factor keep) {
    if (!m.is_square() || m.rows() != dim_a * dim_b) {
        throw DimensionError("partial_trace: matrix side must equal dim_a*dim_b");
    }
    const int dim_keep = (keep == Factor::first) ? dim_a : dim_b;
    const int dim_out = (keep == Factor::first) ? dim_b : dim_a;
    ComplexMatrix out(dim_keep, dim_keep);
    for (int i = 0; i < dim_keep; ++i) {
        for (int j = 0; j < dim_keep; ++j) {
            cplx sum = 0.0;
            for (int k = 0; k < dim_out; ++k) {
                if (keep == Factor::first) {
                    sum += m(i * dim_b + k, j * dim_b + k);
                } else {
                    sum += m(k * dim_b + i, k * dim_b + j);
                }
            }
            out(i, j) = sum;
        }
    }
    return out;
}

std::vector<cplx> matvec(const ComplexMatrix& m, const std::vector<cplx>& x) {
    if (static_cast<std::size_t>(m.cols()) != x.size()) {
        throw DimensionError("matvec: dimension mismatch");
    }
    std::vector<cplx> y(static_cast<std::size_t>(m.rows()));
    for (int i = 0; i < m.rows(); ++i) {
        cplx sum = 0.0;
        for (int k = 0; k < m.cols(); ++k) sum += m(i, k) * x[static_cast<std::size_t>(k)];
        y[static_cast<std::size_t>(i)] = sum;
    }
    return y;
}

}  // namespace rholab::kernels::serial
