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

#include "rholab/complex_matrix.hpp"

namespace rholab {

/// Which tensor factor a partial trace keeps. Factor order convention
/// everywhere in the library: the leftmost factor is the slowest index.
enum class Factor { first, second };

namespace kernels {

// Serial reference kernels. Plain fixed-order loops; the OpenMP kernels
// below must reproduce them bit for bit (each output element is summed in
// the same order by exactly one thread), so tests compare the two paths
// with operator== on the raw doubles.
namespace serial {

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix partial_trace(const ComplexMatrix& m, int dim_a, int dim_b, Factor keep);
std::vector<cplx> matvec(const ComplexMatrix& m, const std::vector<cplx>& x);

}  // namespace serial

// OpenMP kernels. Work below the grain size runs the serial loop body on
// the calling thread, so small operands carry no threading overhead.

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix partial_trace(const ComplexMatrix& m, int dim_a, int dim_b, Factor keep);
std::vector<cplx> matvec(const ComplexMatrix& m, const std::vector<cplx>& x);

}  // namespace kernels
}  // namespace rholab
