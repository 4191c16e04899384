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

#include <cstdint>
#include <vector>

#include "rholab/complex_matrix.hpp"
#include "rholab/kernels.hpp"

namespace rholab {

/// Total-dimension cap for composite constructions. Defaults to 4096;
/// the RHO_LAB_MAX_DIM environment variable overrides it (read once).
int max_total_dim();

/// Kronecker product with the global factor-order convention (left factor
/// slowest). Throws DimensionError past the configured cap.
ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);

/// Kronecker product of state vectors.
StateVector tensor_product(const StateVector& a, const StateVector& b);

/// Trace over one factor of a square matrix on a two-factor space.
/// Preserves the trace of the input.
ComplexMatrix partial_trace(const ComplexMatrix& m, int dim_a, int dim_b, Factor keep);

struct EigResult {
    std::vector<double> eigenvalues;  ///< descending
    ComplexMatrix eigenvectors;       ///< orthonormal columns, paired by index
};

/// Spectral decomposition of a Hermitian matrix by cyclic complex Jacobi
/// sweeps. Deterministic for a given input; rejects inputs that are not
/// Hermitian to 1e-10.
EigResult eig_hermitian(const ComplexMatrix& m);

/// Haar-distributed unitary: QR of a complex Ginibre sample with the R
/// diagonal normalized to positive reals (modified Gram-Schmidt, two
/// orthogonalization passes).
ComplexMatrix random_unitary(int dim, std::uint64_t seed);

/// Random density matrix of prescribed rank: G G^dag / Tr with G a
/// dim x rank Ginibre sample.
ComplexMatrix random_density(int dim, int rank, std::uint64_t seed);

/// Unitary with U v = w, built by extending {v} and {w} to orthonormal
/// bases over the canonical completion set (near-parallel candidates below
/// threshold 1e-6 are skipped) and mapping basis to basis.
ComplexMatrix unitary_mapping(const StateVector& v, const StateVector& w);

/// Extends the given orthonormal seed vectors to a full orthonormal basis
/// of their space by Gram-Schmidt over canonical basis vectors in index
/// order. Exposed for apparatus construction.
std::vector<StateVector> complete_orthonormal_basis(const std::vector<StateVector>& seed, int dim);

}  // namespace rholab
