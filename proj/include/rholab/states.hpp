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

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "rholab/complex_matrix.hpp"
#include "rholab/linalg.hpp"

namespace rholab {

ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

/// Hermitian, positive-semidefinite, unit-trace operator. Invariants are
/// checked at construction: hermiticity to 1e-10, smallest eigenvalue
/// >= -1e-10, trace within 1e-10 of one.
class DensityMatrix {
public:
    explicit DensityMatrix(ComplexMatrix matrix);

    static DensityMatrix pure(const StateVector& psi);
    static DensityMatrix maximally_mixed(int dim);

    int dim() const { return matrix_.rows(); }
    const ComplexMatrix& matrix() const { return matrix_; }

    /// Count of eigenvalues above the 1e-12 noise floor.
    int numerical_rank() const;

private:
    ComplexMatrix matrix_;
};

/// Pure state of system (x) environment with declared factor dimensions.
class BipartiteState {
public:
    BipartiteState(int dim_s, int dim_e, StateVector vector);

    int dim_s() const { return dim_s_; }
    int dim_e() const { return dim_e_; }
    const StateVector& vector() const { return vector_; }

private:
    int dim_s_;
    int dim_e_;
    StateVector vector_;
};

/// Canonical form sum_k alpha_k |s_k>|e_k>. Coefficients are the strictly
/// positive ones, in descending order; their count is the Schmidt rank.
/// Under spectral degeneracy the basis pairing is deterministic but not
/// canonical, so tests should assert reconstruction rather than basis
/// identity.
struct SchmidtDecomposition {
    std::vector<double> coefficients;
    std::vector<StateVector> s_basis;
    std::vector<StateVector> e_basis;

    int rank() const { return static_cast<int>(coefficients.size()); }
};

/// Real polarization 3-vector inside the closed Bloch ball.
class BlochVector {
public:
    explicit BlochVector(std::array<double, 3> p);
    BlochVector(double x, double y, double z) : BlochVector(std::array<double, 3>{x, y, z}) {}

    const std::array<double, 3>& p() const { return p_; }
    double operator[](int i) const { return p_[static_cast<std::size_t>(i)]; }
    double length() const;

private:
    std::array<double, 3> p_;
};

/// One branch of a probabilistic mixture. dim_e = 1 encodes a pure state
/// of the system alone; probabilities are validated at the mixture level.
struct MixtureComponent {
    double probability;
    BipartiteState state;

    DensityMatrix reduced() const;
};

/// Partial trace of |psi><psi| over the discarded factor, computed by
/// direct amplitude contraction.
DensityMatrix reduced_density(const BipartiteState& psi, Factor keep);

SchmidtDecomposition schmidt_decompose(const BipartiteState& psi);

/// Rebuilds sum_k e^{i phase_k} alpha_k |s_k>|e_k>; with zero phases this
/// reproduces the decomposed state exactly.
BipartiteState schmidt_reconstruct(const SchmidtDecomposition& schmidt,
                                   const std::vector<double>& phases, int dim_s, int dim_e);

/// Minimal purification: environment dimension equals the rank of rho.
BipartiteState purify(const DensityMatrix& rho);

/// Embeds the environment factor in a larger space (zero padding).
BipartiteState pad_environment(const BipartiteState& psi, int new_dim_e);

/// Probability-weighted sum of density matrices. Probabilities must be
/// nonnegative and sum to 1 within 1e-12.
DensityMatrix mix(const std::vector<std::pair<double, DensityMatrix>>& components);

DensityMatrix bloch_to_density(const BlochVector& p);
BlochVector density_to_bloch(const DensityMatrix& rho);

enum class NamedState { bell_phi, singlet, triplet0, up, down, left, right };

/// True for the two-qubit entangled states (bell_phi, singlet, triplet0).
bool is_pair_state(NamedState name);

/// Exact amplitude tables for the two-qubit named states.
BipartiteState named_pair(NamedState name);

/// Exact amplitude tables for the single-qubit named states.
StateVector named_qubit(NamedState name);

/// U_E = sum_k e^{-i phase_k} |e_k><e_k| + identity on the orthogonal
/// complement. The basis must be orthonormal to 1e-10.
ComplexMatrix envariance_unitary(const std::vector<double>& phases,
                                 const std::vector<StateVector>& e_basis);

}  // namespace rholab
