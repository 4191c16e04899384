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

#include "rholab/states.hpp"

namespace rholab {

/// Operational black-box measurement: a fresh ancilla, one joint unitary,
/// and a pointer readout. The engine applies the standard trace rule only
/// at the pointer projectors; everything the library verifies about
/// measurement statistics is a consequence of this single readout rule.
class Apparatus {
public:
    Apparatus(int dim_system, int dim_ancilla, StateVector ancilla_init,
              ComplexMatrix joint_unitary, std::vector<ComplexMatrix> pointer_projectors,
              std::vector<double> outcome_values);

    /// Measurement of an orthonormal basis: the ancilla pointer is shifted
    /// to |k> when the system is in basis state k.
    static Apparatus projective(const std::vector<StateVector>& basis,
                                const std::vector<double>& outcome_values);

    int dim_system() const { return dim_system_; }
    int dim_ancilla() const { return dim_ancilla_; }
    int joint_dim() const { return dim_system_ * dim_ancilla_; }
    int n_outcomes() const { return static_cast<int>(outcome_values_.size()); }

    const StateVector& ancilla_init() const { return ancilla_init_; }
    const ComplexMatrix& joint_unitary() const { return joint_unitary_; }
    const std::vector<ComplexMatrix>& pointer_projectors() const { return pointer_projectors_; }
    const std::vector<double>& outcome_values() const { return outcome_values_; }

private:
    int dim_system_;
    int dim_ancilla_;
    StateVector ancilla_init_;
    ComplexMatrix joint_unitary_;
    std::vector<ComplexMatrix> pointer_projectors_;
    std::vector<double> outcome_values_;
};

/// Positive operators on the system space summing to identity, one per
/// outcome value.
struct Povm {
    Povm(std::vector<ComplexMatrix> elements, std::vector<double> outcome_values);

    std::vector<ComplexMatrix> elements;
    std::vector<double> outcome_values;
};

/// Projective qubit meter: an orthonormal basis pair {|0>, |1>}.
class MeterMu {
public:
    /// Computational basis meter.
    MeterMu();
    MeterMu(StateVector basis0, StateVector basis1);

    const StateVector& basis0() const { return basis0_; }
    const StateVector& basis1() const { return basis1_; }

private:
    StateVector basis0_;
    StateVector basis1_;
};

/// The common single-qubit meters with outcome values +1/-1.
Apparatus sigma_z_meter();
Apparatus sigma_x_meter();

/// Arbitrary black box: Haar joint unitary, ancilla |0>, pointer projectors
/// partitioning a random orthonormal joint basis into n_outcomes blocks
/// (block sizes derived from the seed), outcome values in [-1, 1].
Apparatus random_apparatus(int dim_system, int dim_ancilla, int n_outcomes, std::uint64_t seed);

/// P_k = Tr(Pi_k U (rho ox |a0><a0|) U^dag Pi_k). Nonnegative to 1e-12 and
/// normalized to 1e-10 by construction of the apparatus.
std::vector<double> outcome_distribution(const Apparatus& app, const DensityMatrix& rho);

/// sum_k x_k P_k; the function F of the apparatus evaluated on rho.
double expected_value(const Apparatus& app, const DensityMatrix& rho);

/// Same dilation with outcome values replaced by the 0/1 indicator of one
/// outcome, so its expected value is that outcome's probability.
Apparatus indicator_apparatus(const Apparatus& app, int outcome_index);

/// Reconstructs the positive operators behind the black box by evaluating
/// outcome probabilities on an orthonormal Hermitian operator basis and
/// inverting the (exactly linear) map.
Povm extract_povm(const Apparatus& app);

/// Tr(rho M_k) for each element.
std::vector<double> povm_probabilities(const Povm& povm, const DensityMatrix& rho);

/// n independent draws by inverse CDF on a deterministic stream. Draws are
/// partitioned into fixed-size blocks with per-block derived seeds, so the
/// result is independent of thread count.
std::vector<std::uint64_t> sample_outcomes(const Apparatus& app, const DensityMatrix& rho,
                                           std::uint64_t n, std::uint64_t seed);

/// Empirical mean of the outcome values over n draws.
double sample_mean(const Apparatus& app, const DensityMatrix& rho, std::uint64_t n,
                   std::uint64_t seed);

}  // namespace rholab
