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
#include <string>
#include <utility>
#include <vector>

#include "rholab/apparatus.hpp"

namespace rholab {

/// Controlled transformation on (A ox B) ox qubit: identity when the control
/// qubit is |0>, the Psi0 -> Psi1 mapping unitary when it is |1>.
struct GateG {
    int dim_ab;
    ComplexMatrix unitary;  ///< side dim_ab * 2; control is the last factor
};

/// Outcome of one executable check. pass is |residual| <= tolerance by
/// construction. branch_probability carries the mixing weight or meter
/// probability where the experiment defines one, zero otherwise.
struct ExperimentReport {
    std::string label;
    double expectation = 0.0;
    std::vector<double> conditional_expectations;
    double branch_probability = 0.0;
    double reference_value = 0.0;
    double residual = 0.0;
    bool pass = false;
    double tolerance = 0.0;
};

ExperimentReport make_report(std::string label, double expectation,
                             std::vector<double> conditional_expectations,
                             double branch_probability, double reference_value, double residual,
                             double tolerance);

GateG build_gate_g(const BipartiteState& psi0, const BipartiteState& psi1);

/// Preparation by measurement: a Bell pair is emitted, the lower qubit is
/// measured by meter1, and the upper qubit's conditional state at point X is
/// returned along with the sampled outcome.
std::pair<int, StateVector> run_fig2(const MeterMu& meter1, std::uint64_t seed);

/// The unconditioned experiment: purify both states into a common A+B space,
/// route the Bell-pair control through gate G, and measure A. The reference
/// is the expected value at the even mixture of the two inputs.
ExperimentReport run_fig3a(const DensityMatrix& rho0, const DensityMatrix& rho1,
                           const Apparatus& app, double tolerance = 1e-10);

/// Same setup with the spectator qubit measured first. Reports the branch
/// probability, both conditional expectations, and the law-of-total-
/// expectation recombination; the residual also covers agreement with the
/// unconditioned experiment.
ExperimentReport run_fig3b(const DensityMatrix& rho0, const DensityMatrix& rho1,
                           const Apparatus& app, double tolerance = 1e-10);

/// Midpoint identity: F((rho0+rho1)/2) = (F(rho0)+F(rho1))/2.
ExperimentReport check_midpoint(const DensityMatrix& rho0, const DensityMatrix& rho1,
                                const Apparatus& app, double tolerance = 1e-10);

/// Mixing-weight identity at the dyadic rational p/2^q, checked both by the
/// nested-midpoint iteration (expanding engine endpoint values) and by
/// direct evaluation.
ExperimentReport check_dyadic(const DensityMatrix& rho0, const DensityMatrix& rho1,
                              const Apparatus& app, int p, int q, double tolerance = 1e-9);

/// Largest q accepted by check_dyadic.
int max_dyadic_level();

/// Modified experiment reaching an arbitrary mixing weight lambda through
/// the bracket xi < lambda < eta: verifies the reduced state after the gate,
/// the measured branch probability (lambda-xi)/(eta-xi), the two-point
/// recombination, the between-bracket bound, and the final interpolation
/// identity at lambda itself.
ExperimentReport run_appendix(double xi, double lambda, double eta, const DensityMatrix& rho0,
                              const DensityMatrix& rho1, const Apparatus& app,
                              double tolerance = 1e-9);

/// Law of total expectation for an N-component mixture; for N = 3 the
/// pairwise chained expansion is checked step by step as well.
ExperimentReport check_general_mixture(const std::vector<MixtureComponent>& components,
                                       const Apparatus& app, double tolerance = 1e-10);

/// Schmidt-phase invariance: shifting the phases of the Schmidt
/// coefficients leaves every outcome probability on S unchanged, and the
/// phase shift is undone by a unitary on E alone.
ExperimentReport check_envariance(const BipartiteState& psi, const std::vector<double>& phases,
                                  const Apparatus& app, double tolerance = 1e-10);

/// Qubit case study: the even up/down mixture, the even left/right mixture,
/// and the reduced singlet all land on the constant term of the outcome
/// probability's affine form.
ExperimentReport spin_case_study(const Apparatus& app, double tolerance = 1e-12);

}  // namespace rholab
