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

#include "rholab/apparatus.hpp"

namespace rholab {

/// Outcome probability over the Bloch ball as P(p) = a . p + b. The bounds
/// b - |a| >= -1e-9 and b + |a| <= 1 + 1e-9 hold for any apparatus-derived
/// form and are enforced at construction.
class AffineForm {
public:
    AffineForm(std::array<double, 3> a, double b);

    const std::array<double, 3>& a() const { return a_; }
    double b() const { return b_; }
    double a_norm() const;

    double evaluate(const BlochVector& p) const;

private:
    std::array<double, 3> a_;
    double b_;
};

/// Evidence that a two-branch apparatus realizes the overlap rule: the
/// extremal polarizations are unit and antipodal (to 1e-6) and
/// max_abs_error bounds the deviation from <psi1|rho|psi1> and from the
/// closed form (p . p1 + 1)/2 over the sampled states.
class BornCertificate {
public:
    BornCertificate(BlochVector p1, BlochVector p2, StateVector psi1, double max_abs_error);

    const BlochVector& p1() const { return p1_; }
    const BlochVector& p2() const { return p2_; }
    const StateVector& psi1() const { return psi1_; }
    double max_abs_error() const { return max_abs_error_; }

private:
    BlochVector p1_;
    BlochVector p2_;
    StateVector psi1_;
    double max_abs_error_;
};

/// Two-outcome apparatus that sends |psi1> to branch 1 with certainty and
/// the orthogonal state to branch 2. Outcome values are the 1/0 indicator
/// of branch 1.
Apparatus two_branch_apparatus(const StateVector& psi1);

/// Exact determination of the affine form from four engine evaluations (at
/// the center and along each axis of the Bloch ball).
AffineForm fit_affine(const Apparatus& app, int outcome_index);

/// Maximizer and minimizer of the form over the Bloch ball: a/|a| and
/// -a/|a|. Throws DegenerateFormError when |a| <= 1e-12 (a constant form
/// attains its extrema on the whole ball).
std::pair<BlochVector, BlochVector> extremal_polarizations(const AffineForm& f);

/// Checks P(rho) = <psi1|rho|psi1> and the closed form over 100 random
/// states; requires app to distinguish psi1 perfectly (P(psi1) = 1).
BornCertificate verify_born(const Apparatus& app, const StateVector& psi1,
                            std::uint64_t seed = 0);

/// M = b I + a_x sigma_x + a_y sigma_y + a_z sigma_z; the positive operator
/// whose trace against rho reproduces the form. Rejects forms whose
/// operator would leave [0, 1] spectrum bounds.
ComplexMatrix affine_to_operator(const AffineForm& f);

}  // namespace rholab
