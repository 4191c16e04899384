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

#include "rholab/reconstruction.hpp"

#include <cmath>
#include <cstddef>

#include "rholab/error.hpp"
#include "rholab/rng.hpp"

namespace rholab {

AffineForm::AffineForm(std::array<double, 3> a, double b) : a_(a), b_(b) {
    const double n = a_norm();
    if (b_ - n < -1e-9 || b_ + n > 1.0 + 1e-9) {
        throw InvariantError("AffineForm: probability bounds violated on the Bloch ball");
    }
}

double AffineForm::a_norm() const {
    return std::sqrt(a_[0] * a_[0] + a_[1] * a_[1] + a_[2] * a_[2]);
}

double AffineForm::evaluate(const BlochVector& p) const {
    return a_[0] * p[0] + a_[1] * p[1] + a_[2] * p[2] + b_;
}

BornCertificate::BornCertificate(BlochVector p1, BlochVector p2, StateVector psi1,
                                 double max_abs_error)
    : p1_(p1), p2_(p2), psi1_(std::move(psi1)), max_abs_error_(max_abs_error) {
    if (std::abs(p1_.length() - 1.0) > 1e-6) {
        throw InvariantError("BornCertificate: extremal state not pure");
    }
    const double anti = std::sqrt(std::pow(p1_[0] + p2_[0], 2) + std::pow(p1_[1] + p2_[1], 2) +
                                  std::pow(p1_[2] + p2_[2], 2));
    if (anti > 1e-6) throw InvariantError("BornCertificate: extremal states not antipodal");
}

Apparatus two_branch_apparatus(const StateVector& psi1) {
    if (psi1.dim() != 2) throw DimensionError("two_branch_apparatus: qubit states only");
    const StateVector perp({-std::conj(psi1[1]), std::conj(psi1[0])});
    return Apparatus::projective({psi1, perp}, {1.0, 0.0});
}

AffineForm fit_affine(const Apparatus& app, int outcome_index) {
    if (app.dim_system() != 2) throw DimensionError("fit_affine: qubit apparatus required");
    if (outcome_index < 0 || outcome_index >= app.n_outcomes()) {
        throw DimensionError("fit_affine: outcome index out of range");
    }
    const auto probability_at = [&](double x, double y, double z) {
        return outcome_distribution(app, bloch_to_density(BlochVector(x, y, z)))
            [static_cast<std::size_t>(outcome_index)];
    };
    const double b = probability_at(0, 0, 0);
    return AffineForm({probability_at(1, 0, 0) - b, probability_at(0, 1, 0) - b,
                       probability_at(0, 0, 1) - b},
                      b);
}

std::pair<BlochVector, BlochVector> extremal_polarizations(const AffineForm& f) {
    const double n = f.a_norm();
    if (n <= 1e-12) {
        throw DegenerateFormError("extremal_polarizations: constant form, extrema not unique");
    }
    const BlochVector p1(f.a()[0] / n, f.a()[1] / n, f.a()[2] / n);
    const BlochVector p2(-p1[0], -p1[1], -p1[2]);
    return {p1, p2};
}

BornCertificate verify_born(const Apparatus& app, const StateVector& psi1, std::uint64_t seed) {
    if (app.dim_system() != 2) throw DimensionError("verify_born: qubit apparatus required");
    const double on_psi1 = outcome_distribution(app, DensityMatrix::pure(psi1))[0];
    if (on_psi1 < 1.0 - 1e-9) {
        throw InvariantError("verify_born: apparatus does not certify psi1 (P(psi1) < 1)");
    }

    const AffineForm form = fit_affine(app, 0);
    const auto [p1, p2] = extremal_polarizations(form);

    double max_error = std::abs(on_psi1 - 1.0);
    // P on the maximally mixed state must be 1/2 for any psi1.
    max_error = std::max(max_error,
                         std::abs(outcome_distribution(app, DensityMatrix::maximally_mixed(2))[0] - 0.5));
    for (int trial = 0; trial < 100; ++trial) {
        const std::uint64_t s = derive_seed(seed, {0x626f726eULL, static_cast<std::uint64_t>(trial)});
        Rng rng(s);
        const DensityMatrix rho(random_density(2, rng.uniform_int(1, 2), derive_seed(s, {1})));
        const double engine = outcome_distribution(app, rho)[0];

        const double overlap =
            inner_product(psi1.amplitudes(), apply(rho.matrix(), psi1.amplitudes())).real();
        max_error = std::max(max_error, std::abs(engine - overlap));

        const BlochVector p = density_to_bloch(rho);
        const double closed_form = 0.5 * (p[0] * p1[0] + p[1] * p1[1] + p[2] * p1[2] + 1.0);
        max_error = std::max(max_error, std::abs(engine - closed_form));
    }
    return BornCertificate(p1, p2, psi1, max_error);
}

ComplexMatrix affine_to_operator(const AffineForm& f) {
    // Spectrum is b +- |a|; the AffineForm bounds put it inside [0, 1] up
    // to tolerance, which is re-checked here before handing out M.
    const double n = f.a_norm();
    if (f.b() - n < -1e-9 || f.b() + n > 1.0 + 1e-9) {
        throw InvariantError("affine_to_operator: form does not yield a positive operator");
    }
    ComplexMatrix m = ComplexMatrix::identity(2) * cplx{f.b(), 0.0};
    m += pauli_x() * cplx{f.a()[0], 0.0};
    m += pauli_y() * cplx{f.a()[1], 0.0};
    m += pauli_z() * cplx{f.a()[2], 0.0};
    return m;
}

}  // namespace rholab
