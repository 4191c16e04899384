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

#include "rholab/apparatus.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "rholab/error.hpp"
#include "rholab/rng.hpp"

namespace rholab {

namespace {

constexpr std::uint64_t kSampleChunk = 8192;  // fixed partition size for sampling

// Raw engine functional: outcome weights of the dilated readout evaluated on
// an arbitrary (not necessarily positive or normalized) Hermitian operator.
// Linear in x; extract_povm inverts exactly this map.
std::vector<double> readout_functional(const Apparatus& app, const ComplexMatrix& x) {
    if (x.rows() != app.dim_system() || x.cols() != app.dim_system()) {
        throw DimensionError("apparatus: operator dimension differs from dim_system");
    }
    const ComplexMatrix anc = outer_product(app.ancilla_init(), app.ancilla_init());
    const ComplexMatrix joint = tensor_product(x, anc);
    const ComplexMatrix evolved = app.joint_unitary() * joint * app.joint_unitary().adjoint();

    std::vector<double> weights(static_cast<std::size_t>(app.n_outcomes()));
    for (int k = 0; k < app.n_outcomes(); ++k) {
        // Tr(Pi M Pi) = Tr(Pi M) for idempotent Hermitian Pi.
        const ComplexMatrix& proj = app.pointer_projectors()[static_cast<std::size_t>(k)];
        cplx tr = 0.0;
        for (int i = 0; i < proj.rows(); ++i) {
            for (int j = 0; j < proj.cols(); ++j) tr += proj(i, j) * evolved(j, i);
        }
        weights[static_cast<std::size_t>(k)] = tr.real();
    }
    return weights;
}

}  // namespace

Apparatus::Apparatus(int dim_system, int dim_ancilla, StateVector ancilla_init,
                     ComplexMatrix joint_unitary, std::vector<ComplexMatrix> pointer_projectors,
                     std::vector<double> outcome_values)
    : dim_system_(dim_system),
      dim_ancilla_(dim_ancilla),
      ancilla_init_(std::move(ancilla_init)),
      joint_unitary_(std::move(joint_unitary)),
      pointer_projectors_(std::move(pointer_projectors)),
      outcome_values_(std::move(outcome_values)) {
    const int joint = dim_system_ * dim_ancilla_;
    if (dim_system_ < 1 || dim_ancilla_ < 1) throw DimensionError("Apparatus: dims must be >= 1");
    if (ancilla_init_.dim() != dim_ancilla_) throw DimensionError("Apparatus: ancilla_init dimension");
    if (joint_unitary_.rows() != joint || joint_unitary_.cols() != joint) {
        throw DimensionError("Apparatus: joint unitary must act on dim_system * dim_ancilla");
    }
    if (!joint_unitary_.is_unitary(1e-10)) throw InvariantError("Apparatus: joint operator not unitary");
    if (pointer_projectors_.empty()) throw DimensionError("Apparatus: no pointer projectors");
    if (outcome_values_.size() != pointer_projectors_.size()) {
        throw DimensionError("Apparatus: outcome value count differs from projector count");
    }

    ComplexMatrix sum(joint, joint);
    for (std::size_t a = 0; a < pointer_projectors_.size(); ++a) {
        const ComplexMatrix& pa = pointer_projectors_[a];
        if (pa.rows() != joint || pa.cols() != joint) {
            throw DimensionError("Apparatus: projector dimension");
        }
        if (!pa.is_hermitian(1e-10) || (pa * pa).max_abs_diff(pa) > 1e-10) {
            throw InvariantError("Apparatus: pointer projector not an orthogonal projector");
        }
        for (std::size_t b = a + 1; b < pointer_projectors_.size(); ++b) {
            if ((pa * pointer_projectors_[b]).max_abs() > 1e-10) {
                throw InvariantError("Apparatus: pointer projectors not mutually orthogonal");
            }
        }
        sum += pa;
    }
    if (!sum.is_identity(1e-10)) throw InvariantError("Apparatus: projectors do not sum to identity");
}

Apparatus Apparatus::projective(const std::vector<StateVector>& basis,
                                const std::vector<double>& outcome_values) {
    if (basis.empty()) throw DimensionError("projective: empty basis");
    const int dim = basis.front().dim();
    const int m = static_cast<int>(basis.size());
    if (m != dim) throw DimensionError("projective: basis must span the system space");
    if (outcome_values.size() != basis.size()) {
        throw DimensionError("projective: outcome value count differs from basis size");
    }

    // U = sum_k |phi_k><phi_k| ox S^k with S the cyclic shift, so the
    // pointer lands on |k> exactly when the system is in |phi_k>.
    const int joint = dim * m;
    ComplexMatrix u(joint, joint);
    for (int k = 0; k < m; ++k) {
        const ComplexMatrix proj = outer_product(basis[static_cast<std::size_t>(k)],
                                                 basis[static_cast<std::size_t>(k)]);
        ComplexMatrix shift_k(m, m);
        for (int j = 0; j < m; ++j) shift_k((j + k) % m, j) = 1.0;
        u += tensor_product(proj, shift_k);
    }

    std::vector<ComplexMatrix> projectors;
    projectors.reserve(static_cast<std::size_t>(m));
    const ComplexMatrix eye_s = ComplexMatrix::identity(dim);
    for (int k = 0; k < m; ++k) {
        ComplexMatrix pointer(m, m);
        pointer(k, k) = 1.0;
        projectors.push_back(tensor_product(eye_s, pointer));
    }

    return Apparatus(dim, m, StateVector::basis_state(m, 0), std::move(u), std::move(projectors),
                     outcome_values);
}

Povm::Povm(std::vector<ComplexMatrix> elements_in, std::vector<double> outcome_values_in)
    : elements(std::move(elements_in)), outcome_values(std::move(outcome_values_in)) {
    if (elements.empty()) throw DimensionError("Povm: no elements");
    if (elements.size() != outcome_values.size()) {
        throw DimensionError("Povm: outcome value count differs from element count");
    }
    const int dim = elements.front().rows();
    ComplexMatrix sum(dim, dim);
    for (const ComplexMatrix& m : elements) {
        if (m.rows() != dim || m.cols() != dim) throw DimensionError("Povm: element dimension");
        if (!m.is_hermitian(1e-9)) throw InvariantError("Povm: element not Hermitian");
        const EigResult eig = eig_hermitian(m);
        if (eig.eigenvalues.back() < -1e-9) throw InvariantError("Povm: element not positive");
        sum += m;
    }
    if (!sum.is_identity(1e-9)) throw InvariantError("Povm: elements do not sum to identity");
}

MeterMu::MeterMu() : basis0_(StateVector::basis_state(2, 0)), basis1_(StateVector::basis_state(2, 1)) {}

MeterMu::MeterMu(StateVector basis0, StateVector basis1)
    : basis0_(std::move(basis0)), basis1_(std::move(basis1)) {
    if (basis0_.dim() != 2 || basis1_.dim() != 2) throw DimensionError("MeterMu: qubit meter only");
    if (std::abs(inner_product(basis0_, basis1_)) > 1e-12) {
        throw InvariantError("MeterMu: basis not orthogonal");
    }
}

Apparatus sigma_z_meter() {
    return Apparatus::projective({StateVector::basis_state(2, 0), StateVector::basis_state(2, 1)},
                                 {1.0, -1.0});
}

Apparatus sigma_x_meter() {
    return Apparatus::projective({named_qubit(NamedState::right), named_qubit(NamedState::left)},
                                 {1.0, -1.0});
}

Apparatus random_apparatus(int dim_system, int dim_ancilla, int n_outcomes, std::uint64_t seed) {
    const int joint = dim_system * dim_ancilla;
    if (n_outcomes < 1 || n_outcomes > joint) {
        throw DimensionError("random_apparatus: outcome count exceeds the joint dimension");
    }

    const ComplexMatrix u = random_unitary(joint, derive_seed(seed, {1}));
    const ComplexMatrix pointer_basis = random_unitary(joint, derive_seed(seed, {2}));
    Rng rng(derive_seed(seed, {3}));

    // Block sizes: one column each, remaining columns assigned uniformly.
    std::vector<int> sizes(static_cast<std::size_t>(n_outcomes), 1);
    for (int extra = 0; extra < joint - n_outcomes; ++extra) {
        sizes[static_cast<std::size_t>(rng.uniform_int(0, n_outcomes - 1))] += 1;
    }

    std::vector<ComplexMatrix> projectors;
    projectors.reserve(static_cast<std::size_t>(n_outcomes));
    int col = 0;
    for (int k = 0; k < n_outcomes; ++k) {
        ComplexMatrix proj(joint, joint);
        for (int c = 0; c < sizes[static_cast<std::size_t>(k)]; ++c, ++col) {
            for (int i = 0; i < joint; ++i) {
                for (int j = 0; j < joint; ++j) {
                    proj(i, j) += pointer_basis(i, col) * std::conj(pointer_basis(j, col));
                }
            }
        }
        projectors.push_back(std::move(proj));
    }

    std::vector<double> values(static_cast<std::size_t>(n_outcomes));
    for (double& v : values) v = rng.uniform(-1.0, 1.0);

    return Apparatus(dim_system, dim_ancilla, StateVector::basis_state(dim_ancilla, 0), u,
                     std::move(projectors), std::move(values));
}

std::vector<double> outcome_distribution(const Apparatus& app, const DensityMatrix& rho) {
    if (rho.dim() != app.dim_system()) {
        throw DimensionError("outcome_distribution: state dimension differs from dim_system");
    }
    std::vector<double> probs = readout_functional(app, rho.matrix());
    double total = 0.0;
    for (double p : probs) {
        if (p < -1e-12) throw InvariantError("outcome_distribution: negative probability");
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-10) {
        throw InvariantError("outcome_distribution: probabilities do not sum to 1");
    }
    return probs;
}

double expected_value(const Apparatus& app, const DensityMatrix& rho) {
    const std::vector<double> probs = outcome_distribution(app, rho);
    double e = 0.0;
    for (std::size_t k = 0; k < probs.size(); ++k) e += app.outcome_values()[k] * probs[k];
    return e;
}

Apparatus indicator_apparatus(const Apparatus& app, int outcome_index) {
    if (outcome_index < 0 || outcome_index >= app.n_outcomes()) {
        throw DimensionError("indicator_apparatus: outcome index out of range");
    }
    std::vector<double> values(static_cast<std::size_t>(app.n_outcomes()), 0.0);
    values[static_cast<std::size_t>(outcome_index)] = 1.0;
    return Apparatus(app.dim_system(), app.dim_ancilla(), app.ancilla_init(), app.joint_unitary(),
                     app.pointer_projectors(), std::move(values));
}

Povm extract_povm(const Apparatus& app) {
    const int d = app.dim_system();
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

    // Orthonormal Hermitian basis under the Frobenius inner product.
    std::vector<ComplexMatrix> basis;
    basis.reserve(static_cast<std::size_t>(d) * d);
    for (int j = 0; j < d; ++j) {
        ComplexMatrix e(d, d);
        e(j, j) = 1.0;
        basis.push_back(std::move(e));
    }
    for (int j = 0; j < d; ++j) {
        for (int k = j + 1; k < d; ++k) {
            ComplexMatrix re(d, d);
            re(j, k) = inv_sqrt2;
            re(k, j) = inv_sqrt2;
            basis.push_back(std::move(re));
            ComplexMatrix im(d, d);
            im(j, k) = cplx{0.0, -inv_sqrt2};
            im(k, j) = cplx{0.0, inv_sqrt2};
            basis.push_back(std::move(im));
        }
    }

    std::vector<ComplexMatrix> elements(static_cast<std::size_t>(app.n_outcomes()),
                                        ComplexMatrix(d, d));
    for (const ComplexMatrix& b : basis) {
        const std::vector<double> weights = readout_functional(app, b);
        for (int k = 0; k < app.n_outcomes(); ++k) {
            elements[static_cast<std::size_t>(k)] += b * cplx{weights[static_cast<std::size_t>(k)], 0.0};
        }
    }
    return Povm(std::move(elements), app.outcome_values());
}

std::vector<double> povm_probabilities(const Povm& povm, const DensityMatrix& rho) {
    std::vector<double> probs;
    probs.reserve(povm.elements.size());
    for (const ComplexMatrix& m : povm.elements) {
        probs.push_back((rho.matrix() * m).trace().real());
    }
    return probs;
}

std::vector<std::uint64_t> sample_outcomes(const Apparatus& app, const DensityMatrix& rho,
                                           std::uint64_t n, std::uint64_t seed) {
    if (n < 1) throw DimensionError("sample_outcomes: n must be >= 1");
    const std::vector<double> probs = outcome_distribution(app, rho);
    const int m = app.n_outcomes();

    std::vector<double> cdf(static_cast<std::size_t>(m));
    double acc = 0.0;
    for (int k = 0; k < m; ++k) {
        acc += std::max(probs[static_cast<std::size_t>(k)], 0.0);
        cdf[static_cast<std::size_t>(k)] = acc;
    }
    for (double& c : cdf) c /= acc;
    cdf.back() = 1.0;

    const std::uint64_t n_parts = (n + kSampleChunk - 1) / kSampleChunk;
    std::vector<std::vector<std::uint64_t>> part_hist(
        static_cast<std::size_t>(n_parts), std::vector<std::uint64_t>(static_cast<std::size_t>(m), 0));

#pragma omp parallel for schedule(static)
    for (long long p = 0; p < static_cast<long long>(n_parts); ++p) {
        Rng rng(derive_seed(seed, {0x73616d70ULL, static_cast<std::uint64_t>(p)}));  // "samp"
        const std::uint64_t begin = static_cast<std::uint64_t>(p) * kSampleChunk;
        const std::uint64_t count = std::min(kSampleChunk, n - begin);
        std::vector<std::uint64_t>& hist = part_hist[static_cast<std::size_t>(p)];
        for (std::uint64_t i = 0; i < count; ++i) {
            const double u = rng.uniform();
            const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
            const int k = std::min(m - 1, static_cast<int>(it - cdf.begin()));
            hist[static_cast<std::size_t>(k)] += 1;
        }
    }

    std::vector<std::uint64_t> hist(static_cast<std::size_t>(m), 0);
    for (const auto& part : part_hist) {
        for (int k = 0; k < m; ++k) hist[static_cast<std::size_t>(k)] += part[static_cast<std::size_t>(k)];
    }
    return hist;
}

double sample_mean(const Apparatus& app, const DensityMatrix& rho, std::uint64_t n,
                   std::uint64_t seed) {
    const std::vector<std::uint64_t> hist = sample_outcomes(app, rho, n, seed);
    double sum = 0.0;
    for (std::size_t k = 0; k < hist.size(); ++k) {
        sum += app.outcome_values()[k] * static_cast<double>(hist[k]);
    }
    return sum / static_cast<double>(n);
}

}  // namespace rholab
