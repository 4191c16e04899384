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

#include "rholab/states.hpp"

#include <cmath>
#include <cstddef>

#include "rholab/error.hpp"

namespace rholab {

namespace {

constexpr double kRankFloor = 1e-12;  // eigenvalues below this count as zero

const cplx kI{0.0, 1.0};

}  // namespace

ComplexMatrix pauli_x() { return ComplexMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}}); }
ComplexMatrix pauli_y() { return ComplexMatrix::from_rows({{0.0, -kI}, {kI, 0.0}}); }
ComplexMatrix pauli_z() { return ComplexMatrix::from_rows({{1.0, 0.0}, {0.0, -1.0}}); }

DensityMatrix::DensityMatrix(ComplexMatrix matrix) : matrix_(std::move(matrix)) {
    if (!matrix_.is_square()) throw DimensionError("DensityMatrix: matrix not square");
    if (!matrix_.is_hermitian(1e-10)) throw InvariantError("DensityMatrix: not Hermitian");
    if (std::abs(matrix_.trace().real() - 1.0) > 1e-10 || std::abs(matrix_.trace().imag()) > 1e-10) {
        throw InvariantError("DensityMatrix: trace differs from 1");
    }
    const EigResult eig = eig_hermitian(matrix_);
    if (eig.eigenvalues.back() < -1e-10) {
        throw InvariantError("DensityMatrix: negative eigenvalue beyond tolerance");
    }
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
    return DensityMatrix(outer_product(psi, psi));
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
    ComplexMatrix m = ComplexMatrix::identity(dim);
    m *= cplx{1.0 / dim, 0.0};
    return DensityMatrix(std::move(m));
}

int DensityMatrix::numerical_rank() const {
    const EigResult eig = eig_hermitian(matrix_);
    int rank = 0;
    for (double lambda : eig.eigenvalues) {
        if (lambda > kRankFloor) ++rank;
    }
    return rank;
}

BipartiteState::BipartiteState(int dim_s, int dim_e, StateVector vector)
    : dim_s_(dim_s), dim_e_(dim_e), vector_(std::move(vector)) {
    if (dim_s_ < 1 || dim_e_ < 1 || dim_s_ * dim_e_ != vector_.dim()) {
        throw DimensionError("BipartiteState: dim_s * dim_e must equal the vector dimension");
    }
}

BlochVector::BlochVector(std::array<double, 3> p) : p_(p) {
    if (length() > 1.0 + 1e-12) throw InvariantError("BlochVector: |p| > 1");
}

double BlochVector::length() const {
    return std::sqrt(p_[0] * p_[0] + p_[1] * p_[1] + p_[2] * p_[2]);
}

DensityMatrix MixtureComponent::reduced() const { return reduced_density(state, Factor::first); }

DensityMatrix reduced_density(const BipartiteState& psi, Factor keep) {
    const int ds = psi.dim_s();
    const int de = psi.dim_e();
    const int dim_keep = (keep == Factor::first) ? ds : de;
    const int dim_out = (keep == Factor::first) ? de : ds;
    const std::vector<cplx>& amp = psi.vector().amplitudes();

    // rho[i][j] = sum_k psi(i,k) conj(psi(j,k)) with the traced index k.
    ComplexMatrix rho(dim_keep, dim_keep);
    for (int i = 0; i < dim_keep; ++i) {
        for (int j = 0; j < dim_keep; ++j) {
            cplx sum = 0.0;
            for (int k = 0; k < dim_out; ++k) {
                const std::size_t ik = (keep == Factor::first)
                                           ? static_cast<std::size_t>(i) * de + k
                                           : static_cast<std::size_t>(k) * de + i;
                const std::size_t jk = (keep == Factor::first)
                                           ? static_cast<std::size_t>(j) * de + k
                                           : static_cast<std::size_t>(k) * de + j;
                sum += amp[ik] * std::conj(amp[jk]);
            }
            rho(i, j) = sum;
        }
    }
    return DensityMatrix(std::move(rho));
}

SchmidtDecomposition schmidt_decompose(const BipartiteState& psi) {
    const int ds = psi.dim_s();
    const int de = psi.dim_e();
    const DensityMatrix rho_s = reduced_density(psi, Factor::first);
    const EigResult eig = eig_hermitian(rho_s.matrix());
    const std::vector<cplx>& amp = psi.vector().amplitudes();

    SchmidtDecomposition out;
    for (int k = 0; k < ds; ++k) {
        const double lambda = eig.eigenvalues[static_cast<std::size_t>(k)];
        if (lambda <= kRankFloor) break;  // eigenvalues are descending
        const double alpha = std::sqrt(lambda);

        std::vector<cplx> s_vec(static_cast<std::size_t>(ds));
        for (int i = 0; i < ds; ++i) s_vec[static_cast<std::size_t>(i)] = eig.eigenvectors(i, k);

        // |e_k> = (<s_k| ox I) |psi> / alpha_k; this pairing absorbs all
        // phases, so the reconstruction is exact rather than up to phase.
        std::vector<cplx> e_vec(static_cast<std::size_t>(de), cplx{0.0, 0.0});
        for (int i = 0; i < ds; ++i) {
            const cplx w = std::conj(s_vec[static_cast<std::size_t>(i)]) / alpha;
            for (int j = 0; j < de; ++j) {
                e_vec[static_cast<std::size_t>(j)] += w * amp[static_cast<std::size_t>(i) * de + j];
            }
        }

        out.coefficients.push_back(alpha);
        out.s_basis.emplace_back(StateVector::normalized(std::move(s_vec)));
        out.e_basis.emplace_back(StateVector::normalized(std::move(e_vec)));
    }
    return out;
}

BipartiteState schmidt_reconstruct(const SchmidtDecomposition& schmidt,
                                   const std::vector<double>& phases, int dim_s, int dim_e) {
    if (phases.size() != schmidt.coefficients.size()) {
        throw DimensionError("schmidt_reconstruct: phase count differs from Schmidt rank");
    }
    std::vector<cplx> amps(static_cast<std::size_t>(dim_s) * dim_e, cplx{0.0, 0.0});
    for (std::size_t k = 0; k < schmidt.coefficients.size(); ++k) {
        const cplx w = schmidt.coefficients[k] * std::exp(kI * phases[k]);
        const StateVector& s = schmidt.s_basis[k];
        const StateVector& e = schmidt.e_basis[k];
        for (int i = 0; i < dim_s; ++i) {
            for (int j = 0; j < dim_e; ++j) {
                amps[static_cast<std::size_t>(i) * dim_e + j] += w * s[i] * e[j];
            }
        }
    }
    return BipartiteState(dim_s, dim_e, StateVector::normalized(std::move(amps)));
}

BipartiteState purify(const DensityMatrix& rho) {
    const EigResult eig = eig_hermitian(rho.matrix());
    int rank = 0;
    for (double lambda : eig.eigenvalues) {
        if (lambda > kRankFloor) ++rank;
    }
    if (rank == 0) throw InvariantError("purify: zero-rank density matrix");

    const int ds = rho.dim();
    std::vector<cplx> amps(static_cast<std::size_t>(ds) * rank, cplx{0.0, 0.0});
    for (int k = 0; k < rank; ++k) {
        const double w = std::sqrt(eig.eigenvalues[static_cast<std::size_t>(k)]);
        for (int i = 0; i < ds; ++i) {
            amps[static_cast<std::size_t>(i) * rank + k] = w * eig.eigenvectors(i, k);
        }
    }
    return BipartiteState(ds, rank, StateVector::normalized(std::move(amps)));
}

BipartiteState pad_environment(const BipartiteState& psi, int new_dim_e) {
    if (new_dim_e < psi.dim_e()) throw DimensionError("pad_environment: cannot shrink the environment");
    if (new_dim_e == psi.dim_e()) return psi;
    std::vector<cplx> amps(static_cast<std::size_t>(psi.dim_s()) * new_dim_e, cplx{0.0, 0.0});
    for (int i = 0; i < psi.dim_s(); ++i) {
        for (int j = 0; j < psi.dim_e(); ++j) {
            amps[static_cast<std::size_t>(i) * new_dim_e + j] =
                psi.vector()[i * psi.dim_e() + j];
        }
    }
    return BipartiteState(psi.dim_s(), new_dim_e, StateVector(std::move(amps)));
}

DensityMatrix mix(const std::vector<std::pair<double, DensityMatrix>>& components) {
    if (components.empty()) throw DimensionError("mix: no components");
    double total = 0.0;
    for (const auto& [p, rho] : components) {
        if (p < 0.0) throw InvariantError("mix: negative probability");
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-12) throw InvariantError("mix: probabilities do not sum to 1");

    const int dim = components.front().second.dim();
    ComplexMatrix sum(dim, dim);
    for (const auto& [p, rho] : components) {
        if (rho.dim() != dim) throw DimensionError("mix: component dimensions differ");
        sum += rho.matrix() * cplx{p, 0.0};
    }
    return DensityMatrix(std::move(sum));
}

DensityMatrix bloch_to_density(const BlochVector& p) {
    if (p.length() > 1.0 + 1e-12) throw InvariantError("bloch_to_density: |p| > 1");
    ComplexMatrix rho = ComplexMatrix::identity(2);
    rho += pauli_x() * cplx{p[0], 0.0};
    rho += pauli_y() * cplx{p[1], 0.0};
    rho += pauli_z() * cplx{p[2], 0.0};
    rho *= cplx{0.5, 0.0};
    return DensityMatrix(std::move(rho));
}

BlochVector density_to_bloch(const DensityMatrix& rho) {
    if (rho.dim() != 2) throw DimensionError("density_to_bloch: dimension must be 2");
    const double px = (rho.matrix() * pauli_x()).trace().real();
    const double py = (rho.matrix() * pauli_y()).trace().real();
    const double pz = (rho.matrix() * pauli_z()).trace().real();
    return BlochVector(px, py, pz);
}

bool is_pair_state(NamedState name) {
    return name == NamedState::bell_phi || name == NamedState::singlet ||
           name == NamedState::triplet0;
}

BipartiteState named_pair(NamedState name) {
    const double r = 1.0 / std::sqrt(2.0);
    std::vector<cplx> amps(4, cplx{0.0, 0.0});
    switch (name) {
        case NamedState::bell_phi:  // (|00> + |11>)/sqrt2
            amps[0] = r;
            amps[3] = r;
            break;
        case NamedState::singlet:  // (|01> - |10>)/sqrt2
            amps[1] = r;
            amps[2] = -r;
            break;
        case NamedState::triplet0:  // (|01> + |10>)/sqrt2
            amps[1] = r;
            amps[2] = r;
            break;
        default:
            throw DimensionError("named_pair: not a two-qubit state");
    }
    return BipartiteState(2, 2, StateVector(std::move(amps)));
}

StateVector named_qubit(NamedState name) {
    const double r = 1.0 / std::sqrt(2.0);
    switch (name) {
        case NamedState::up:
            return StateVector::basis_state(2, 0);
        case NamedState::down:
            return StateVector::basis_state(2, 1);
        case NamedState::left:
            return StateVector({r, -r});
        case NamedState::right:
            return StateVector({r, r});
        default:
            throw DimensionError("named_qubit: not a single-qubit state");
    }
}

ComplexMatrix envariance_unitary(const std::vector<double>& phases,
                                 const std::vector<StateVector>& e_basis) {
    if (phases.size() != e_basis.size()) {
        throw DimensionError("envariance_unitary: phase count differs from basis count");
    }
    if (e_basis.empty()) throw DimensionError("envariance_unitary: empty basis");
    const int dim = e_basis.front().dim();
    if (static_cast<int>(e_basis.size()) > dim) {
        throw DimensionError("envariance_unitary: more basis vectors than dimensions");
    }
    for (std::size_t a = 0; a < e_basis.size(); ++a) {
        if (e_basis[a].dim() != dim) throw DimensionError("envariance_unitary: mixed dimensions");
        for (std::size_t b = a; b < e_basis.size(); ++b) {
            const cplx overlap = inner_product(e_basis[a], e_basis[b]);
            const cplx want = (a == b) ? cplx{1.0, 0.0} : cplx{0.0, 0.0};
            if (std::abs(overlap - want) > 1e-10) {
                throw InvariantError("envariance_unitary: basis not orthonormal");
            }
        }
    }

    // Identity on the orthogonal complement: I + sum_k (e^{-i phi_k} - 1) P_k.
    ComplexMatrix u = ComplexMatrix::identity(dim);
    for (std::size_t k = 0; k < e_basis.size(); ++k) {
        const cplx w = std::exp(-kI * phases[k]) - 1.0;
        u += outer_product(e_basis[k], e_basis[k]) * w;
    }
    return u;
}

}  // namespace rholab
