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

#include "rholab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <string>

#include "rholab/error.hpp"
#include "rholab/rng.hpp"

namespace rholab {

int max_total_dim() {
    static const int cap = [] {
        if (const char* env = std::getenv("RHO_LAB_MAX_DIM")) {
            const int v = std::atoi(env);
            if (v >= 1) return v;
        }
        return 4096;
    }();
    return cap;
}

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    const long long rows = static_cast<long long>(a.rows()) * b.rows();
    const long long cols = static_cast<long long>(a.cols()) * b.cols();
    if (rows > max_total_dim() || cols > max_total_dim()) {
        throw DimensionError("tensor_product: result exceeds the configured dimension cap (" +
                             std::to_string(max_total_dim()) + ")");
    }
    return kernels::tensor_product(a, b);
}

StateVector tensor_product(const StateVector& a, const StateVector& b) {
    const long long dim = static_cast<long long>(a.dim()) * b.dim();
    if (dim > max_total_dim()) {
        throw DimensionError("tensor_product: result exceeds the configured dimension cap");
    }
    std::vector<cplx> amps(static_cast<std::size_t>(dim));
    for (int i = 0; i < a.dim(); ++i) {
        for (int j = 0; j < b.dim(); ++j) {
            amps[static_cast<std::size_t>(i) * b.dim() + j] = a[i] * b[j];
        }
    }
    return StateVector(std::move(amps));
}

ComplexMatrix partial_trace(const ComplexMatrix& m, int dim_a, int dim_b, Factor keep) {
    return kernels::partial_trace(m, dim_a, dim_b, keep);
}

namespace {

double off_diagonal_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) {
            if (i != j) s += std::norm(a(i, j));
        }
    }
    return std::sqrt(s);
}

}  // namespace

EigResult eig_hermitian(const ComplexMatrix& m) {
    if (!m.is_square()) throw DimensionError("eig_hermitian: matrix not square");
    if (!m.is_hermitian(1e-10)) throw InvariantError("eig_hermitian: matrix not Hermitian");

    const int n = m.rows();
    // Work on the exactly Hermitian average so roundoff in the input cannot
    // leak into complex diagonal entries.
    ComplexMatrix a(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) a(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
    }
    ComplexMatrix v = ComplexMatrix::identity(n);

    const double scale = std::max(1.0, a.frobenius_norm());
    const double target = 1e-15 * scale;
    const int max_sweeps = 80;

    for (int sweep = 0; sweep < max_sweeps && off_diagonal_norm(a) > target; ++sweep) {
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const cplx apq = a(p, q);
                const double r = std::abs(apq);
                if (r <= 1e-300) continue;
                // Unitary plane rotation in (p,q):
                //   J(p,p)=c, J(p,q)=s e^{i phi}, J(q,p)=-s e^{-i phi}, J(q,q)=c
                // with phi = arg a_pq and tan chosen to annihilate a_pq.
                const cplx phase = apq / r;
                const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * r);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const cplx w = s * phase;

                // Columns: A <- A J, V <- V J.
                for (int i = 0; i < n; ++i) {
                    const cplx aip = a(i, p), aiq = a(i, q);
                    a(i, p) = c * aip - std::conj(w) * aiq;
                    a(i, q) = w * aip + c * aiq;
                    const cplx vip = v(i, p), viq = v(i, q);
                    v(i, p) = c * vip - std::conj(w) * viq;
                    v(i, q) = w * vip + c * viq;
                }
                // Rows: A <- J^dag A.
                for (int j = 0; j < n; ++j) {
                    const cplx apj = a(p, j), aqj = a(q, j);
                    a(p, j) = c * apj - w * aqj;
                    a(q, j) = std::conj(w) * apj + c * aqj;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
            }
        }
    }

    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int x, int y) { return a(x, x).real() > a(y, y).real(); });

    EigResult result{std::vector<double>(static_cast<std::size_t>(n)), ComplexMatrix(n, n)};
    for (int k = 0; k < n; ++k) {
        const int src = order[static_cast<std::size_t>(k)];
        result.eigenvalues[static_cast<std::size_t>(k)] = a(src, src).real();
        for (int i = 0; i < n; ++i) result.eigenvectors(i, k) = v(i, src);
    }
    return result;
}

ComplexMatrix random_unitary(int dim, std::uint64_t seed) {
    if (dim < 1) throw DimensionError("random_unitary: dim must be >= 1");
    Rng rng(derive_seed(seed, {0x756e6974ULL}));  // "unit"
    ComplexMatrix q(dim, dim);

    for (int j = 0; j < dim; ++j) {
        std::vector<cplx> col(static_cast<std::size_t>(dim));
        double nrm = 0.0;
        do {
            for (int i = 0; i < dim; ++i) col[static_cast<std::size_t>(i)] = rng.gaussian_complex();
            // Two MGS passes keep the columns orthonormal to machine precision.
            for (int pass = 0; pass < 2; ++pass) {
                for (int k = 0; k < j; ++k) {
                    cplx proj = 0.0;
                    for (int i = 0; i < dim; ++i) proj += std::conj(q(i, k)) * col[static_cast<std::size_t>(i)];
                    for (int i = 0; i < dim; ++i) col[static_cast<std::size_t>(i)] -= proj * q(i, k);
                }
            }
            nrm = vector_norm(col);
        } while (nrm < 1e-8);  // resample a degenerate draw
        for (int i = 0; i < dim; ++i) q(i, j) = col[static_cast<std::size_t>(i)] / nrm;
    }
    return q;
}

ComplexMatrix random_density(int dim, int rank, std::uint64_t seed) {
    if (dim < 1) throw DimensionError("random_density: dim must be >= 1");
    if (rank < 1 || rank > dim) throw DimensionError("random_density: rank out of range [1, dim]");
    Rng rng(derive_seed(seed, {0x64656e73ULL}));  // "dens"

    ComplexMatrix g(dim, rank);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < rank; ++j) g(i, j) = rng.gaussian_complex();
    }
    ComplexMatrix rho = g * g.adjoint();
    const double tr = rho.trace().real();
    rho *= cplx{1.0 / tr, 0.0};
    return rho;
}

std::vector<StateVector> complete_orthonormal_basis(const std::vector<StateVector>& seed, int dim) {
    std::vector<std::vector<cplx>> basis;
    basis.reserve(static_cast<std::size_t>(dim));
    for (const StateVector& s : seed) {
        if (s.dim() != dim) throw DimensionError("complete_orthonormal_basis: seed dimension mismatch");
        basis.push_back(s.amplitudes());
    }

    for (int cand = 0; cand < dim && static_cast<int>(basis.size()) < dim; ++cand) {
        std::vector<cplx> v(static_cast<std::size_t>(dim), cplx{0.0, 0.0});
        v[static_cast<std::size_t>(cand)] = 1.0;
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& b : basis) {
                const cplx proj = inner_product(b, v);
                for (std::size_t i = 0; i < v.size(); ++i) v[i] -= proj * b[i];
            }
        }
        const double nrm = vector_norm(v);
        if (nrm < 1e-6) continue;  // candidate nearly parallel to the span
        for (cplx& z : v) z /= nrm;
        basis.push_back(std::move(v));
    }
    if (static_cast<int>(basis.size()) != dim) {
        throw InvariantError("complete_orthonormal_basis: completion failed (seed not orthonormal?)");
    }

    std::vector<StateVector> out;
    out.reserve(basis.size());
    for (auto& b : basis) out.emplace_back(StateVector::normalized(std::move(b)));
    return out;
}

ComplexMatrix unitary_mapping(const StateVector& v, const StateVector& w) {
    if (v.dim() != w.dim()) throw DimensionError("unitary_mapping: dimension mismatch");
    const int n = v.dim();
    const std::vector<StateVector> from = complete_orthonormal_basis({v}, n);
    const std::vector<StateVector> to = complete_orthonormal_basis({w}, n);
    ComplexMatrix u(n, n);
    for (int k = 0; k < n; ++k) u += outer_product(to[static_cast<std::size_t>(k)], from[static_cast<std::size_t>(k)]);
    return u;
}

}  // namespace rholab
