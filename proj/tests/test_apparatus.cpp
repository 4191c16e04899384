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

#include <doctest.h>

#include <cmath>

#include "rholab/apparatus.hpp"
#include "rholab/error.hpp"
#include "test_helpers.hpp"

using namespace rholab;
using namespace rholab::testing;

namespace {

DensityMatrix random_qubit_density(std::uint64_t seed) {
    Rng rng(seed);
    return DensityMatrix(random_density(2, rng.uniform_int(1, 2), derive_seed(seed, {1})));
}

// Dilation route to the POVM: M_k = V^dag Pi_k V with V = U (I ox |a0>).
// Independent of the basis-inversion route used by extract_povm.
ComplexMatrix povm_element_via_isometry(const Apparatus& app, int k) {
    const int ds = app.dim_system();
    const int da = app.dim_ancilla();
    const int joint = ds * da;

    ComplexMatrix isometry(joint, ds);
    for (int row = 0; row < joint; ++row) {
        for (int col = 0; col < ds; ++col) {
            cplx sum = 0.0;
            for (int a = 0; a < da; ++a) {
                sum += app.joint_unitary()(row, col * da + a) * app.ancilla_init()[a];
            }
            isometry(row, col) = sum;
        }
    }
    return isometry.adjoint() * app.pointer_projectors()[static_cast<std::size_t>(k)] * isometry;
}

// Extends an apparatus to act on system ox environment, touching the
// environment only through identity. Exercises the statement that outcome
// statistics depend on the reduced state alone.
Apparatus extend_over_environment(const Apparatus& app, int dim_env) {
    const int ds = app.dim_system();
    const int da = app.dim_ancilla();
    const int big = ds * dim_env * da;

    const auto embed = [&](const ComplexMatrix& op) {
        // op acts on (system, ancilla); insert an identity environment index
        // between them: (s, e, a) ordering.
        ComplexMatrix out(big, big);
        for (int s = 0; s < ds; ++s)
            for (int e = 0; e < dim_env; ++e)
                for (int a = 0; a < da; ++a)
                    for (int s2 = 0; s2 < ds; ++s2)
                        for (int a2 = 0; a2 < da; ++a2)
                            out((s * dim_env + e) * da + a, (s2 * dim_env + e) * da + a2) =
                                op(s * da + a, s2 * da + a2);
        return out;
    };

    std::vector<ComplexMatrix> projectors;
    for (const ComplexMatrix& p : app.pointer_projectors()) projectors.push_back(embed(p));
    return Apparatus(ds * dim_env, da, app.ancilla_init(), embed(app.joint_unitary()),
                     std::move(projectors), app.outcome_values());
}

}  // namespace

TEST_CASE("sigma_z meter reproduces eigenstate and symmetric statistics") {
    const Apparatus meter = sigma_z_meter();

    const auto up = outcome_distribution(meter, DensityMatrix::pure(named_qubit(NamedState::up)));
    CHECK(up[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(up[1]) < 1e-12);
    CHECK(expected_value(meter, DensityMatrix::pure(named_qubit(NamedState::up))) ==
          doctest::Approx(1.0).epsilon(1e-12));

    const auto flat = outcome_distribution(meter, DensityMatrix::maximally_mixed(2));
    CHECK(flat[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(flat[1] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::abs(expected_value(meter, DensityMatrix::maximally_mixed(2))) < 1e-12);
}

TEST_CASE("random_apparatus: determinism, completeness, invariants") {
    const Apparatus one = random_apparatus(2, 2, 1, 5);
    const auto probs = outcome_distribution(one, random_qubit_density(17));
    CHECK(probs.size() == 1);
    CHECK(probs[0] == doctest::Approx(1.0).epsilon(1e-12));

    const Apparatus a = random_apparatus(3, 2, 4, 42);
    const Apparatus b = random_apparatus(3, 2, 4, 42);
    for (std::size_t i = 0; i < a.joint_unitary().data().size(); ++i) {
        CHECK(a.joint_unitary().data()[i] == b.joint_unitary().data()[i]);
    }
    CHECK(a.outcome_values() == b.outcome_values());

    // Invariants are enforced by the constructor; surviving construction is
    // the check. Exercise a few seeds and shapes.
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        const Apparatus app = random_apparatus(2 + seed % 2, 1 + seed % 3, 2, seed);
        CHECK(app.joint_unitary().is_unitary(1e-10));
    }

    CHECK_THROWS_AS(random_apparatus(2, 2, 5, 0), DimensionError);
}

TEST_CASE("outcome_distribution is a probability distribution matching the POVM") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Apparatus app = random_apparatus(3, 2, 4, seed);
        const Povm povm = extract_povm(app);
        for (int t = 0; t < 5; ++t) {
            Rng rng(derive_seed(seed, {7, static_cast<std::uint64_t>(t)}));
            const DensityMatrix rho(
                random_density(3, rng.uniform_int(1, 3), derive_seed(seed, {8, static_cast<std::uint64_t>(t)})));
            const auto engine = outcome_distribution(app, rho);
            const auto via_povm = povm_probabilities(povm, rho);

            double total = 0.0;
            for (std::size_t k = 0; k < engine.size(); ++k) {
                CHECK(engine[k] > -1e-12);
                CHECK(engine[k] < 1.0 + 1e-12);
                total += engine[k];
                CHECK(std::abs(engine[k] - via_povm[k]) < 1e-10);
            }
            CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
        }
    }
}

TEST_CASE("expected_value is linear along density-matrix segments") {
    const Apparatus app = random_apparatus(2, 2, 3, 13);
    const DensityMatrix rho0 = random_qubit_density(100);
    const DensityMatrix rho1 = random_qubit_density(101);
    const double f0 = expected_value(app, rho0);
    const double f1 = expected_value(app, rho1);
    for (int i = 0; i <= 10; ++i) {
        const double lambda = i / 10.0;
        const double direct = expected_value(app, mix({{1.0 - lambda, rho0}, {lambda, rho1}}));
        CHECK(std::abs(direct - ((1.0 - lambda) * f0 + lambda * f1)) < 1e-10);
    }
}

TEST_CASE("affinity holds per outcome on the lambda grid") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const Apparatus app = random_apparatus(2, 3, 4, seed + 60);
        const DensityMatrix rho0 = random_qubit_density(seed + 200);
        const DensityMatrix rho1 = random_qubit_density(seed + 300);
        const auto p0 = outcome_distribution(app, rho0);
        const auto p1 = outcome_distribution(app, rho1);
        for (int i = 0; i <= 10; ++i) {
            const double lambda = i / 10.0;
            const auto mixed = outcome_distribution(app, mix({{1.0 - lambda, rho0}, {lambda, rho1}}));
            for (std::size_t k = 0; k < mixed.size(); ++k) {
                CHECK(std::abs(mixed[k] - ((1.0 - lambda) * p0[k] + lambda * p1[k])) < 1e-10);
            }
        }
    }
}

TEST_CASE("indicator apparatus turns probabilities into expectations") {
    const Apparatus meter = sigma_z_meter();
    CHECK(expected_value(indicator_apparatus(meter, 0),
                         DensityMatrix::pure(named_qubit(NamedState::up))) ==
          doctest::Approx(1.0).epsilon(1e-12));

    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        Rng rng(seed);
        const int ds = rng.uniform_int(2, 3);
        const int da = rng.uniform_int(1, 2);
        const Apparatus app =
            random_apparatus(ds, da, rng.uniform_int(1, ds * da), derive_seed(seed, {1}));
        const DensityMatrix rho(
            random_density(ds, rng.uniform_int(1, ds), derive_seed(seed, {2})));
        const auto probs = outcome_distribution(app, rho);

        double total = 0.0;
        for (int k = 0; k < app.n_outcomes(); ++k) {
            const double indicated = expected_value(indicator_apparatus(app, k), rho);
            CHECK(std::abs(indicated - probs[static_cast<std::size_t>(k)]) < 1e-12);
            total += indicated;
        }
        CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
    }

    CHECK_THROWS_AS(indicator_apparatus(meter, 2), DimensionError);
}

TEST_CASE("extract_povm: projective, trivial, and random black boxes") {
    const Povm z = extract_povm(sigma_z_meter());
    ComplexMatrix p0(2, 2);
    p0(0, 0) = 1.0;
    ComplexMatrix p1(2, 2);
    p1(1, 1) = 1.0;
    CHECK(z.elements[0].max_abs_diff(p0) < 1e-10);
    CHECK(z.elements[1].max_abs_diff(p1) < 1e-10);

    const Povm trivial = extract_povm(random_apparatus(3, 1, 1, 2));
    CHECK(trivial.elements[0].max_abs_diff(ComplexMatrix::identity(3)) < 1e-10);

    const Apparatus app = random_apparatus(3, 2, 4, 77);
    const Povm povm = extract_povm(app);
    for (int t = 0; t < 50; ++t) {
        Rng rng(derive_seed(77, {5, static_cast<std::uint64_t>(t)}));
        const DensityMatrix rho(
            random_density(3, rng.uniform_int(1, 3), derive_seed(77, {6, static_cast<std::uint64_t>(t)})));
        const auto engine = outcome_distribution(app, rho);
        const auto reproduced = povm_probabilities(povm, rho);
        for (std::size_t k = 0; k < engine.size(); ++k) {
            CHECK(std::abs(engine[k] - reproduced[k]) < 1e-9);
        }
    }

    // Dual route: dilation isometry gives the same elements.
    for (int k = 0; k < app.n_outcomes(); ++k) {
        CHECK(povm.elements[static_cast<std::size_t>(k)].max_abs_diff(
                  povm_element_via_isometry(app, k)) < 1e-10);
    }
}

TEST_CASE("outcome statistics depend only on the reduced density matrix") {
    // Two different purifications of the same rho fed through the same
    // apparatus extended trivially over the environment.
    const DensityMatrix rho(random_density(2, 2, 51));
    const Apparatus app = random_apparatus(2, 2, 3, 52);

    const BipartiteState psi_a = purify(rho);
    // Second purification: rotate the environment by a random unitary.
    const ComplexMatrix u_env = random_unitary(psi_a.dim_e(), 53);
    const StateVector rotated =
        apply(tensor_product(ComplexMatrix::identity(2), u_env), psi_a.vector());
    const BipartiteState psi_b(psi_a.dim_s(), psi_a.dim_e(), rotated);

    const Apparatus extended = extend_over_environment(app, psi_a.dim_e());
    const auto dist_a = outcome_distribution(
        extended, DensityMatrix(outer_product(psi_a.vector(), psi_a.vector())));
    const auto dist_b = outcome_distribution(
        extended, DensityMatrix(outer_product(psi_b.vector(), psi_b.vector())));
    const auto dist_reduced = outcome_distribution(app, rho);

    for (std::size_t k = 0; k < dist_a.size(); ++k) {
        CHECK(std::abs(dist_a[k] - dist_b[k]) < 1e-10);
        CHECK(std::abs(dist_a[k] - dist_reduced[k]) < 1e-10);
    }
}

TEST_CASE("sample_outcomes: determinism, completeness, binomial bounds") {
    const Apparatus one = random_apparatus(2, 2, 1, 3);
    const auto all = sample_outcomes(one, DensityMatrix::maximally_mixed(2), 1000, 9);
    CHECK(all[0] == 1000);

    const Apparatus meter = sigma_z_meter();
    const std::uint64_t n = 100000;
    const auto hist = sample_outcomes(meter, DensityMatrix::maximally_mixed(2), n, 1234);
    CHECK(hist[0] + hist[1] == n);
    const double sigma = std::sqrt(n / 4.0);
    CHECK(std::abs(static_cast<double>(hist[0]) - n / 2.0) < 5.0 * sigma);
    CHECK(std::abs(static_cast<double>(hist[1]) - n / 2.0) < 5.0 * sigma);

    const auto again = sample_outcomes(meter, DensityMatrix::maximally_mixed(2), n, 1234);
    CHECK(hist == again);
    const auto other = sample_outcomes(meter, DensityMatrix::maximally_mixed(2), n, 1235);
    CHECK(hist != other);
}

TEST_CASE("sample_mean converges to the exact expectation") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const Apparatus app = random_apparatus(2, 2, 3, seed + 500);
        const DensityMatrix rho = random_qubit_density(seed + 600);
        const std::uint64_t n = 100000;

        const double exact = expected_value(app, rho);
        const auto probs = outcome_distribution(app, rho);
        double second_moment = 0.0;
        for (std::size_t k = 0; k < probs.size(); ++k) {
            second_moment += probs[k] * app.outcome_values()[k] * app.outcome_values()[k];
        }
        const double sigma_mean =
            std::sqrt(std::max(second_moment - exact * exact, 0.0) / static_cast<double>(n));

        const double empirical = sample_mean(app, rho, n, seed);
        CHECK(std::abs(empirical - exact) < 5.0 * sigma_mean + 1e-12);
    }
}

TEST_CASE("Povm constructor rejects non-positive or incomplete families") {
    ComplexMatrix p0(2, 2);
    p0(0, 0) = 1.0;
    ComplexMatrix p1(2, 2);
    p1(1, 1) = 1.0;

    // Does not sum to identity.
    CHECK_THROWS_AS(Povm({p0, p0}, {1.0, -1.0}), InvariantError);
    // Negative element.
    CHECK_THROWS_AS(Povm({p0 * cplx{2.0, 0.0}, p1 - p0}, {1.0, -1.0}), InvariantError);
    // Count mismatch.
    CHECK_THROWS_AS(Povm({p0, p1}, {1.0}), DimensionError);
    // Valid projective family passes.
    CHECK_NOTHROW(Povm({p0, p1}, {1.0, -1.0}));
}

TEST_CASE("apparatus constructor rejects malformed dilations") {
    // Non-unitary joint operator.
    std::vector<ComplexMatrix> projs{ComplexMatrix::identity(4)};
    CHECK_THROWS_AS(Apparatus(2, 2, StateVector::basis_state(2, 0), random_matrix(4, 4, 3), projs,
                              {1.0}),
                    InvariantError);

    // Projectors that do not sum to identity.
    ComplexMatrix p(4, 4);
    p(0, 0) = 1.0;
    CHECK_THROWS_AS(Apparatus(2, 2, StateVector::basis_state(2, 0), ComplexMatrix::identity(4),
                              std::vector<ComplexMatrix>{p}, {1.0}),
                    InvariantError);

    // Outcome value count mismatch.
    CHECK_THROWS_AS(Apparatus(2, 2, StateVector::basis_state(2, 0), ComplexMatrix::identity(4),
                              std::vector<ComplexMatrix>{ComplexMatrix::identity(4)}, {1.0, 2.0}),
                    DimensionError);

    // State dimension mismatch at evaluation time.
    CHECK_THROWS_AS(outcome_distribution(sigma_z_meter(), DensityMatrix::maximally_mixed(3)),
                    DimensionError);
}
