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

#include "rholab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "rholab/error.hpp"
#include "rholab/reconstruction.hpp"
#include "rholab/rng.hpp"

namespace rholab {

namespace {

// Joint setup shared by the paired thought experiments: particles A, B
// carry the purifications, qubits alpha (control) and beta (spectator)
// carry the two-qubit source. Factor order is A, B, alpha, beta.
struct ThoughtSetup {
    int dim_a;
    int dim_rest;          // dB * 4
    ComplexMatrix g_full;  // gate on A,B,alpha extended by identity on beta
    StateVector joint;     // source output, before the gate
};

ThoughtSetup prepare_setup(const DensityMatrix& rho0, const DensityMatrix& rho1, double amp0,
                           double amp1) {
    if (rho0.dim() != rho1.dim()) {
        throw DimensionError("thought experiment: input state dimensions differ");
    }
    BipartiteState psi0 = purify(rho0);
    BipartiteState psi1 = purify(rho1);
    const int dim_b = std::max(psi0.dim_e(), psi1.dim_e());
    psi0 = pad_environment(psi0, dim_b);
    psi1 = pad_environment(psi1, dim_b);

    const GateG gate = build_gate_g(psi0, psi1);

    std::vector<cplx> source(4, cplx{0.0, 0.0});
    source[0] = amp0;  // |0>|0>
    source[3] = amp1;  // |1>|1>

    return ThoughtSetup{
        rho0.dim(), dim_b * 4,
        tensor_product(gate.unitary, ComplexMatrix::identity(2)),
        tensor_product(psi0.vector(), StateVector(std::move(source)))};
}

DensityMatrix reduced_a_after_gate(const ThoughtSetup& setup, const StateVector& joint) {
    const StateVector after = apply(setup.g_full, joint);
    return reduced_density(BipartiteState(setup.dim_a, setup.dim_rest, after), Factor::first);
}

// Probability that the spectator qubit beta (the fastest index) reads 1.
double beta_one_probability(const StateVector& joint) {
    double p = 0.0;
    for (int i = 1; i < joint.dim(); i += 2) p += std::norm(joint[i]);
    return p;
}

// Conditional state given beta = value, by projection and renormalization.
StateVector project_beta(const StateVector& joint, int value) {
    std::vector<cplx> amps(joint.amplitudes());
    for (int i = 0; i < joint.dim(); ++i) {
        if (i % 2 != value) amps[static_cast<std::size_t>(i)] = 0.0;
    }
    return StateVector::normalized(std::move(amps));
}

DensityMatrix interpolate(const DensityMatrix& rho0, const DensityMatrix& rho1, double lambda) {
    return mix({{1.0 - lambda, rho0}, {lambda, rho1}});
}

// The nested-midpoint iteration: expands F at p/2^q through repeated
// midpoint identities until only the engine values at the endpoints remain.
double iterated_midpoint(double f0, double f1, int p, int q) {
    if (q == 0) return p == 0 ? f0 : f1;
    if (p % 2 == 0) return iterated_midpoint(f0, f1, p / 2, q - 1);
    return 0.5 * (iterated_midpoint(f0, f1, (p - 1) / 2, q - 1) +
                  iterated_midpoint(f0, f1, (p + 1) / 2, q - 1));
}

constexpr int kMaxDyadicLevel = 8;

}  // namespace

int max_dyadic_level() { return kMaxDyadicLevel; }

ExperimentReport make_report(std::string label, double expectation,
                             std::vector<double> conditional_expectations,
                             double branch_probability, double reference_value, double residual,
                             double tolerance) {
    ExperimentReport r;
    r.label = std::move(label);
    r.expectation = expectation;
    r.conditional_expectations = std::move(conditional_expectations);
    r.branch_probability = branch_probability;
    r.reference_value = reference_value;
    r.residual = residual;
    r.tolerance = tolerance;
    r.pass = std::abs(residual) <= tolerance;
    return r;
}

GateG build_gate_g(const BipartiteState& psi0, const BipartiteState& psi1) {
    if (psi0.dim_s() != psi1.dim_s() || psi0.dim_e() != psi1.dim_e()) {
        throw DimensionError("build_gate_g: states live on different spaces");
    }
    const int dim_ab = psi0.vector().dim();
    const ComplexMatrix mapping = unitary_mapping(psi0.vector(), psi1.vector());

    ComplexMatrix control0(2, 2);
    control0(0, 0) = 1.0;
    ComplexMatrix control1(2, 2);
    control1(1, 1) = 1.0;

    ComplexMatrix g = tensor_product(ComplexMatrix::identity(dim_ab), control0);
    g += tensor_product(mapping, control1);
    if (!g.is_unitary(1e-10)) throw InvariantError("build_gate_g: assembled gate not unitary");
    return GateG{dim_ab, std::move(g)};
}

std::pair<int, StateVector> run_fig2(const MeterMu& meter1, std::uint64_t seed) {
    const BipartiteState phi = named_pair(NamedState::bell_phi);
    const std::vector<cplx>& amp = phi.vector().amplitudes();

    // Conditional (unnormalized) upper-qubit amplitudes w_x[i] = <m_x|_2 phi.
    const auto condition_on = [&](const StateVector& m) {
        std::vector<cplx> w(2, cplx{0.0, 0.0});
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) w[static_cast<std::size_t>(i)] += std::conj(m[j]) * amp[static_cast<std::size_t>(i) * 2 + j];
        }
        return w;
    };

    std::vector<cplx> w0 = condition_on(meter1.basis0());
    std::vector<cplx> w1 = condition_on(meter1.basis1());
    const double p1 = vector_norm(w1) * vector_norm(w1);

    Rng rng(derive_seed(seed, {0x66696732ULL}));  // "fig2"
    const int outcome = rng.uniform() < p1 ? 1 : 0;
    return {outcome, StateVector::normalized(outcome == 1 ? std::move(w1) : std::move(w0))};
}

ExperimentReport run_fig3a(const DensityMatrix& rho0, const DensityMatrix& rho1,
                           const Apparatus& app, double tolerance) {
    const double r = 1.0 / std::sqrt(2.0);
    const ThoughtSetup setup = prepare_setup(rho0, rho1, r, r);
    const double e = expected_value(app, reduced_a_after_gate(setup, setup.joint));
    const double reference = expected_value(app, interpolate(rho0, rho1, 0.5));
    return make_report("fig3a", e, {}, 0.5, reference, e - reference, tolerance);
}

ExperimentReport run_fig3b(const DensityMatrix& rho0, const DensityMatrix& rho1,
                           const Apparatus& app, double tolerance) {
    const double r = 1.0 / std::sqrt(2.0);
    const ThoughtSetup setup = prepare_setup(rho0, rho1, r, r);

    // Meter mu reads beta before the gate.
    const double a = beta_one_probability(setup.joint);
    const double e0 = expected_value(app, reduced_a_after_gate(setup, project_beta(setup.joint, 0)));
    const double e1 = expected_value(app, reduced_a_after_gate(setup, project_beta(setup.joint, 1)));
    const double e = (1.0 - a) * e0 + a * e1;

    const double f0 = expected_value(app, rho0);
    const double f1 = expected_value(app, rho1);
    const double e_unconditioned = expected_value(app, reduced_a_after_gate(setup, setup.joint));

    const double residual =
        std::max({std::abs(e0 - f0), std::abs(e1 - f1), std::abs(e - e_unconditioned)});
    return make_report("fig3b", e, {e0, e1}, a, e_unconditioned, residual, tolerance);
}

ExperimentReport check_midpoint(const DensityMatrix& rho0, const DensityMatrix& rho1,
                                const Apparatus& app, double tolerance) {
    const double f0 = expected_value(app, rho0);
    const double f1 = expected_value(app, rho1);
    const double e = expected_value(app, interpolate(rho0, rho1, 0.5));
    const double reference = 0.5 * (f0 + f1);
    return make_report("midpoint", e, {f0, f1}, 0.5, reference, e - reference, tolerance);
}

ExperimentReport check_dyadic(const DensityMatrix& rho0, const DensityMatrix& rho1,
                              const Apparatus& app, int p, int q, double tolerance) {
    if (q < 0 || q > kMaxDyadicLevel) throw DimensionError("check_dyadic: q out of range");
    if (p < 0 || p > (1 << q)) throw DimensionError("check_dyadic: p out of range [0, 2^q]");
    const double lambda = static_cast<double>(p) / static_cast<double>(1 << q);

    const double f0 = expected_value(app, rho0);
    const double f1 = expected_value(app, rho1);
    const double direct = expected_value(app, interpolate(rho0, rho1, lambda));
    const double reference = (1.0 - lambda) * f0 + lambda * f1;
    const double iterated = iterated_midpoint(f0, f1, p, q);

    const double residual = std::max(std::abs(direct - reference), std::abs(direct - iterated));
    return make_report("dyadic(" + std::to_string(p) + "/2^" + std::to_string(q) + ")", direct,
                       {f0, f1}, lambda, reference, residual, tolerance);
}

ExperimentReport run_appendix(double xi, double lambda, double eta, const DensityMatrix& rho0,
                              const DensityMatrix& rho1, const Apparatus& app, double tolerance) {
    if (!(xi < lambda && lambda < eta)) {
        throw InvariantError("run_appendix: requires xi < lambda < eta");
    }
    if (xi < 0.0 || eta > 1.0) throw InvariantError("run_appendix: xi, eta must lie in [0, 1]");

    const DensityMatrix rho_xi = interpolate(rho0, rho1, xi);
    const DensityMatrix rho_lambda = interpolate(rho0, rho1, lambda);
    const DensityMatrix rho_eta = interpolate(rho0, rho1, eta);

    // Source amplitudes place the reduced state after the gate at rho_lambda.
    const double amp0 = std::sqrt((eta - lambda) / (eta - xi));
    const double amp1 = std::sqrt((lambda - xi) / (eta - xi));
    const ThoughtSetup setup = prepare_setup(rho_xi, rho_eta, amp0, amp1);

    const DensityMatrix rho_after = reduced_a_after_gate(setup, setup.joint);
    const double state_residual = rho_after.matrix().max_abs_diff(rho_lambda.matrix());

    const double a_tilde = beta_one_probability(setup.joint);
    const double a_expected = (lambda - xi) / (eta - xi);

    const double f_xi = expected_value(app, rho_xi);
    const double f_eta = expected_value(app, rho_eta);
    const double f_lambda = expected_value(app, rho_lambda);
    const double experiment_value = expected_value(app, rho_after);

    const double two_point = (1.0 - a_tilde) * f_xi + a_tilde * f_eta;

    // Between-bracket bound; min/max covers the relabeling the symmetric
    // roles of the endpoints allow when F(rho_xi) > F(rho_eta).
    const double lo = std::min(f_xi, f_eta);
    const double hi = std::max(f_xi, f_eta);
    const double sandwich_violation = std::max({0.0, lo - f_lambda, f_lambda - hi});

    const double f0 = expected_value(app, rho0);
    const double f1 = expected_value(app, rho1);
    const double reference = (1.0 - lambda) * f0 + lambda * f1;

    const double residual =
        std::max({state_residual, std::abs(experiment_value - f_lambda),
                  std::abs(a_tilde - a_expected), std::abs(f_lambda - two_point),
                  sandwich_violation, std::abs(f_lambda - reference)});
    return make_report("appendix", f_lambda, {f_xi, f_eta}, a_tilde, reference, residual,
                       tolerance);
}

ExperimentReport check_general_mixture(const std::vector<MixtureComponent>& components,
                                       const Apparatus& app, double tolerance) {
    if (components.empty()) throw DimensionError("check_general_mixture: no components");
    double total = 0.0;
    for (const MixtureComponent& c : components) {
        if (c.probability < 0.0) throw InvariantError("check_general_mixture: negative probability");
        total += c.probability;
    }
    if (std::abs(total - 1.0) > 1e-12) {
        throw InvariantError("check_general_mixture: probabilities do not sum to 1");
    }

    std::vector<DensityMatrix> rhos;
    std::vector<std::pair<double, DensityMatrix>> weighted;
    std::vector<double> conditionals;
    rhos.reserve(components.size());
    double lhs = 0.0;
    for (const MixtureComponent& c : components) {
        rhos.push_back(c.reduced());
        const double fk = expected_value(app, rhos.back());
        conditionals.push_back(fk);
        lhs += c.probability * fk;
        weighted.emplace_back(c.probability, rhos.back());
    }
    const double rhs = expected_value(app, mix(weighted));

    double chain_residual = 0.0;
    if (components.size() == 3) {
        // Step-by-step expansion of the three-component case: peel off the
        // first component, recombine the remaining two, and compare each
        // rewrite against the engine.
        const double p1 = components[0].probability;
        const double p23 = components[1].probability + components[2].probability;
        if (p23 > 1e-12) {
            const DensityMatrix inner = mix({{components[1].probability / p23, rhos[1]},
                                             {components[2].probability / p23, rhos[2]}});
            const double f_inner = expected_value(app, inner);
            const double via_inner = p1 * conditionals[0] + p23 * f_inner;
            const double inner_expansion = (components[1].probability / p23) * conditionals[1] +
                                           (components[2].probability / p23) * conditionals[2];
            chain_residual = std::max(std::abs(f_inner - inner_expansion) * p23,
                                      std::abs(via_inner - rhs));
        }
    }

    const double residual = std::max(std::abs(lhs - rhs), chain_residual);
    return make_report("mixture(N=" + std::to_string(components.size()) + ")", lhs,
                       std::move(conditionals), 0.0, rhs, residual, tolerance);
}

ExperimentReport check_envariance(const BipartiteState& psi, const std::vector<double>& phases,
                                  const Apparatus& app, double tolerance) {
    const SchmidtDecomposition schmidt = schmidt_decompose(psi);
    if (static_cast<int>(phases.size()) != schmidt.rank()) {
        throw DimensionError("check_envariance: phase count differs from Schmidt rank");
    }

    const BipartiteState psi_tilde = schmidt_reconstruct(schmidt, phases, psi.dim_s(), psi.dim_e());
    const ComplexMatrix u_e = envariance_unitary(phases, schmidt.e_basis);
    const StateVector undone =
        apply(tensor_product(ComplexMatrix::identity(psi.dim_s()), u_e), psi_tilde.vector());
    const double undo_residual = phase_aligned_distance(psi.vector(), undone);

    const DensityMatrix rho = reduced_density(psi, Factor::first);
    const DensityMatrix rho_tilde = reduced_density(psi_tilde, Factor::first);
    const std::vector<double> dist = outcome_distribution(app, rho);
    const std::vector<double> dist_tilde = outcome_distribution(app, rho_tilde);
    double tv = 0.0;
    for (std::size_t k = 0; k < dist.size(); ++k) tv += std::abs(dist[k] - dist_tilde[k]);
    tv *= 0.5;

    const double e = expected_value(app, rho);
    const double e_tilde = expected_value(app, rho_tilde);
    return make_report("envariance", e, {}, 0.0, e_tilde, std::max(tv, undo_residual), tolerance);
}

ExperimentReport spin_case_study(const Apparatus& app, double tolerance) {
    if (app.dim_system() != 2) throw DimensionError("spin_case_study: qubit apparatus required");

    const AffineForm form = fit_affine(app, 0);
    const auto probability_at = [&](double x, double y, double z) {
        return outcome_distribution(app, bloch_to_density(BlochVector(x, y, z)))[0];
    };

    const double p_m1 = 0.5 * probability_at(0, 0, 1) + 0.5 * probability_at(0, 0, -1);
    const double p_m2 = 0.5 * probability_at(1, 0, 0) + 0.5 * probability_at(-1, 0, 0);
    const double p_singlet = outcome_distribution(
        app, reduced_density(named_pair(NamedState::singlet), Factor::first))[0];

    const double residual = std::max(
        {std::abs(p_m1 - form.b()), std::abs(p_m2 - form.b()), std::abs(p_singlet - form.b()),
         std::abs(probability_at(0, 0, 1) - (form.a()[2] + form.b())),
         std::abs(probability_at(0, 0, 0) - form.b())});
    return make_report("spin", p_m1, {p_m2, p_singlet}, 0.0, form.b(), residual, tolerance);
}

}  // namespace rholab
