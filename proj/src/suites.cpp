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

#include "rholab/suites.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>

#include "rholab/error.hpp"
#include "rholab/reconstruction.hpp"
#include "rholab/rng.hpp"

namespace rholab {

namespace {

struct Instance {
    DensityMatrix rho0;
    DensityMatrix rho1;
    Apparatus app;
};

Instance random_instance(std::uint64_t seed, int max_dim_system, int max_dim_ancilla) {
    Rng rng(seed);
    const int ds = rng.uniform_int(2, std::max(2, max_dim_system));
    const int da = rng.uniform_int(1, std::max(1, max_dim_ancilla));
    const int n_out = rng.uniform_int(2, std::min(6, ds * da));
    return Instance{DensityMatrix(random_density(ds, rng.uniform_int(1, ds), derive_seed(seed, {2}))),
                    DensityMatrix(random_density(ds, rng.uniform_int(1, ds), derive_seed(seed, {3}))),
                    random_apparatus(ds, da, n_out, derive_seed(seed, {1}))};
}

BipartiteState random_bipartite(std::uint64_t seed, int dim_s, int dim_e) {
    Rng rng(seed);
    std::vector<cplx> amps(static_cast<std::size_t>(dim_s) * dim_e);
    for (cplx& z : amps) z = rng.gaussian_complex();
    return BipartiteState(dim_s, dim_e, StateVector::normalized(std::move(amps)));
}

StateVector random_qubit(std::uint64_t seed) {
    Rng rng(seed);
    return StateVector::normalized({rng.gaussian_complex(), rng.gaussian_complex()});
}

double suite_default_tol(Suite suite) {
    switch (suite) {
        case Suite::spin:
            return 1e-12;
        case Suite::dyadic:
        case Suite::appendix:
        case Suite::povm:
        case Suite::born:
            return 1e-9;
        default:
            return 1e-10;
    }
}

std::string trial_label(Suite suite, int trial) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "/%03d/", trial);
    return suite_name(suite) + buf;
}

std::vector<ExperimentReport> run_trial(Suite suite, const SuiteConfig& config, int trial) {
    const std::uint64_t seed =
        derive_seed(config.seed, {static_cast<std::uint64_t>(suite), static_cast<std::uint64_t>(trial)});
    const double tol = config.tol > 0.0 ? config.tol : suite_default_tol(suite);
    Rng rng(derive_seed(seed, {0}));
    std::vector<ExperimentReport> reports;

    switch (suite) {
        case Suite::envariance: {
            const int ds = rng.uniform_int(2, std::min(4, std::max(2, config.dim_system)));
            const int de = rng.uniform_int(2, 4);
            const BipartiteState psi = random_bipartite(derive_seed(seed, {1}), ds, de);
            const int rank = schmidt_decompose(psi).rank();
            std::vector<double> phases(static_cast<std::size_t>(rank));
            for (double& p : phases) p = rng.uniform(0.0, 2.0 * 3.14159265358979323846);
            const int da = rng.uniform_int(1, std::max(1, config.dim_ancilla));
            const Apparatus app =
                random_apparatus(ds, da, rng.uniform_int(2, std::min(6, ds * da)), derive_seed(seed, {2}));
            reports.push_back(check_envariance(psi, phases, app, tol));
            break;
        }
        case Suite::linearity: {
            const Instance inst = random_instance(seed, config.dim_system, config.dim_ancilla);
            reports.push_back(run_fig3b(inst.rho0, inst.rho1, inst.app, tol));
            // Direct interpolation identity at one non-dyadic weight.
            const double lambda = rng.uniform();
            const double f0 = expected_value(inst.app, inst.rho0);
            const double f1 = expected_value(inst.app, inst.rho1);
            const double direct =
                expected_value(inst.app, mix({{1.0 - lambda, inst.rho0}, {lambda, inst.rho1}}));
            const double reference = (1.0 - lambda) * f0 + lambda * f1;
            reports.push_back(make_report("interpolation", direct, {f0, f1}, lambda, reference,
                                          direct - reference, std::max(tol, 1e-9)));
            break;
        }
        case Suite::midpoint: {
            const Instance inst = random_instance(seed, config.dim_system, config.dim_ancilla);
            reports.push_back(check_midpoint(inst.rho0, inst.rho1, inst.app, tol));
            break;
        }
        case Suite::dyadic: {
            const Instance inst = random_instance(seed, config.dim_system, config.dim_ancilla);
            const int q = rng.uniform_int(1, 6);
            const int p = rng.uniform_int(0, 1 << q);
            reports.push_back(check_dyadic(inst.rho0, inst.rho1, inst.app, p, q, tol));
            break;
        }
        case Suite::appendix: {
            const Instance inst = random_instance(seed, config.dim_system, config.dim_ancilla);
            double xi = 0.0, lambda = 0.0, eta = 0.0;
            do {
                double u[3] = {rng.uniform(), rng.uniform(), rng.uniform()};
                std::sort(u, u + 3);
                xi = u[0];
                lambda = u[1];
                eta = u[2];
            } while (lambda - xi < 1e-3 || eta - lambda < 1e-3);
            reports.push_back(run_appendix(xi, lambda, eta, inst.rho0, inst.rho1, inst.app, tol));
            break;
        }
        case Suite::mixtures: {
            const int n = std::array<int, 3>{1, 3, 5}[static_cast<std::size_t>(trial % 3)];
            const int ds = rng.uniform_int(2, std::max(2, config.dim_system));
            std::vector<MixtureComponent> components;
            std::vector<double> weights(static_cast<std::size_t>(n));
            double total = 0.0;
            for (double& w : weights) {
                w = -std::log(1.0 - rng.uniform());
                total += w;
            }
            double acc = 0.0;
            for (int k = 0; k < n; ++k) {
                // Make the weights sum to exactly 1; the closing weight is
                // clamped against rounding.
                const double p = (k == n - 1) ? std::max(0.0, 1.0 - acc)
                                              : weights[static_cast<std::size_t>(k)] / total;
                acc += p;
                const int de = rng.uniform_int(1, 3);
                components.push_back(
                    MixtureComponent{p, random_bipartite(derive_seed(seed, {10, static_cast<std::uint64_t>(k)}),
                                                         ds, de)});
            }
            const int da = rng.uniform_int(1, std::max(1, config.dim_ancilla));
            const Apparatus app =
                random_apparatus(ds, da, rng.uniform_int(2, std::min(6, ds * da)), derive_seed(seed, {2}));
            reports.push_back(check_general_mixture(components, app, tol));

            // Same density matrix from two proper mixtures and one improper
            // mixture; all three expectations must agree.
            const int qda = rng.uniform_int(1, 3);
            const Apparatus qubit_app =
                random_apparatus(2, qda, rng.uniform_int(2, std::min(4, 2 * qda)), derive_seed(seed, {3}));
            const DensityMatrix m1 = mix({{0.5, DensityMatrix::pure(named_qubit(NamedState::up))},
                                          {0.5, DensityMatrix::pure(named_qubit(NamedState::down))}});
            const DensityMatrix m2 = mix({{0.5, DensityMatrix::pure(named_qubit(NamedState::left))},
                                          {0.5, DensityMatrix::pure(named_qubit(NamedState::right))}});
            const DensityMatrix ms = reduced_density(named_pair(NamedState::singlet), Factor::first);
            const double e1 = expected_value(qubit_app, m1);
            const double e2 = expected_value(qubit_app, m2);
            const double es = expected_value(qubit_app, ms);
            const double spread = std::max({std::abs(e1 - e2), std::abs(e1 - es), std::abs(e2 - es)});
            reports.push_back(make_report("equal-density", e1, {e2, es}, 0.0, es, spread, tol));
            break;
        }
        case Suite::povm: {
            const int ds = rng.uniform_int(2, std::min(3, std::max(2, config.dim_system)));
            const int da = rng.uniform_int(1, std::min(2, std::max(1, config.dim_ancilla)));
            const int n_out = rng.uniform_int(2, std::min(4, ds * da));
            const Apparatus app = random_apparatus(ds, da, n_out, derive_seed(seed, {1}));
            const Povm povm = extract_povm(app);

            ComplexMatrix sum(ds, ds);
            double negativity = 0.0;
            for (const ComplexMatrix& m : povm.elements) {
                sum += m;
                negativity = std::max(negativity, -eig_hermitian(m).eigenvalues.back());
            }
            const double identity_residual = sum.max_abs_diff(ComplexMatrix::identity(ds));

            double consistency = 0.0;
            for (int k = 0; k < 25; ++k) {
                Rng state_rng(derive_seed(seed, {20, static_cast<std::uint64_t>(k)}));
                const DensityMatrix rho(random_density(ds, state_rng.uniform_int(1, ds),
                                                       derive_seed(seed, {21, static_cast<std::uint64_t>(k)})));
                const std::vector<double> engine = outcome_distribution(app, rho);
                const std::vector<double> via_povm = povm_probabilities(povm, rho);
                for (std::size_t i = 0; i < engine.size(); ++i) {
                    consistency = std::max(consistency, std::abs(engine[i] - via_povm[i]));
                }
            }
            const double residual = std::max({identity_residual, negativity, consistency});
            reports.push_back(make_report("povm", consistency, {identity_residual, negativity}, 0.0,
                                          0.0, residual, tol));
            break;
        }
        case Suite::born: {
            const StateVector psi1 = random_qubit(derive_seed(seed, {1}));
            const Apparatus app = two_branch_apparatus(psi1);
            const BornCertificate cert = verify_born(app, psi1, derive_seed(seed, {2}));
            const double purity = std::abs(cert.p1().length() - 1.0);
            const double anti = std::sqrt(std::pow(cert.p1()[0] + cert.p2()[0], 2) +
                                          std::pow(cert.p1()[1] + cert.p2()[1], 2) +
                                          std::pow(cert.p1()[2] + cert.p2()[2], 2));
            const double residual = std::max({cert.max_abs_error(), purity, anti});
            reports.push_back(make_report("born", cert.max_abs_error(), {purity, anti}, 0.0, 0.0,
                                          residual, tol));
            break;
        }
        case Suite::spin: {
            const int da = rng.uniform_int(1, std::max(1, config.dim_ancilla));
            const Apparatus app =
                random_apparatus(2, da, rng.uniform_int(2, std::min(4, 2 * da)), derive_seed(seed, {1}));
            reports.push_back(spin_case_study(app, tol));
            break;
        }
        case Suite::all:
            throw ConfigError("run_trial: 'all' is expanded before trials");
    }

    for (ExperimentReport& r : reports) r.label = trial_label(suite, trial) + r.label;
    return reports;
}

std::vector<ExperimentReport> run_single_suite(Suite suite, const SuiteConfig& config) {
    std::vector<std::vector<ExperimentReport>> per_trial(static_cast<std::size_t>(config.trials));
#pragma omp parallel for schedule(dynamic)
    for (int trial = 0; trial < config.trials; ++trial) {
        std::vector<ExperimentReport> reports;
        try {
            reports = run_trial(suite, config, trial);
        } catch (const std::exception& e) {
            reports.push_back(make_report(trial_label(suite, trial) + "error: " + e.what(), 0.0, {},
                                          0.0, 0.0, 1e300,
                                          config.tol > 0.0 ? config.tol : suite_default_tol(suite)));
        }
        per_trial[static_cast<std::size_t>(trial)] = std::move(reports);
    }

    std::vector<ExperimentReport> merged;
    for (auto& reports : per_trial) {
        for (auto& r : reports) merged.push_back(std::move(r));
    }
    return merged;
}

}  // namespace

std::string suite_name(Suite suite) {
    switch (suite) {
        case Suite::envariance: return "envariance";
        case Suite::linearity: return "linearity";
        case Suite::midpoint: return "midpoint";
        case Suite::dyadic: return "dyadic";
        case Suite::appendix: return "appendix";
        case Suite::mixtures: return "mixtures";
        case Suite::povm: return "povm";
        case Suite::born: return "born";
        case Suite::spin: return "spin";
        case Suite::all: return "all";
    }
    return "unknown";
}

Suite suite_from_name(const std::string& name) {
    for (Suite s : {Suite::envariance, Suite::linearity, Suite::midpoint, Suite::dyadic,
                    Suite::appendix, Suite::mixtures, Suite::povm, Suite::born, Suite::spin,
                    Suite::all}) {
        if (suite_name(s) == name) return s;
    }
    throw ConfigError("unknown suite '" + name + "'");
}

ReportFormat format_from_name(const std::string& name) {
    if (name == "json") return ReportFormat::json;
    if (name == "csv") return ReportFormat::csv;
    if (name == "text") return ReportFormat::text;
    throw ConfigError("unknown format '" + name + "'");
}

void SuiteConfig::validate() const {
    if (trials < 1) throw ConfigError("trials must be >= 1");
    if (tol < 0.0) throw ConfigError("tol must be > 0");
    if (dim_system < 2) throw ConfigError("dim-system must be >= 2");
    if (dim_ancilla < 1) throw ConfigError("dim-ancilla must be >= 1");
}

std::vector<ExperimentReport> run_suite(const SuiteConfig& config) {
    config.validate();
    if (config.suite != Suite::all) return run_single_suite(config.suite, config);

    std::vector<ExperimentReport> merged;
    for (Suite s : {Suite::envariance, Suite::linearity, Suite::midpoint, Suite::dyadic,
                    Suite::appendix, Suite::mixtures, Suite::povm, Suite::born, Suite::spin}) {
        std::vector<ExperimentReport> part = run_single_suite(s, config);
        for (auto& r : part) merged.push_back(std::move(r));
    }
    return merged;
}

}  // namespace rholab
