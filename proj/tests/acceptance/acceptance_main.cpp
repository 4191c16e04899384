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
//
// End-to-end acceptance runner. Each criterion prints one PASS/FAIL line
// with its measured runtime; the process exits nonzero if any fail.
// Usage: acceptance_tests [path-to-rholab-cli]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "rholab/experiments.hpp"
#include "rholab/reconstruction.hpp"
#include "rholab/rng.hpp"
#include "rholab/serialization.hpp"

using namespace rholab;

namespace {

int g_failures = 0;
std::string g_cli_path;

void run_criterion(int index, const std::string& name, double time_limit_seconds,
                   const std::function<bool(std::string&)>& body) {
    std::string detail;
    bool ok = false;
    const auto start = std::chrono::steady_clock::now();
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
        ok = false;
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (elapsed > time_limit_seconds) {
        ok = false;
        detail += (detail.empty() ? "" : "; ") + std::string("over time limit");
    }
    std::printf("[%s] %2d %-34s %8.3f s%s%s\n", ok ? "PASS" : "FAIL", index, name.c_str(), elapsed,
                detail.empty() ? "" : "  ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

DensityMatrix random_density_matrix(int dim, std::uint64_t seed) {
    Rng rng(seed);
    return DensityMatrix(random_density(dim, rng.uniform_int(1, dim), derive_seed(seed, {1})));
}

struct Instance {
    DensityMatrix rho0;
    DensityMatrix rho1;
    Apparatus app;
};

Instance random_instance(std::uint64_t seed, int max_dim = 4, int max_ancilla = 3) {
    Rng rng(seed);
    const int ds = rng.uniform_int(2, max_dim);
    const int da = rng.uniform_int(1, max_ancilla);
    return Instance{random_density_matrix(ds, derive_seed(seed, {1})),
                    random_density_matrix(ds, derive_seed(seed, {2})),
                    random_apparatus(ds, da, rng.uniform_int(2, std::min(6, ds * da)),
                                     derive_seed(seed, {3}))};
}

BipartiteState random_bipartite(int dim_s, int dim_e, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<cplx> amps(static_cast<std::size_t>(dim_s) * dim_e);
    for (cplx& z : amps) z = rng.gaussian_complex();
    return BipartiteState(dim_s, dim_e, StateVector::normalized(std::move(amps)));
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.2e", v);
    return buf;
}

// --- criteria -------------------------------------------------------------

bool criterion_partial_trace(std::string& detail) {
    const ComplexMatrix singlet_proj = outer_product(named_pair(NamedState::singlet).vector(),
                                                     named_pair(NamedState::singlet).vector());
    const ComplexMatrix triplet_proj = outer_product(named_pair(NamedState::triplet0).vector(),
                                                     named_pair(NamedState::triplet0).vector());
    const ComplexMatrix half = ComplexMatrix::diagonal({0.5, 0.5});

    // Warm up, then time the traced operation itself.
    (void)partial_trace(singlet_proj, 2, 2, Factor::first);
    const auto start = std::chrono::steady_clock::now();
    const ComplexMatrix reduced_singlet = partial_trace(singlet_proj, 2, 2, Factor::first);
    const double micros =
        std::chrono::duration<double, std::micro>(std::chrono::steady_clock::now() - start).count();
    const ComplexMatrix reduced_triplet = partial_trace(triplet_proj, 2, 2, Factor::first);

    const double residual = std::max(reduced_singlet.max_abs_diff(half),
                                     reduced_triplet.max_abs_diff(half));
    detail = "residual " + fmt(residual) + ", " + fmt(micros / 1e6) + " s";
    return residual < 1e-12 && micros < 1000.0;
}

bool criterion_envariance(std::string& detail) {
    double max_tv = 0.0;
    for (std::uint64_t trial = 0; trial < 100; ++trial) {
        const std::uint64_t seed = derive_seed(2026, {2, trial});
        Rng rng(seed);
        const int ds = rng.uniform_int(2, 4);
        const int de = rng.uniform_int(2, 4);
        const BipartiteState psi = random_bipartite(ds, de, derive_seed(seed, {1}));
        const int rank = schmidt_decompose(psi).rank();
        std::vector<double> phases(static_cast<std::size_t>(rank));
        for (double& p : phases) p = rng.uniform(0.0, 2.0 * std::numbers::pi);
        const int da = rng.uniform_int(1, 3);
        const Apparatus app =
            random_apparatus(ds, da, rng.uniform_int(2, std::min(6, ds * da)), derive_seed(seed, {2}));

        const BipartiteState psi_tilde =
            schmidt_reconstruct(schmidt_decompose(psi), phases, ds, de);
        const auto before = outcome_distribution(app, reduced_density(psi, Factor::first));
        const auto after = outcome_distribution(app, reduced_density(psi_tilde, Factor::first));
        double tv = 0.0;
        for (std::size_t k = 0; k < before.size(); ++k) tv += std::abs(before[k] - after[k]);
        max_tv = std::max(max_tv, 0.5 * tv);
    }
    detail = "max TV " + fmt(max_tv);
    return max_tv < 1e-10;
}

bool criterion_midpoint(std::string& detail) {
    double max_residual = 0.0;
    for (std::uint64_t trial = 0; trial < 100; ++trial) {
        const Instance inst = random_instance(derive_seed(2026, {3, trial}));
        max_residual =
            std::max(max_residual, std::abs(check_midpoint(inst.rho0, inst.rho1, inst.app).residual));
    }
    detail = "max residual " + fmt(max_residual);
    return max_residual < 1e-10;
}

bool criterion_fig3(std::string& detail) {
    double max_a_error = 0.0;
    double max_cond_error = 0.0;
    double max_agreement = 0.0;
    for (std::uint64_t trial = 0; trial < 20; ++trial) {
        const Instance inst = random_instance(derive_seed(2026, {4, trial}));
        const ExperimentReport a = run_fig3a(inst.rho0, inst.rho1, inst.app);
        const ExperimentReport b = run_fig3b(inst.rho0, inst.rho1, inst.app);
        max_a_error = std::max(max_a_error, std::abs(b.branch_probability - 0.5));
        max_cond_error = std::max(
            {max_cond_error,
             std::abs(b.conditional_expectations[0] - expected_value(inst.app, inst.rho0)),
             std::abs(b.conditional_expectations[1] - expected_value(inst.app, inst.rho1))});
        max_agreement = std::max(max_agreement, std::abs(a.expectation - b.expectation));
    }
    detail = "a err " + fmt(max_a_error) + ", cond " + fmt(max_cond_error) + ", agree " +
             fmt(max_agreement);
    return max_a_error < 1e-12 && max_cond_error < 1e-10 && max_agreement < 1e-10;
}

bool criterion_dyadic(std::string& detail) {
    const Instance inst = random_instance(derive_seed(2026, {5, 0}));
    double max_residual = 0.0;
    for (int p = 0; p <= 64; ++p) {
        max_residual = std::max(
            max_residual, std::abs(check_dyadic(inst.rho0, inst.rho1, inst.app, p, 6).residual));
    }

    // The worked lambda = 1/4 expansion, engine value at every step.
    const double f0 = expected_value(inst.app, inst.rho0);
    const double f1 = expected_value(inst.app, inst.rho1);
    const double f_mid = expected_value(inst.app, mix({{0.5, inst.rho0}, {0.5, inst.rho1}}));
    const double f_quarter = expected_value(inst.app, mix({{0.75, inst.rho0}, {0.25, inst.rho1}}));
    const double worked = std::max(std::abs(f_quarter - 0.5 * (f0 + f_mid)),
                                   std::abs(f_quarter - (0.75 * f0 + 0.25 * f1)));

    max_residual = std::max(max_residual, worked);
    detail = "max residual " + fmt(max_residual);
    return max_residual < 1e-9;
}

bool criterion_appendix(std::string& detail) {
    const double brackets[3][3] = {{0.0, 1.0 / std::numbers::sqrt2, 1.0},
                                   {0.25, 0.5, 0.75},
                                   {0.1, 0.37, 0.9}};
    double max_a_error = 0.0;
    double max_eq_residual = 0.0;
    for (int i = 0; i < 3; ++i) {
        const Instance inst = random_instance(derive_seed(2026, {6, static_cast<std::uint64_t>(i)}));
        const double xi = brackets[i][0], lambda = brackets[i][1], eta = brackets[i][2];
        const ExperimentReport r = run_appendix(xi, lambda, eta, inst.rho0, inst.rho1, inst.app);

        max_a_error = std::max(max_a_error,
                               std::abs(r.branch_probability - (lambda - xi) / (eta - xi)));
        // Two-point recombination from the report fields.
        const double two_point = (1.0 - r.branch_probability) * r.conditional_expectations[0] +
                                 r.branch_probability * r.conditional_expectations[1];
        max_eq_residual = std::max(max_eq_residual, std::abs(r.expectation - two_point));
        // Bracket bound.
        const double lo = std::min(r.conditional_expectations[0], r.conditional_expectations[1]);
        const double hi = std::max(r.conditional_expectations[0], r.conditional_expectations[1]);
        if (r.expectation < lo - 1e-12 || r.expectation > hi + 1e-12) return false;
        // Final interpolation identity.
        max_eq_residual = std::max(max_eq_residual, std::abs(r.expectation - r.reference_value));
    }
    detail = "a err " + fmt(max_a_error) + ", eq residual " + fmt(max_eq_residual);
    return max_a_error < 1e-12 && max_eq_residual < 1e-9;
}

bool criterion_mixtures(std::string& detail) {
    double max_residual = 0.0;
    const int sizes[3] = {1, 3, 5};
    for (int i = 0; i < 3; ++i) {
        const std::uint64_t seed = derive_seed(2026, {7, static_cast<std::uint64_t>(i)});
        Rng rng(seed);
        const int ds = rng.uniform_int(2, 4);
        std::vector<MixtureComponent> components;
        std::vector<double> w(static_cast<std::size_t>(sizes[i]));
        double total = 0.0;
        for (double& x : w) {
            x = -std::log(1.0 - rng.uniform());
            total += x;
        }
        double acc = 0.0;
        for (int k = 0; k < sizes[i]; ++k) {
            const double p = (k == sizes[i] - 1) ? std::max(0.0, 1.0 - acc)
                                                 : w[static_cast<std::size_t>(k)] / total;
            acc += p;
            components.push_back(MixtureComponent{
                p, random_bipartite(ds, rng.uniform_int(1, 3),
                                    derive_seed(seed, {1, static_cast<std::uint64_t>(k)}))});
        }
        const int da = rng.uniform_int(1, 3);
        const Apparatus app =
            random_apparatus(ds, da, rng.uniform_int(2, std::min(6, ds * da)), derive_seed(seed, {2}));
        max_residual =
            std::max(max_residual, std::abs(check_general_mixture(components, app).residual));
    }

    // Equal-density triple across 20 random apparatuses.
    const DensityMatrix m1 = mix({{0.5, DensityMatrix::pure(named_qubit(NamedState::up))},
                                  {0.5, DensityMatrix::pure(named_qubit(NamedState::down))}});
    const DensityMatrix m2 = mix({{0.5, DensityMatrix::pure(named_qubit(NamedState::left))},
                                  {0.5, DensityMatrix::pure(named_qubit(NamedState::right))}});
    const DensityMatrix ms = reduced_density(named_pair(NamedState::singlet), Factor::first);
    double max_spread = 0.0;
    for (std::uint64_t trial = 0; trial < 20; ++trial) {
        const std::uint64_t seed = derive_seed(2026, {8, trial});
        Rng rng(seed);
        const int da = rng.uniform_int(1, 3);
        const Apparatus app =
            random_apparatus(2, da, rng.uniform_int(2, std::min(4, 2 * da)), derive_seed(seed, {1}));
        const double e1 = expected_value(app, m1);
        const double e2 = expected_value(app, m2);
        const double es = expected_value(app, ms);
        max_spread = std::max({max_spread, std::abs(e1 - e2), std::abs(e1 - es), std::abs(e2 - es)});
    }
    max_residual = std::max(max_residual, max_spread);
    detail = "max residual " + fmt(max_residual);
    return max_residual < 1e-10;
}

bool criterion_povm(std::string& detail) {
    double max_residual = 0.0;
    for (std::uint64_t trial = 0; trial < 50; ++trial) {
        const std::uint64_t seed = derive_seed(2026, {9, trial});
        Rng rng(seed);
        const int ds = rng.uniform_int(2, 3);
        const int da = rng.uniform_int(1, 2);
        const int n_out = rng.uniform_int(2, std::min(4, ds * da));
        const Apparatus app = random_apparatus(ds, da, n_out, derive_seed(seed, {1}));
        const Povm povm = extract_povm(app);

        ComplexMatrix sum(ds, ds);
        for (const ComplexMatrix& m : povm.elements) {
            sum += m;
            max_residual = std::max(max_residual, -eig_hermitian(m).eigenvalues.back());
        }
        max_residual = std::max(max_residual, sum.max_abs_diff(ComplexMatrix::identity(ds)));

        for (int t = 0; t < 50; ++t) {
            const DensityMatrix rho =
                random_density_matrix(ds, derive_seed(seed, {2, static_cast<std::uint64_t>(t)}));
            const auto engine = outcome_distribution(app, rho);
            const auto reproduced = povm_probabilities(povm, rho);
            for (std::size_t k = 0; k < engine.size(); ++k) {
                max_residual = std::max(max_residual, std::abs(engine[k] - reproduced[k]));
            }
        }
    }
    detail = "max residual " + fmt(max_residual);
    return max_residual < 1e-9;
}

bool criterion_born(std::string& detail) {
    double max_purity = 0.0;
    double max_anti = 0.0;
    double max_error = 0.0;
    for (std::uint64_t trial = 0; trial < 20; ++trial) {
        const std::uint64_t seed = derive_seed(2026, {10, trial});
        Rng rng(seed);
        const StateVector psi1 =
            StateVector::normalized({rng.gaussian_complex(), rng.gaussian_complex()});
        const BornCertificate cert =
            verify_born(two_branch_apparatus(psi1), psi1, derive_seed(seed, {1}));
        max_purity = std::max(max_purity, std::abs(cert.p1().length() - 1.0));
        max_anti = std::max({max_anti, std::abs(cert.p1()[0] + cert.p2()[0]),
                             std::abs(cert.p1()[1] + cert.p2()[1]),
                             std::abs(cert.p1()[2] + cert.p2()[2])});
        max_error = std::max(max_error, cert.max_abs_error());
    }
    detail = "purity " + fmt(max_purity) + ", antipodal " + fmt(max_anti) + ", error " +
             fmt(max_error);
    return max_purity < 1e-6 && max_anti < 1e-6 && max_error < 1e-9;
}

bool criterion_sampling(std::string& detail) {
    const std::uint64_t n = 100000;
    const auto hist = sample_outcomes(sigma_z_meter(), DensityMatrix::maximally_mixed(2), n, 7);
    const double sigma = std::sqrt(n / 4.0);
    if (std::abs(static_cast<double>(hist[0]) - n / 2.0) >= 5.0 * sigma) return false;
    if (std::abs(static_cast<double>(hist[1]) - n / 2.0) >= 5.0 * sigma) return false;

    double worst_pull = 0.0;
    for (std::uint64_t trial = 0; trial < 5; ++trial) {
        const std::uint64_t seed = derive_seed(2026, {11, trial});
        Rng rng(seed);
        const int ds = rng.uniform_int(2, 3);
        const int da = rng.uniform_int(1, 2);
        const Apparatus app =
            random_apparatus(ds, da, rng.uniform_int(2, ds * da), derive_seed(seed, {1}));
        const DensityMatrix rho = random_density_matrix(ds, derive_seed(seed, {2}));

        const double exact = expected_value(app, rho);
        const auto probs = outcome_distribution(app, rho);
        double second = 0.0;
        for (std::size_t k = 0; k < probs.size(); ++k) {
            second += probs[k] * app.outcome_values()[k] * app.outcome_values()[k];
        }
        const double sigma_mean = std::sqrt(std::max(second - exact * exact, 1e-30) / n);
        const double empirical = sample_mean(app, rho, n, derive_seed(seed, {3}));
        worst_pull = std::max(worst_pull, std::abs(empirical - exact) / sigma_mean);
    }
    detail = "worst pull " + fmt(worst_pull) + " sigma";
    return worst_pull < 5.0;
}

int run_command(const std::string& command) {
    const int status = std::system(command.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool criterion_determinism(std::string& detail) {
    if (g_cli_path.empty()) {
        detail = "no CLI path given";
        return false;
    }
    const std::string base =
        " verify --suite all --seed 7 --trials 2 --output acceptance_det_";
    if (run_command(g_cli_path + base + "1.json") != 0) return false;
    if (run_command(g_cli_path + base + "2.json") != 0) return false;
    if (run_command("OMP_NUM_THREADS=1 " + g_cli_path + base + "3.json") != 0) return false;

    const std::string a = slurp("acceptance_det_1.json");
    const std::string b = slurp("acceptance_det_2.json");
    const std::string c = slurp("acceptance_det_3.json");
    detail = "bytes " + std::to_string(a.size());
    return !a.empty() && a == b && a == c;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc > 1) g_cli_path = argv[1];

    std::printf("acceptance criteria\n");
    run_criterion(1, "singlet/triplet partial trace", 1.0, criterion_partial_trace);
    run_criterion(2, "envariance x100", 5.0, criterion_envariance);
    run_criterion(3, "midpoint identity x100", 5.0, criterion_midpoint);
    run_criterion(4, "paired experiments x20", 10.0, criterion_fig3);
    run_criterion(5, "dyadic weights at q=6", 10.0, criterion_dyadic);
    run_criterion(6, "bracketed weights", 5.0, criterion_appendix);
    run_criterion(7, "general mixtures", 10.0, criterion_mixtures);
    run_criterion(8, "povm extraction x50", 30.0, criterion_povm);
    run_criterion(9, "overlap-rule certificates x20", 10.0, criterion_born);
    run_criterion(10, "sampling realism", 30.0, criterion_sampling);
    run_criterion(11, "byte-identical verify runs", 120.0, criterion_determinism);

    if (g_failures == 0) {
        std::printf("all criteria passed\n");
        return 0;
    }
    std::printf("%d criteria failed\n", g_failures);
    return 1;
}
