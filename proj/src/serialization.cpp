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

#include "rholab/serialization.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "rholab/error.hpp"

namespace rholab {

namespace {

std::string join(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
}

const json& require(const json& j, const char* key, const std::string& path) {
    if (!j.is_object()) throw ConfigError(path + ": expected an object");
    const auto it = j.find(key);
    if (it == j.end()) throw ConfigError(join(path, key) + ": missing field");
    return *it;
}

double require_number(const json& j, const char* key, const std::string& path) {
    const json& v = require(j, key, path);
    if (!v.is_number()) throw ConfigError(join(path, key) + ": expected a number");
    return v.get<double>();
}

int require_int(const json& j, const char* key, const std::string& path) {
    const json& v = require(j, key, path);
    if (!v.is_number_integer()) throw ConfigError(join(path, key) + ": expected an integer");
    return v.get<int>();
}

std::uint64_t require_u64(const json& j, const char* key, const std::string& path) {
    const json& v = require(j, key, path);
    if (!v.is_number_integer()) throw ConfigError(join(path, key) + ": expected an integer");
    return v.get<std::uint64_t>();
}

std::string require_string(const json& j, const char* key, const std::string& path) {
    const json& v = require(j, key, path);
    if (!v.is_string()) throw ConfigError(join(path, key) + ": expected a string");
    return v.get<std::string>();
}

json real_part_rows(const std::vector<cplx>& data, int rows, int cols, bool imaginary) {
    json out = json::array();
    for (int i = 0; i < rows; ++i) {
        json row = json::array();
        for (int j = 0; j < cols; ++j) {
            const cplx& z = data[static_cast<std::size_t>(i) * cols + j];
            row.push_back(imaginary ? z.imag() : z.real());
        }
        out.push_back(std::move(row));
    }
    return out;
}

std::vector<cplx> entries_from_parts(const json& re, const json& im, int rows, int cols,
                                     const std::string& path) {
    const auto check_shape = [&](const json& part, const char* name) {
        if (!part.is_array() || static_cast<int>(part.size()) != rows) {
            throw ConfigError(join(path, name) + ": expected " + std::to_string(rows) + " rows");
        }
        for (int i = 0; i < rows; ++i) {
            const json& row = part[static_cast<std::size_t>(i)];
            if (!row.is_array() || static_cast<int>(row.size()) != cols) {
                throw ConfigError(join(path, name) + "[" + std::to_string(i) + "]: expected " +
                                  std::to_string(cols) + " numbers");
            }
            for (int j = 0; j < cols; ++j) {
                if (!row[static_cast<std::size_t>(j)].is_number()) {
                    throw ConfigError(join(path, name) + "[" + std::to_string(i) + "][" +
                                      std::to_string(j) + "]: expected a number");
                }
            }
        }
    };
    check_shape(re, "re");
    check_shape(im, "im");

    std::vector<cplx> entries(static_cast<std::size_t>(rows) * cols);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            entries[static_cast<std::size_t>(i) * cols + j] =
                cplx{re[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].get<double>(),
                     im[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].get<double>()};
        }
    }
    return entries;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// --- experiment specification parsing ------------------------------------

StateVector vector_from_parts(const json& j, const std::string& path) {
    const json& re = require(j, "re", path);
    if (!re.is_array() || re.empty()) throw ConfigError(join(path, "re") + ": expected an array");
    std::vector<cplx> amps(re.size());
    for (std::size_t i = 0; i < re.size(); ++i) {
        if (!re[i].is_number()) throw ConfigError(join(path, "re") + ": expected numbers");
        amps[i] = re[i].get<double>();
    }
    if (j.contains("im")) {
        const json& im = j["im"];
        if (!im.is_array() || im.size() != re.size()) {
            throw ConfigError(join(path, "im") + ": size differs from re");
        }
        for (std::size_t i = 0; i < im.size(); ++i) {
            if (!im[i].is_number()) throw ConfigError(join(path, "im") + ": expected numbers");
            amps[i] += cplx{0.0, im[i].get<double>()};
        }
    }
    try {
        return StateVector(std::move(amps));
    } catch (const Error& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

NamedState named_state_from_string(const std::string& name, const std::string& path) {
    if (name == "bell_phi") return NamedState::bell_phi;
    if (name == "singlet") return NamedState::singlet;
    if (name == "triplet0") return NamedState::triplet0;
    if (name == "up") return NamedState::up;
    if (name == "down") return NamedState::down;
    if (name == "left") return NamedState::left;
    if (name == "right") return NamedState::right;
    throw ConfigError(path + ": unknown named state '" + name + "'");
}

DensityMatrix density_spec(const json& j, const std::string& path);

DensityMatrix mixture_spec(const json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) throw ConfigError(path + ": expected a non-empty array");
    std::vector<std::pair<double, DensityMatrix>> components;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string cpath = path + "[" + std::to_string(i) + "]";
        const json& c = j[i];
        components.emplace_back(require_number(c, "probability", cpath),
                                density_spec(require(c, "state", cpath), join(cpath, "state")));
    }
    try {
        return mix(components);
    } catch (const Error& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

DensityMatrix density_spec(const json& j, const std::string& path) {
    if (!j.is_object()) throw ConfigError(path + ": expected an object");
    try {
        if (j.contains("named")) {
            const NamedState name = named_state_from_string(require_string(j, "named", path), path);
            if (is_pair_state(name)) return reduced_density(named_pair(name), Factor::first);
            return DensityMatrix::pure(named_qubit(name));
        }
        if (j.contains("bloch")) {
            const json& p = j["bloch"];
            if (!p.is_array() || p.size() != 3) {
                throw ConfigError(join(path, "bloch") + ": expected three numbers");
            }
            return bloch_to_density(
                BlochVector(p[0].get<double>(), p[1].get<double>(), p[2].get<double>()));
        }
        if (j.contains("mixture")) return mixture_spec(j["mixture"], join(path, "mixture"));
        if (j.contains("random")) {
            const json& r = j["random"];
            const std::string rpath = join(path, "random");
            return DensityMatrix(random_density(require_int(r, "dim", rpath),
                                                require_int(r, "rank", rpath),
                                                require_u64(r, "seed", rpath)));
        }
        if (j.contains("matrix")) {
            return density_from_json(j["matrix"], join(path, "matrix"));
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(path + ": " + e.what());
    }
    throw ConfigError(path + ": expected one of named/bloch/mixture/random/matrix");
}

BipartiteState bipartite_spec(const json& j, const std::string& path) {
    if (!j.is_object()) throw ConfigError(path + ": expected an object");
    try {
        if (j.contains("named")) {
            const NamedState name = named_state_from_string(require_string(j, "named", path), path);
            if (is_pair_state(name)) return named_pair(name);
            return BipartiteState(2, 1, named_qubit(name));
        }
        if (j.contains("purify")) return purify(density_spec(j["purify"], join(path, "purify")));
        if (j.contains("dim_s")) {
            return BipartiteState(require_int(j, "dim_s", path), require_int(j, "dim_e", path),
                                  vector_from_parts(require(j, "vector", path), join(path, "vector")));
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(path + ": " + e.what());
    }
    throw ConfigError(path + ": expected one of named/purify/dim_s");
}

Apparatus apparatus_spec(const json& j, const std::string& path) {
    if (!j.is_object()) throw ConfigError(path + ": expected an object");
    try {
        if (j.contains("named")) {
            const std::string name = require_string(j, "named", path);
            if (name == "sigma_z") return sigma_z_meter();
            if (name == "sigma_x") return sigma_x_meter();
            throw ConfigError(join(path, "named") + ": unknown apparatus '" + name + "'");
        }
        if (j.contains("random")) {
            const json& r = j["random"];
            const std::string rpath = join(path, "random");
            return random_apparatus(
                require_int(r, "dim_system", rpath), require_int(r, "dim_ancilla", rpath),
                require_int(r, "n_outcomes", rpath), require_u64(r, "seed", rpath));
        }
        if (j.contains("two_branch")) {
            return two_branch_apparatus(
                vector_from_parts(require(j["two_branch"], "psi1", join(path, "two_branch")),
                                  join(path, "two_branch.psi1")));
        }
        if (j.contains("joint_unitary")) return apparatus_from_json(j, path);
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(path + ": " + e.what());
    }
    throw ConfigError(path + ": expected one of named/random/two_branch/joint_unitary");
}

const char* const kExperimentKinds[] = {"fig2",     "fig3a",    "fig3b",  "midpoint", "dyadic",
                                        "appendix", "mixture",  "envariance", "spin"};

ExperimentReport run_one_spec(const json& j, const std::string& path) {
    const std::string kind = require_string(j, "experiment", path);
    if (std::find_if(std::begin(kExperimentKinds), std::end(kExperimentKinds),
                     [&](const char* k) { return kind == k; }) == std::end(kExperimentKinds)) {
        throw ConfigError(join(path, "experiment") + ": unknown kind '" + kind + "'");
    }
    const double tol = j.contains("tol") ? require_number(j, "tol", path) : 0.0;
    const auto tol_or = [&](double fallback) { return tol > 0.0 ? tol : fallback; };

    try {
        if (kind == "fig2") {
            const std::uint64_t seed = j.contains("seed") ? require_u64(j, "seed", path) : 0;
            const auto [outcome, conditional] = run_fig2(MeterMu(), seed);
            const double residual =
                phase_aligned_distance(conditional, StateVector::basis_state(2, outcome));
            return make_report("fig2", static_cast<double>(outcome), {}, 0.5,
                               static_cast<double>(outcome), residual, tol_or(1e-12));
        }
        if (kind == "spin") {
            return spin_case_study(apparatus_spec(require(j, "apparatus", path), join(path, "apparatus")),
                                   tol_or(1e-12));
        }
        if (kind == "mixture") {
            const json& list = require(j, "components", path);
            if (!list.is_array() || list.empty()) {
                throw ConfigError(join(path, "components") + ": expected a non-empty array");
            }
            std::vector<MixtureComponent> components;
            for (std::size_t i = 0; i < list.size(); ++i) {
                const std::string cpath = join(path, "components") + "[" + std::to_string(i) + "]";
                components.push_back(
                    MixtureComponent{require_number(list[i], "probability", cpath),
                                     bipartite_spec(require(list[i], "state", cpath), join(cpath, "state"))});
            }
            return check_general_mixture(
                components, apparatus_spec(require(j, "apparatus", path), join(path, "apparatus")),
                tol_or(1e-10));
        }
        if (kind == "envariance") {
            const json& phases_json = require(j, "phases", path);
            if (!phases_json.is_array()) throw ConfigError(join(path, "phases") + ": expected an array");
            std::vector<double> phases;
            for (const json& p : phases_json) {
                if (!p.is_number()) throw ConfigError(join(path, "phases") + ": expected numbers");
                phases.push_back(p.get<double>());
            }
            return check_envariance(
                bipartite_spec(require(j, "psi", path), join(path, "psi")), phases,
                apparatus_spec(require(j, "apparatus", path), join(path, "apparatus")), tol_or(1e-10));
        }

        const Apparatus app = apparatus_spec(require(j, "apparatus", path), join(path, "apparatus"));
        const DensityMatrix rho0 = density_spec(require(j, "rho0", path), join(path, "rho0"));
        const DensityMatrix rho1 = density_spec(require(j, "rho1", path), join(path, "rho1"));

        if (kind == "fig3a") return run_fig3a(rho0, rho1, app, tol_or(1e-10));
        if (kind == "fig3b") return run_fig3b(rho0, rho1, app, tol_or(1e-10));
        if (kind == "midpoint") return check_midpoint(rho0, rho1, app, tol_or(1e-10));
        if (kind == "dyadic") {
            return check_dyadic(rho0, rho1, app, require_int(j, "p", path), require_int(j, "q", path),
                                tol_or(1e-9));
        }
        if (kind == "appendix") {
            return run_appendix(require_number(j, "xi", path), require_number(j, "lambda", path),
                                require_number(j, "eta", path), rho0, rho1, app, tol_or(1e-9));
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(path + ": " + e.what());
    }
    throw ConfigError(join(path, "experiment") + ": unknown kind '" + kind + "'");
}

}  // namespace

json to_json(const ComplexMatrix& m) {
    return json{{"rows", m.rows()},
                {"cols", m.cols()},
                {"re", real_part_rows(m.data(), m.rows(), m.cols(), false)},
                {"im", real_part_rows(m.data(), m.rows(), m.cols(), true)}};
}

json to_json(const StateVector& v) {
    return json{{"rows", v.dim()},
                {"cols", 1},
                {"re", real_part_rows(v.amplitudes(), v.dim(), 1, false)},
                {"im", real_part_rows(v.amplitudes(), v.dim(), 1, true)}};
}

json to_json(const DensityMatrix& rho) { return to_json(rho.matrix()); }

json to_json(const BipartiteState& psi) {
    json j = to_json(psi.vector());
    j["dim_s"] = psi.dim_s();
    j["dim_e"] = psi.dim_e();
    return j;
}

json to_json(const Apparatus& app) {
    json projectors = json::array();
    for (const ComplexMatrix& p : app.pointer_projectors()) projectors.push_back(to_json(p));
    return json{{"dim_system", app.dim_system()},
                {"dim_ancilla", app.dim_ancilla()},
                {"ancilla_init", to_json(app.ancilla_init())},
                {"joint_unitary", to_json(app.joint_unitary())},
                {"pointer_projectors", std::move(projectors)},
                {"outcome_values", app.outcome_values()}};
}

json to_json(const Povm& povm) {
    json elements = json::array();
    for (const ComplexMatrix& m : povm.elements) elements.push_back(to_json(m));
    return json{{"elements", std::move(elements)}, {"outcome_values", povm.outcome_values}};
}

json to_json(const ExperimentReport& report) {
    return json{{"label", report.label},
                {"expectation", report.expectation},
                {"conditional_expectations", report.conditional_expectations},
                {"branch_probability", report.branch_probability},
                {"reference_value", report.reference_value},
                {"residual", report.residual},
                {"pass", report.pass},
                {"tolerance", report.tolerance}};
}

json to_json(const std::vector<ExperimentReport>& reports) {
    json out = json::array();
    for (const ExperimentReport& r : reports) out.push_back(to_json(r));
    return out;
}

json to_json(const BornCertificate& cert) {
    return json{{"p1", {cert.p1()[0], cert.p1()[1], cert.p1()[2]}},
                {"p2", {cert.p2()[0], cert.p2()[1], cert.p2()[2]}},
                {"psi1", to_json(cert.psi1())},
                {"max_abs_error", cert.max_abs_error()}};
}

ComplexMatrix matrix_from_json(const json& j, const std::string& path) {
    const int rows = require_int(j, "rows", path);
    const int cols = require_int(j, "cols", path);
    if (rows < 1 || cols < 1) throw ConfigError(path + ": rows and cols must be >= 1");
    try {
        return ComplexMatrix(rows, cols,
                             entries_from_parts(require(j, "re", path), require(j, "im", path),
                                                rows, cols, path));
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

StateVector state_vector_from_json(const json& j, const std::string& path) {
    const ComplexMatrix m = matrix_from_json(j, path);
    if (m.cols() != 1) throw ConfigError(path + ": expected a single-column matrix");
    try {
        return StateVector(m.data());
    } catch (const Error& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

DensityMatrix density_from_json(const json& j, const std::string& path) {
    try {
        return DensityMatrix(matrix_from_json(j, path));
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

BipartiteState bipartite_from_json(const json& j, const std::string& path) {
    const int dim_s = require_int(j, "dim_s", path);
    const int dim_e = require_int(j, "dim_e", path);
    try {
        return BipartiteState(dim_s, dim_e, state_vector_from_json(j, path));
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

Apparatus apparatus_from_json(const json& j, const std::string& path) {
    const json& projectors_json = require(j, "pointer_projectors", path);
    if (!projectors_json.is_array()) {
        throw ConfigError(join(path, "pointer_projectors") + ": expected an array");
    }
    std::vector<ComplexMatrix> projectors;
    for (std::size_t i = 0; i < projectors_json.size(); ++i) {
        projectors.push_back(matrix_from_json(
            projectors_json[i], join(path, "pointer_projectors") + "[" + std::to_string(i) + "]"));
    }
    const json& values_json = require(j, "outcome_values", path);
    if (!values_json.is_array()) throw ConfigError(join(path, "outcome_values") + ": expected an array");
    std::vector<double> values;
    for (const json& v : values_json) {
        if (!v.is_number()) throw ConfigError(join(path, "outcome_values") + ": expected numbers");
        values.push_back(v.get<double>());
    }
    try {
        return Apparatus(require_int(j, "dim_system", path), require_int(j, "dim_ancilla", path),
                         state_vector_from_json(require(j, "ancilla_init", path), join(path, "ancilla_init")),
                         matrix_from_json(require(j, "joint_unitary", path), join(path, "joint_unitary")),
                         std::move(projectors), std::move(values));
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

ExperimentReport report_from_json(const json& j, const std::string& path) {
    ExperimentReport r;
    r.label = require_string(j, "label", path);
    r.expectation = require_number(j, "expectation", path);
    const json& cond = require(j, "conditional_expectations", path);
    if (!cond.is_array()) {
        throw ConfigError(join(path, "conditional_expectations") + ": expected an array");
    }
    for (const json& c : cond) {
        if (!c.is_number()) {
            throw ConfigError(join(path, "conditional_expectations") + ": expected numbers");
        }
        r.conditional_expectations.push_back(c.get<double>());
    }
    r.branch_probability = require_number(j, "branch_probability", path);
    r.reference_value = require_number(j, "reference_value", path);
    r.residual = require_number(j, "residual", path);
    const json& pass = require(j, "pass", path);
    if (!pass.is_boolean()) throw ConfigError(join(path, "pass") + ": expected a boolean");
    r.pass = pass.get<bool>();
    r.tolerance = require_number(j, "tolerance", path);
    return r;
}

std::vector<ExperimentReport> reports_from_json(const json& j) {
    if (!j.is_array()) throw ConfigError("report file: expected a JSON array");
    std::vector<ExperimentReport> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        out.push_back(report_from_json(j[i], "[" + std::to_string(i) + "]"));
    }
    return out;
}

std::vector<ExperimentReport> run_experiment_specs(const json& manifest) {
    std::vector<ExperimentReport> reports;
    if (manifest.is_object() && manifest.contains("experiments")) {
        const json& list = manifest["experiments"];
        if (!list.is_array() || list.empty()) {
            throw ConfigError("experiments: expected a non-empty array");
        }
        for (std::size_t i = 0; i < list.size(); ++i) {
            reports.push_back(run_one_spec(list[i], "experiments[" + std::to_string(i) + "]"));
        }
        return reports;
    }
    reports.push_back(run_one_spec(manifest, ""));
    return reports;
}

std::string histogram_csv(const std::vector<std::uint64_t>& histogram) {
    std::ostringstream out;
    out << "outcome_index,count\n";
    for (std::size_t k = 0; k < histogram.size(); ++k) out << k << "," << histogram[k] << "\n";
    return out.str();
}

std::string reports_csv(const std::vector<ExperimentReport>& reports) {
    std::ostringstream out;
    out << "label,residual,tolerance,pass\n";
    for (const ExperimentReport& r : reports) {
        out << r.label << "," << format_double(r.residual) << "," << format_double(r.tolerance)
            << "," << (r.pass ? "true" : "false") << "\n";
    }
    return out.str();
}

std::string reports_text(const std::vector<ExperimentReport>& reports) {
    std::ostringstream out;
    int failed = 0;
    for (const ExperimentReport& r : reports) {
        char line[256];
        std::snprintf(line, sizeof(line), "%-6s %-28s residual %10.3e  tol %8.1e\n",
                      r.pass ? "PASS" : "FAIL", r.label.c_str(), r.residual, r.tolerance);
        out << line;
        if (!r.pass) ++failed;
    }
    out << reports.size() << " checks, " << failed << " failures\n";
    return out.str();
}

}  // namespace rholab
