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

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "rholab/experiments.hpp"
#include "rholab/reconstruction.hpp"

namespace rholab {

using json = nlohmann::json;

// Matrix schema: {"rows": n, "cols": m, "re": [[...]], "im": [[...]]},
// row-major IEEE-754 doubles. States extend it with dim_s/dim_e fields;
// vectors are stored as single-column matrices.

json to_json(const ComplexMatrix& m);
json to_json(const StateVector& v);
json to_json(const DensityMatrix& rho);
json to_json(const BipartiteState& psi);
json to_json(const Apparatus& app);
json to_json(const Povm& povm);
json to_json(const ExperimentReport& report);
json to_json(const std::vector<ExperimentReport>& reports);
json to_json(const BornCertificate& cert);

// Parsers raise ConfigError with the offending field path.
ComplexMatrix matrix_from_json(const json& j, const std::string& path);
StateVector state_vector_from_json(const json& j, const std::string& path);
DensityMatrix density_from_json(const json& j, const std::string& path);
BipartiteState bipartite_from_json(const json& j, const std::string& path);
Apparatus apparatus_from_json(const json& j, const std::string& path);
ExperimentReport report_from_json(const json& j, const std::string& path);
std::vector<ExperimentReport> reports_from_json(const json& j);

/// Experiment specifications for the CLI `run` subcommand. A spec names the
/// experiment kind, its apparatus, states and parameters; a manifest is
/// either one spec object or {"experiments": [spec, ...]}.
std::vector<ExperimentReport> run_experiment_specs(const json& manifest);

/// "outcome_index,count" lines.
std::string histogram_csv(const std::vector<std::uint64_t>& histogram);

/// "label,residual,tolerance,pass" lines.
std::string reports_csv(const std::vector<ExperimentReport>& reports);

/// Human-oriented table; unstable across versions (JSON is the stable
/// surface).
std::string reports_text(const std::vector<ExperimentReport>& reports);

}  // namespace rholab
