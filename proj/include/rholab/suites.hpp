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

#include "rholab/experiments.hpp"

namespace rholab {

enum class Suite {
    envariance,
    linearity,
    midpoint,
    dyadic,
    appendix,
    mixtures,
    povm,
    born,
    spin,
    all
};

enum class ReportFormat { json, csv, text };

std::string suite_name(Suite suite);
Suite suite_from_name(const std::string& name);  // ConfigError on unknown names
ReportFormat format_from_name(const std::string& name);

struct SuiteConfig {
    Suite suite = Suite::all;
    std::uint64_t seed = 0;
    int trials = 20;
    double tol = 0.0;  // 0 selects each suite's default tolerance
    int dim_system = 4;
    int dim_ancilla = 3;
    std::string output;  // empty writes to stdout
    ReportFormat format = ReportFormat::json;

    void validate() const;  // trials >= 1, tol >= 0, dims >= 1
};

/// Runs the configured suite. Trials are independent, seeded from
/// (seed, suite, trial index), evaluated possibly in parallel, and merged
/// in trial order, so the report list is byte-stable across runs and
/// worker counts.
std::vector<ExperimentReport> run_suite(const SuiteConfig& config);

}  // namespace rholab
