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

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "rholab/error.hpp"
#include "rholab/serialization.hpp"
#include "rholab/suites.hpp"

namespace {

using rholab::ConfigError;
using rholab::ExperimentReport;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

std::string render(const std::vector<ExperimentReport>& reports, rholab::ReportFormat format) {
    switch (format) {
        case rholab::ReportFormat::json:
            return rholab::to_json(reports).dump(2) + "\n";
        case rholab::ReportFormat::csv:
            return rholab::reports_csv(reports);
        case rholab::ReportFormat::text:
            return rholab::reports_text(reports);
    }
    return {};
}

void write_output(const std::string& content, const std::string& path) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open output file '" + path + "'");
    out << content;
    if (!out) throw ConfigError("failed writing output file '" + path + "'");
}

bool all_pass(const std::vector<ExperimentReport>& reports) {
    return std::all_of(reports.begin(), reports.end(),
                       [](const ExperimentReport& r) { return r.pass; });
}

rholab::json load_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open input file '" + path + "'");
    try {
        return rholab::json::parse(in);
    } catch (const rholab::json::parse_error& e) {
        throw ConfigError("'" + path + "' is not valid JSON: " + e.what());
    }
}

int cmd_verify(const rholab::SuiteConfig& config) {
    const std::vector<ExperimentReport> reports = rholab::run_suite(config);
    write_output(render(reports, config.format), config.output);
    return all_pass(reports) ? kExitPass : kExitFail;
}

int cmd_run(const std::string& path, rholab::ReportFormat format) {
    const std::vector<ExperimentReport> reports = rholab::run_experiment_specs(load_json_file(path));
    std::cout << render(reports, format);
    return all_pass(reports) ? kExitPass : kExitFail;
}

int cmd_report(const std::string& path, rholab::ReportFormat format) {
    const std::vector<ExperimentReport> reports = rholab::reports_from_json(load_json_file(path));

    struct SuiteTally {
        int pass = 0;
        int fail = 0;
        double max_residual = 0.0;
    };
    // Group by the label prefix up to the first '/'.
    std::map<std::string, SuiteTally> tallies;
    int failed = 0;
    for (const ExperimentReport& r : reports) {
        const std::string suite = r.label.substr(0, r.label.find('/'));
        SuiteTally& t = tallies[suite];
        (r.pass ? t.pass : t.fail) += 1;
        t.max_residual = std::max(t.max_residual, std::abs(r.residual));
        if (!r.pass) ++failed;
    }

    if (format == rholab::ReportFormat::json) {
        rholab::json out = rholab::json::array();
        for (const auto& [suite, t] : tallies) {
            out.push_back({{"suite", suite},
                           {"pass", t.pass},
                           {"fail", t.fail},
                           {"max_residual", t.max_residual}});
        }
        std::cout << out.dump(2) << "\n";
    } else {
        std::ostringstream out;
        out << "suite                         pass   fail   max residual\n";
        for (const auto& [suite, t] : tallies) {
            char line[160];
            std::snprintf(line, sizeof(line), "%-28s %6d %6d   %12.3e\n", suite.c_str(), t.pass,
                          t.fail, t.max_residual);
            out << line;
        }
        out << failed << " failures\n";
        if (failed > 0) {
            for (const ExperimentReport& r : reports) {
                if (!r.pass) out << "FAIL " << r.label << "\n";
            }
        }
        std::cout << out.str();
    }
    return failed == 0 ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rholab: desk-scale quantum measurement simulation and verification"};
    app.require_subcommand(1);

    rholab::SuiteConfig config;
    std::string suite_name = "all";
    std::string format_name = "json";

    CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("--suite", suite_name, "suite name or 'all'")->capture_default_str();
    verify->add_option("--seed", config.seed, "master seed")->capture_default_str();
    verify->add_option("--trials", config.trials, "trials per suite")->capture_default_str();
    verify->add_option("--tol", config.tol, "override the per-suite tolerance");
    verify->add_option("--dim-system", config.dim_system, "largest system dimension")
        ->capture_default_str();
    verify->add_option("--dim-ancilla", config.dim_ancilla, "largest ancilla dimension")
        ->capture_default_str();
    verify->add_option("--output", config.output, "report file (default: stdout)");
    verify->add_option("--format", format_name, "json|csv|text")->capture_default_str();

    std::string run_file;
    std::string run_format = "json";
    CLI::App* run = app.add_subcommand("run", "run experiments from a JSON specification");
    run->add_option("file", run_file, "experiment spec or manifest")->required();
    run->add_option("--format", run_format, "json|csv|text")->capture_default_str();

    std::string report_file;
    std::string report_format = "text";
    CLI::App* report = app.add_subcommand("report", "summarize a report file");
    report->add_option("input", report_file, "report JSON produced by verify/run")->required();
    report->add_option("--format", report_format, "text|json")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);  // prints the diagnostic to stderr
        return kExitUsage;
    }

    try {
        if (verify->parsed()) {
            config.suite = rholab::suite_from_name(suite_name);
            config.format = rholab::format_from_name(format_name);
            return cmd_verify(config);
        }
        if (run->parsed()) return cmd_run(run_file, rholab::format_from_name(run_format));
        if (report->parsed()) return cmd_report(report_file, rholab::format_from_name(report_format));
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
