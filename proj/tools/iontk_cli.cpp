// Copyright 2026 The iontk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Scenario runner: loads a JSON scenario description, runs the simulation,
// and writes CSV/JSON results. Exit codes: 0 success, 2 validation error,
// 3 numerical failure; errors are reported as JSON on stderr.

#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "iontk/scenario.hpp"

namespace {

void print_error(int code, const std::string& kind, const std::string& message) {
    nlohmann::ordered_json err;
    err["error"] = {{"code", code}, {"kind", kind}, {"message", message}};
    std::cerr << err.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"iontk scenario runner"};
    std::string config_path;
    std::string out_path;
    std::string format;
    int fock_cutoff = 0;
    bool check_only = false;
    app.add_option("--config", config_path, "scenario config JSON file")->required();
    app.add_option("--out", out_path, "output path (overrides config)");
    app.add_option("--format", format, "output format: csv or json (overrides config)");
    app.add_flag("--check", check_only, "validate the config and exit");
    app.add_option("--fock-cutoff", fock_cutoff, "Fock cutoff override");
    CLI11_PARSE(app, argc, argv);

    try {
        iontk::scenario::ScenarioConfig config = iontk::scenario::load_config(config_path);
        if (!out_path.empty()) config.output_path = out_path;
        if (!format.empty()) {
            if (format == "csv") {
                config.format = iontk::scenario::Format::Csv;
            } else if (format == "json") {
                config.format = iontk::scenario::Format::Json;
            } else {
                throw iontk::ValidationError("--format must be csv or json");
            }
        }
        if (fock_cutoff != 0) config.fock_cutoff = fock_cutoff;

        if (check_only) {
            const auto problems = iontk::scenario::validate(config);
            nlohmann::ordered_json report;
            report["valid"] = problems.empty();
            report["problems"] = problems;
            std::cout << report.dump(2) << "\n";
            return problems.empty() ? 0 : 2;
        }
        if (config.output_path.empty()) {
            throw iontk::ValidationError("no output path: set output.path or pass --out");
        }
        iontk::scenario::run(config);
        return 0;
    } catch (const iontk::ValidationError& e) {
        print_error(2, "validation", e.what());
        return 2;
    } catch (const iontk::NumericalError& e) {
        print_error(3, "numerical", e.what());
        return 3;
    } catch (const nlohmann::json::exception& e) {
        print_error(2, "validation", e.what());
        return 2;
    } catch (const std::exception& e) {
        print_error(3, "numerical", e.what());
        return 3;
    }
}
