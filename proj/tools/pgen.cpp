/*
   Copyright 2026 The pgen Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "pgen/error.hpp"
#include "pgen/experiment.hpp"

namespace {

const std::map<std::string, std::string> kCommands = {
    {"analyze", "Z statistics, sup deviations and TV distances for a source"},
    {"sweep", "counts-of-counts snapshots along a lambda sweep"},
    {"mc-annealed", "Monte Carlo average of occurrence laws over i.i.d. replicates"},
    {"mc-quenched", "Monte Carlo concentration of one occurrence probability"},
    {"bounds", "closed-form bound table"},
    {"mltest", "O_k / T_m membership of a source prefix"},
    {"synth", "greedy/beam construction of a low-deviation prefix"},
    {"selftest", "quick internal consistency checks"},
};

// Settings handled as global flags rather than per-subcommand.
bool is_global(const std::string& key) {
    return key == "out-dir" || key == "threads" || key == "mem-cap";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pgen: empirical Poisson genericity of symbolic sequences"};
    app.require_subcommand(1);
    app.set_version_flag("--version", pgen::kToolVersion);

    std::string config_path;
    std::map<std::string, std::string> globals;
    app.add_option("--config", config_path, "key=value config file; flags override it");
    for (const auto& key : pgen::setting_keys()) {
        if (is_global(key)) app.add_option("--" + key, globals[key]);
    }

    std::map<std::string, std::map<std::string, std::string>> values;
    std::map<std::string, CLI::App*> subs;
    for (const auto& [name, help] : kCommands) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->fallthrough();
        for (const auto& key : pgen::setting_keys()) {
            if (!is_global(key)) sub->add_option("--" + key, values[name][key]);
        }
        subs[name] = sub;
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        pgen::ExperimentConfig config;
        for (const auto& [name, sub] : subs) {
            if (sub->parsed()) config.command = name;
        }
        if (!config_path.empty()) {
            for (const auto& [k, v] : pgen::read_config_file(config_path)) {
                pgen::apply_setting(config, k, v);
            }
        }
        for (const auto& [key, value] : globals) {
            if (app.count("--" + key)) pgen::apply_setting(config, key, value);
        }
        CLI::App* sub = subs.at(config.command);
        for (const auto& [key, value] : values[config.command]) {
            if (sub->count("--" + key)) pgen::apply_setting(config, key, value);
        }

        pgen::ExperimentReport report = pgen::run_command(config);
        auto written = pgen::write_report(report, config);
        if (written.empty()) {
            std::cout << pgen::dump_json(report.json);
        } else {
            for (const auto& p : written) std::cerr << "wrote " << p.string() << '\n';
        }
        if (config.command == "selftest" && !report.json["pass"].get<bool>()) return 4;
        return 0;
    } catch (const pgen::Error& e) {
        std::cerr << "pgen: " << e.what() << '\n';
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "pgen: " << e.what() << '\n';
        return 4;
    }
}
