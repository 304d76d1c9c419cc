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

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "pgen/rational.hpp"
#include "pgen/seqgen.hpp"

namespace pgen {

inline constexpr const char* kToolVersion = "1.0.0";

using Json = nlohmann::ordered_json;

/// Everything that can affect a run. Every field is echoed into reports.
struct ExperimentConfig {
    std::string command;

    // source
    std::string source = "iid";  // iid | champernowne | fibonacci | thue-morse-squares |
                                 // rudin-shapiro-squares | file
    std::optional<std::string> path;
    std::string format = "ascii";
    unsigned b = 2;
    std::uint64_t seed = 1;

    std::vector<unsigned> ks;
    std::vector<Rational> lambdas;
    std::optional<std::string> s;  // interval union literal
    std::uint64_t i = 0;
    std::optional<std::uint64_t> i_max;
    unsigned i_cap = 8;

    // Monte Carlo
    std::uint64_t replicates = 0;
    std::uint64_t master_seed = 1;
    unsigned threads = 1;

    // caps
    std::uint64_t mem_cap = std::uint64_t{1} << 28;
    std::uint64_t max_prefix = std::uint64_t{1} << 31;
    std::uint64_t max_words = std::uint64_t{1} << 16;

    // mltest
    std::optional<unsigned> m;

    // synth
    std::uint64_t len = 4096;
    unsigned k_lo = 6;
    unsigned k_hi = 8;
    unsigned beam = 1;
    std::optional<std::string> out;

    std::optional<std::string> out_dir;
    bool timing = false;
};

/// Applies one key=value setting. Keys match the long CLI flag names
/// (e.g. "lambda", "k-range", "master-seed").
void apply_setting(ExperimentConfig& config, const std::string& key, const std::string& value);

/// Reads flat "key = value" lines; '#' starts a comment.
std::vector<std::pair<std::string, std::string>> read_config_file(const std::filesystem::path& path);

/// Every recognised setting key.
const std::vector<std::string>& setting_keys();

Json config_echo(const ExperimentConfig& config);

std::unique_ptr<SymbolSource> make_source(const ExperimentConfig& config);

/// Parses "5", "3,4,7", "10..16" or "10-16".
std::vector<unsigned> parse_k_list(const std::string& text);
std::vector<Rational> parse_lambda_list(const std::string& text);

struct ExperimentReport {
    Json json;
    std::string csv;
    /// Extra artefacts (file name -> contents), e.g. histogram dumps.
    std::map<std::string, std::string> extra;
};

ExperimentReport cmd_analyze(const ExperimentConfig& config);
ExperimentReport cmd_sweep(const ExperimentConfig& config);
ExperimentReport cmd_mc_quenched(const ExperimentConfig& config);
ExperimentReport cmd_mc_annealed(const ExperimentConfig& config);
ExperimentReport cmd_bounds(const ExperimentConfig& config);
ExperimentReport cmd_mltest(const ExperimentConfig& config);
ExperimentReport cmd_synth(const ExperimentConfig& config);
ExperimentReport cmd_selftest(const ExperimentConfig& config);

/// Dispatches on config.command.
ExperimentReport run_command(const ExperimentConfig& config);

/// Writes <out_dir>/<command>.json and .csv (and extras).
std::vector<std::filesystem::path> write_report(const ExperimentReport& report,
                                                const ExperimentConfig& config);

/// Serialized JSON, the exact bytes written to disk.
std::string dump_json(const Json& j);

}  // namespace pgen
