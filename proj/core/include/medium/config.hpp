/*
   Copyright 2026 The Medium Simulator Authors

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
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "medium/adversary.hpp"
#include "medium/params.hpp"
#include "medium/weight.hpp"

namespace medium {

enum class ExperimentKind { Single, Throughput, Balance, Params, Check };

[[nodiscard]] std::string to_string(ExperimentKind kind);
[[nodiscard]] ExperimentKind parse_experiment_kind(std::string_view text);

//! GHOST, the three prime-root coefficients 10001521^(1/10), ^(1/100), ^(1/100000), and Bitcoin.
[[nodiscard]] std::vector<WeightCoefficient> default_protocols();

//! "GHOST", "Bitcoin" or "Medium(<c label>)".
[[nodiscard]] std::string protocol_label(const WeightCoefficient& c);

struct ExperimentConfig {
    ExperimentKind kind{ExperimentKind::Single};
    std::vector<WeightCoefficient> protocols = default_protocols();
    ProtocolParams params;
    AdversaryConfig adversary;
    std::vector<std::uint32_t> t_values{0, 5, 10, 15, 20, 25, 30, 35, 40, 45};
    std::vector<double> pqn_values{0.5, 1, 2, 4};
    std::uint64_t rounds{1000};
    std::uint64_t repetitions{100};
    std::uint64_t seed{1};
    std::uint64_t tx_interval{0};
    std::string output;

    //! Throws ConfigError on empty sweeps, zero repetitions or invalid parameters.
    void validate() const;
};

//! Defaults for an experiment kind: the secret-chain adversary with an 8-round withholding
//! period for throughput sweeps, the balance attack with tau = 100 and t = 20 for balance sweeps.
[[nodiscard]] ExperimentConfig default_config(ExperimentKind kind);

//! Applies one `key = value` setting. Lists are comma-separated. Throws ConfigError.
void apply_setting(ExperimentConfig& config, std::string_view key, std::string_view value);

//! Reads `key = value` lines; blank lines and text after '#' are ignored. An `experiment`
//! line, if present, must come first and selects the defaults the rest is applied to.
[[nodiscard]] ExperimentConfig parse_config(std::istream& in);
[[nodiscard]] ExperimentConfig load_config(const std::filesystem::path& path);

//! Canonical `key = value` rendering that parse_config reads back to an equal configuration.
[[nodiscard]] std::string to_text(const ExperimentConfig& config);

}  // namespace medium
