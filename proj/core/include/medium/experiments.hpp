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
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "medium/bounds.hpp"
#include "medium/checks.hpp"
#include "medium/config.hpp"
#include "medium/simulator.hpp"

namespace medium {

struct ResultRow {
    std::string experiment;
    std::string protocol;
    std::string c;
    double var{0};
    std::uint64_t seed{0};
    std::string metric;
    double value{0};
};

//! Simulation seed of repetition `rep`; shared by every protocol and sweep point.
[[nodiscard]] std::uint64_t repetition_seed(std::uint64_t base, std::uint64_t rep) noexcept;

[[nodiscard]] std::vector<ResultRow> run_single(const ExperimentConfig& config);
[[nodiscard]] std::vector<ResultRow> run_throughput_sweep(const ExperimentConfig& config);
[[nodiscard]] std::vector<ResultRow> run_balance_sweep(const ExperimentConfig& config);
[[nodiscard]] std::vector<ResultRow> params_report(const ExperimentConfig& config);

//! Results of every property check on one trace.
struct PropertyChecks {
    std::optional<DerivedParams> derived;
    double g{0};
    TypicalReport typical;
    SandwichReport sandwich;
    std::vector<GrowthViolation> growth;
    std::vector<StepViolation> steps;
    std::vector<PrefixViolation> prefix;
    std::vector<WeightGrowthViolation> weight_growth;
    FreshBlockReport fresh;
    LedgerReport ledger;
};

struct CheckOptions {
    std::uint64_t window_stride{0};   // typical-execution anchors, lambda/4 when 0
    std::uint64_t sample_stride{0};   // tracked blocks and later rounds, lambda/4 when 0
};

//! Weight-based checks (common prefix, weight growth, fresh block, ledger) are skipped under
//! the longest-chain limit, which has no numeric K.
[[nodiscard]] PropertyChecks run_property_checks(const SimTrace& trace, const CheckOptions& options = {});
[[nodiscard]] std::vector<CheckRecord> to_records(const PropertyChecks& checks, const std::string& digest);

//! Property checks over every protocol and repetition of the configuration.
[[nodiscard]] std::vector<CheckRecord> run_check_campaign(const ExperimentConfig& config);

//! Dispatches on config.kind; the check campaign's records are rendered as result rows.
[[nodiscard]] std::vector<ResultRow> run_experiment(const ExperimentConfig& config);

//! Stable sort by (var, protocol, seed).
void sort_rows(std::vector<ResultRow>& rows);

//! CSV with header `experiment,protocol,c,var,seed,metric,value`.
void write_rows(std::ostream& out, std::span<const ResultRow> rows);

struct Summary {
    std::string experiment;
    std::string protocol;
    std::string c;
    double var{0};
    std::string metric;
    std::uint64_t count{0};
    double mean{0};
    double stddev{0};
};

//! Mean and sample standard deviation per (experiment, protocol, c, var, metric); values are
//! accumulated in sorted order, so the result does not depend on row order.
[[nodiscard]] std::vector<Summary> summarize(std::span<const ResultRow> rows);

}  // namespace medium
