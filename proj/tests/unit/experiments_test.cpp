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

#include "medium/experiments.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

namespace medium {
namespace {

ExperimentConfig small(ExperimentKind kind) {
    auto c = default_config(kind);
    c.params.n = 20;
    c.params.q = 5;
    c.params.p = 1.0 / (c.params.n * c.params.q);
    c.params.lambda = 20;
    c.protocols = {WeightCoefficient::ghost(), WeightCoefficient::algebraic_root(10001521, 100),
                   WeightCoefficient::bitcoin()};
    c.t_values = {0, 4};
    c.pqn_values = {1};
    c.params.t = 4;
    c.adversary.tau = 30;
    c.rounds = 150;
    c.repetitions = 3;
    return c;
}

std::string csv(const std::vector<ResultRow>& rows) {
    std::ostringstream out;
    write_rows(out, rows);
    return out.str();
}

TEST(Experiments, RepetitionSeeds) {
    std::set<std::uint64_t> seen;
    for (std::uint64_t r = 0; r < 1000; ++r) seen.insert(repetition_seed(7, r));
    EXPECT_EQ(seen.size(), 1000u);
    EXPECT_EQ(repetition_seed(7, 3), repetition_seed(7, 3));
    EXPECT_NE(repetition_seed(7, 3), repetition_seed(8, 3));
}

TEST(Experiments, ThroughputRowsAndCsv) {
    const auto cfg = small(ExperimentKind::Throughput);
    const auto rows = run_throughput_sweep(cfg);
    EXPECT_EQ(rows.size(), cfg.t_values.size() * cfg.protocols.size() * cfg.repetitions * 4);
    for (const auto& r : rows) {
        EXPECT_EQ(r.experiment, "throughput");
        if (r.metric == "honest_fraction" || r.metric == "psi_f") {
            EXPECT_GE(r.value, 0.0);
            EXPECT_LE(r.value, 1.0);
        }
    }
    const std::string text = csv(rows);
    EXPECT_EQ(text.substr(0, text.find('\n')), "experiment,protocol,c,var,seed,metric,value");
    EXPECT_EQ(text, csv(run_throughput_sweep(cfg)));
}

TEST(Experiments, BalanceRows) {
    const auto cfg = small(ExperimentKind::Balance);
    const auto rows = run_balance_sweep(cfg);
    std::set<std::string> metrics;
    for (const auto& r : rows) metrics.insert(r.metric);
    EXPECT_TRUE(metrics.count("fork_duration"));
    EXPECT_TRUE(metrics.count("typical"));
    EXPECT_EQ(rows.size() % (cfg.protocols.size() * cfg.repetitions), 0u);
}

TEST(Experiments, ParamsAndSingle) {
    auto cfg = small(ExperimentKind::Params);
    const auto rows = params_report(cfg);
    bool alpha = false;
    for (const auto& r : rows)
        if (r.metric == "alpha") {
            alpha = true;
            EXPECT_NEAR(r.value, 16 * 5 / 100.0, 1e-12);
        }
    EXPECT_TRUE(alpha);
    cfg = small(ExperimentKind::Single);
    cfg.repetitions = 1;
    EXPECT_EQ(csv(run_experiment(cfg)), csv(run_single(cfg)));
}

TEST(Experiments, CheckCampaignRecords) {
    auto cfg = small(ExperimentKind::Check);
    cfg.protocols = {WeightCoefficient::algebraic_root(10001521, 100)};
    cfg.repetitions = 1;
    cfg.params.t = 0;
    cfg.adversary = {};
    const auto recs = run_check_campaign(cfg);
    ASSERT_FALSE(recs.empty());
    // typicality is not expected at this small scale
    for (const auto& r : recs)
        if (r.check != "typical_execution") {
            EXPECT_TRUE(r.pass) << r.check << ' ' << r.detail;
        }
}

TEST(Experiments, SummaryIgnoresRowOrder) {
    std::vector<ResultRow> rows{{"x", "GHOST", "1", 0.1, 1, "m", 1.0},
                                {"x", "GHOST", "1", 0.1, 2, "m", 3.0},
                                {"x", "GHOST", "1", 0.2, 1, "m", 5.0}};
    auto s = summarize(rows);
    ASSERT_EQ(s.size(), 2u);
    EXPECT_EQ(s[0].count, 2u);
    EXPECT_DOUBLE_EQ(s[0].mean, 2.0);
    EXPECT_DOUBLE_EQ(s[0].stddev, std::sqrt(2.0));
    std::swap(rows[0], rows[2]);
    const auto s2 = summarize(rows);
    EXPECT_DOUBLE_EQ(s2[0].mean, s[0].mean);
    EXPECT_EQ(s2[1].count, 1u);
}

}  // namespace
}  // namespace medium
