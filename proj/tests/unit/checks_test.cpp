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

#include "medium/checks.hpp"

#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "medium/bounds.hpp"

namespace medium {
namespace {

SimOptions options(std::uint32_t n, std::uint32_t t, double p, std::uint64_t rounds, std::uint64_t seed) {
    SimOptions opt;
    opt.params.n = n;
    opt.params.t = t;
    opt.params.p = p;
    opt.params.q = 10;
    opt.params.lambda = 20;
    opt.rounds = rounds;
    opt.seed = seed;
    opt.c = WeightCoefficient::algebraic_root(10001521, 100);
    return opt;
}

TEST(WindowConditions, EachConditionSeparately) {
    Rates r;
    r.alpha = 1.0;
    r.gamma = 0.5;
    r.gamma_u = 0.4;
    r.beta = 0.2;
    // 100 rounds: X in (50,150), X~ in (25,75), Y > 20, Z < Y and Z < 30
    WindowSums w{100, 50, 40, 10, 0};
    auto all = window_conditions(w, 100, r, 0.5);
    for (bool c : all) EXPECT_TRUE(c);
    w.honest = 150;
    EXPECT_FALSE(window_conditions(w, 100, r, 0.5)[0]);
    w = {100, 25, 40, 10, 0};
    EXPECT_FALSE(window_conditions(w, 100, r, 0.5)[1]);
    w = {100, 50, 20, 10, 0};
    EXPECT_FALSE(window_conditions(w, 100, r, 0.5)[2]);
    w = {100, 50, 40, 30, 0};
    EXPECT_FALSE(window_conditions(w, 100, r, 0.5)[3]);
    w = {100, 50, 25, 26, 0};
    EXPECT_FALSE(window_conditions(w, 100, r, 0.5)[3]);
    // no corrupted mining power: Z must be zero
    r.beta = 0;
    w = {100, 50, 40, 0, 0};
    EXPECT_TRUE(window_conditions(w, 100, r, 0.5)[3]);
    w.corrupted = 1;
    EXPECT_FALSE(window_conditions(w, 100, r, 0.5)[3]);
}

TEST(WindowIndex, SumsMatchDirectRecount) {
    std::vector<RoundStats> stats;
    for (std::uint32_t r = 0; r < 50; ++r) stats.push_back(make_round_stats(r % 3, r % 2, r % 5 == 0));
    const WindowIndex index(stats);
    for (std::uint64_t a = 1; a <= 50; a += 7) {
        for (std::uint64_t e = a; e <= 50; e += 5) {
            WindowSums direct;
            for (std::uint64_t r = a; r <= e; ++r) {
                direct.honest += stats[r - 1].honest;
                direct.successful += stats[r - 1].successful;
                direct.unique += stats[r - 1].unique;
                direct.corrupted += stats[r - 1].corrupted;
                direct.released += stats[r - 1].released;
            }
            EXPECT_EQ(index.sums(a, e), direct);
        }
    }
    EXPECT_THROW((void)index.sums(0, 3), std::out_of_range);
    EXPECT_THROW((void)index.sums(4, 51), std::out_of_range);
}

TEST(TypicalExecution, WindowEnumeration) {
    ProtocolParams p;
    p.lambda = 4;
    const std::vector<RoundStats> stats(10, make_round_stats(1, 0));
    EXPECT_EQ(typical_execution_check(stats, p, 1).windows, 28u);
    EXPECT_EQ(typical_execution_check(stats, p, 2).windows, 19u);
    EXPECT_THROW((void)typical_execution_check(std::span(stats).first(3), p), std::invalid_argument);
}

TEST(TypicalExecution, FlagsFirstViolatingWindow) {
    ProtocolParams p;
    p.n = 10;
    p.t = 0;
    p.p = 0.01;
    p.q = 10;
    p.lambda = 4;
    // alpha = 1, gamma ~ 0.634, gamma_u ~ 0.366: one honest block per round breaks condition 2
    const std::vector<RoundStats> stats(8, make_round_stats(1, 0));
    const TypicalReport rep = typical_execution_check(stats, p, 1);
    EXPECT_FALSE(rep.typical());
    EXPECT_EQ(rep.violations[1], rep.windows);
    EXPECT_EQ(rep.first_violation[1], (RoundWindow{1, 4}));
    EXPECT_EQ(rep.violations[0], 0u);
    EXPECT_EQ(rep.typical_fraction(), 0.0);
}

TEST(ChainGrowth, CertainMining) {
    const SimTrace trace = simulate(options(5, 0, 1.0, 40, 1), AdversaryConfig{});
    EXPECT_TRUE(chain_growth_check(trace, 1.0, 1).empty());
    const auto v = chain_growth_check(trace, 1.05, 20);
    ASSERT_FALSE(v.empty());
    EXPECT_EQ(v.front().round, 20u);
    EXPECT_EQ(v.front().length, 20u);
}

TEST(FreshBlock, CertainMiningHasUnitLatency) {
    const SimTrace trace = simulate(options(5, 0, 1.0, 40, 2), AdversaryConfig{});
    const FreshBlockReport rep = fresh_block_check(trace, 1);
    EXPECT_EQ(rep.checked, 40u);
    EXPECT_EQ(rep.violations, 0u);
    for (const auto& l : rep.latency) EXPECT_EQ(l, 1u);
}

TEST(FreshBlock, ReportsWindowsWithoutHonestBlocks) {
    const SimTrace trace = simulate(options(5, 0, 0.0, 30, 2), AdversaryConfig{});
    const FreshBlockReport rep = fresh_block_check(trace, 10);
    EXPECT_EQ(rep.checked, 21u);
    EXPECT_EQ(rep.violations, 21u);
    EXPECT_EQ(rep.first_violation, 1u);
}

TEST(HonestRun, SafetyChecksHold) {
    auto opt = options(40, 0, 2e-3, 600, 5);
    opt.tx_interval = 5;
    const SimTrace trace = simulate(opt, AdversaryConfig{});
    const Real K = compute_K(opt.params, opt.c).K;
    EXPECT_TRUE(common_prefix_check(trace, K).empty());
    EXPECT_TRUE(honest_step_check(trace).empty());
    const SandwichReport sw = sandwich_check(trace, 3);
    EXPECT_GT(sw.tracked_blocks, 0u);
    EXPECT_TRUE(sw.violations.empty());
    EXPECT_EQ(sw.mined_reading_violations, 0u);
    EXPECT_TRUE(weight_growth_check(trace, Real(0.0), 20, 5).empty());
    EXPECT_FALSE(weight_growth_check(trace, Real(1e9), 20, 5).empty());

    // with t = 0 the K-prefix trails the head by the levels needed to reach K
    const LedgerReport led = ledger_checks(trace, K, 400);
    EXPECT_EQ(led.transactions, 120u);
    EXPECT_EQ(led.persistence_violations, 0u);
    EXPECT_GT(led.liveness_checked, 0u);
    EXPECT_EQ(led.liveness_met, led.liveness_checked);
    EXPECT_EQ(led.liveness_checked + led.liveness_pending, led.transactions);

    const ThroughputMetrics m = throughput_metrics(trace);
    EXPECT_EQ(m.honest_fraction, 1.0);
    EXPECT_EQ(m.fork_duration.rounds, 0u);
    EXPECT_TRUE(m.fork_duration.resolved);
}

TEST(Ledger, NoTransactionsGivesEmptyReport) {
    const SimTrace trace = simulate(options(10, 0, 1e-2, 100, 1), AdversaryConfig{});
    const LedgerReport rep = ledger_checks(trace, Real(5.0), 10);
    EXPECT_EQ(rep.transactions, 0u);
    EXPECT_EQ(rep.liveness_checked, 0u);
    EXPECT_FALSE(rep.first_persistence_violation.has_value());
}

TEST(CommonPrefix, DetectsReorganisationsAtTinyK) {
    auto opt = options(100, 40, 2e-3, 1500, 4);
    opt.c = WeightCoefficient::ghost();
    const SimTrace trace = simulate(opt, AdversaryConfig{AdversaryKind::SecretChain, 8, 100});
    const auto v = common_prefix_check(trace, Real(1.0));
    ASSERT_FALSE(v.empty());
    EXPECT_LT(v.front().early_round, v.front().late_round);
    EXPECT_TRUE(common_prefix_check(trace, compute_K(opt.params, opt.c).K, 10).empty());
}

TEST(Throughput, PsiMatchesTwoPartyCombinatorialOracle) {
    SimOptions opt;
    opt.params.n = 2;
    opt.params.t = 0;
    opt.params.q = 1;
    opt.params.p = 0.1;
    opt.rounds = 40000;
    opt.seed = 12;
    const SimTrace trace = simulate(opt, AdversaryConfig{});
    const double p = 0.1;
    const double success = 1 - (1 - p) * (1 - p);
    const double psi = p / (2 - p);  // 1 - 2p(1-p) / (1 - (1-p)^2)
    const double sd = std::sqrt(psi * (1 - psi) / (success * opt.rounds));
    const ThroughputMetrics m = throughput_metrics(trace);
    EXPECT_NEAR(m.psi_f, psi, 5 * sd);
    // with one query each, a round has two blocks exactly when it is not unique
    EXPECT_NEAR(m.psi_collision, m.psi_f, 1e-12);
}

TEST(ForkDuration, BalanceAttackHealsAndResolves) {
    auto opt = options(100, 20, 1e-3, 2000, 6);
    opt.params.lambda = 200;
    opt.c = WeightCoefficient::ghost();
    opt.min_rounds = 300;
    const SimTrace trace = simulate(opt, AdversaryConfig{AdversaryKind::Balance, 8, 100});
    const ForkDuration d = fork_duration(trace);
    EXPECT_TRUE(d.resolved);
    // agreement on the first block after genesis at round heal + duration
    const std::uint64_t r = 101 + d.rounds;
    const BlockId root = trace.registry.ancestor_at_depth(
        trace.registry.index_of(trace.snapshot(r, 0).head_id), 1);
    for (PartyId i : trace.honest_parties())
        EXPECT_EQ(trace.registry.ancestor_at_depth(trace.registry.index_of(trace.snapshot(r, i).head_id), 1), root);
}

TEST(Distances, HeadAndGenesis) {
    const SimTrace trace = simulate(options(20, 0, 5e-3, 200, 3), AdversaryConfig{});
    const Snapshot& s = trace.final_snapshot();
    EXPECT_EQ(distance_metrics(trace, trace.rounds, s.head_id).to_head, 0);
    EXPECT_EQ(distance_metrics(trace, trace.rounds, s.head_id).to_leaf, 0u);
    const Distances g = distance_metrics(trace, trace.rounds, kGenesisId);
    EXPECT_EQ(g.to_head, static_cast<std::int64_t>(s.length));
    const BlockTree& tree = trace.view(s).tree;
    for (BlockTree::Index i = 0; i < tree.size(); i += 7)
        EXPECT_EQ(distance_metrics(trace, trace.rounds, tree.id(i)).to_leaf, tree.height(i));
}

TEST(Report, DigestAndCsv) {
    ProtocolParams p;
    const auto c = WeightCoefficient::ghost();
    const std::string d = params_digest(p, c, 1);
    EXPECT_EQ(d.size(), 16u);
    EXPECT_EQ(d, params_digest(p, c, 1));
    EXPECT_NE(d, params_digest(p, c, 2));
    EXPECT_NE(d, params_digest(p, WeightCoefficient::rational(2), 1));
    std::ostringstream out;
    const std::vector<CheckRecord> recs{{"common_prefix", d, true, std::nullopt, "K=3"},
                                        {"liveness", d, false, 17, "a,b"}};
    write_report(out, recs);
    EXPECT_EQ(out.str(), "check_name,params_digest,result,first_violation_round,detail\n"
                         "common_prefix," + d + ",pass,,K=3\n"
                         "liveness," + d + ",fail,17,\"a,b\"\n");
}

}  // namespace
}  // namespace medium
