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

#include <array>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "medium/params.hpp"
#include "medium/real.hpp"
#include "medium/round_stats.hpp"
#include "medium/simulator.hpp"

namespace medium {

// -- typical execution -------------------------------------------------------

struct RoundWindow {
    std::uint64_t first{0};
    std::uint64_t last{0};
    [[nodiscard]] std::uint64_t size() const noexcept { return last - first + 1; }
    friend bool operator==(const RoundWindow&, const RoundWindow&) = default;
};

//! Which of the six typical-execution conditions a single window satisfies (index k is
//! condition k+1). Conditions 5 and 6 hold by construction: block ids are fresh and honest
//! parties stop querying after their first success, so both are always reported as held.
using WindowConditions = std::array<bool, 6>;

[[nodiscard]] WindowConditions window_conditions(const WindowSums& sums, std::uint64_t rounds, const Rates& rates,
                                                 double epsilon);

struct TypicalReport {
    std::uint64_t windows{0};
    std::uint64_t typical_windows{0};
    std::array<std::uint64_t, 6> violations{};
    std::array<std::optional<RoundWindow>, 6> first_violation{};

    [[nodiscard]] double typical_fraction() const {
        return windows ? static_cast<double>(typical_windows) / static_cast<double>(windows) : 1.0;
    }
    [[nodiscard]] bool typical() const noexcept { return typical_windows == windows; }
};

//! Windows of at least lambda rounds starting at 1 + k*stride (stride defaults to lambda/4)
//! with every end round, plus every suffix window. Throws std::invalid_argument when the
//! trace is shorter than lambda.
[[nodiscard]] TypicalReport typical_execution_check(std::span<const RoundStats> stats, const ProtocolParams& params,
                                                    std::uint64_t stride = 0);

// -- per-round prefix table --------------------------------------------------

//! Registry index of every snapshot's head and of the last block of its K-dominant prefix.
struct PrefixTable {
    std::vector<BlockTree::Index> head;
    std::vector<BlockTree::Index> prefix;
};

[[nodiscard]] PrefixTable build_prefix_table(const SimTrace& trace, const Real& K);

// -- chain properties --------------------------------------------------------

struct PrefixViolation {
    std::uint64_t early_round{0};
    std::uint64_t late_round{0};
    PartyId early_party{0};
    PartyId late_party{0};
    BlockId diverging{kGenesisId};  // last block of the early K-prefix
};

//! Checks that the K-prefix of every honest chain at round r1 is a prefix of every honest
//! chain at r1 and at every later round that is a multiple of `stride` or the final round.
[[nodiscard]] std::vector<PrefixViolation> common_prefix_check(const SimTrace& trace, const Real& K,
                                                               std::uint64_t stride = 1);
[[nodiscard]] std::vector<PrefixViolation> common_prefix_check(const SimTrace& trace, const PrefixTable& table,
                                                               std::uint64_t stride = 1);

struct GrowthViolation {
    std::uint64_t round{0};
    PartyId party{0};
    std::uint32_t length{0};
    double required{0};
};

//! Every honest main chain has length at least g*r from round r0 on.
[[nodiscard]] std::vector<GrowthViolation> chain_growth_check(const SimTrace& trace, double g, std::uint64_t r0);

struct SandwichViolation {
    BlockId block{kGenesisId};
    std::uint64_t mined{0};
    std::uint64_t window_end{0};
    PartyId party{0};
    std::int64_t length_gain{0};
    std::int64_t lower{0};
    std::int64_t upper{0};
};

struct SandwichReport {
    std::uint64_t tracked_blocks{0};
    std::uint64_t windows{0};
    std::vector<SandwichViolation> violations;  // Z counted as corrupted blocks released in S
    std::uint64_t mined_reading_violations{0};  // Z counted as corrupted blocks mined in S
};

//! For honest blocks mined in rounds that are multiples of `stride` and held by every
//! honest chain from their round on, checks Y(S)-Z(S) <= l(S) <= X~(S)+Z(S) for each
//! window S = [mined+1, e] over which the block stays in all honest chains.
[[nodiscard]] SandwichReport sandwich_check(const SimTrace& trace, std::uint64_t stride = 1);

struct StepViolation {
    std::uint64_t round{0};
    std::uint32_t before{0};
    std::uint32_t after{0};
};

//! Rounds with an honest block, no partition in r-1 or r and no adversary delivery in
//! r-1 must grow the main chain of the union of honest views by exactly one.
[[nodiscard]] std::vector<StepViolation> honest_step_check(const SimTrace& trace);

struct WeightGrowthViolation {
    BlockId block{kGenesisId};
    std::uint64_t window_start{0};
    PartyId party{0};
};

//! Every tracked honest main-chain block gains at least tau normalized weight over each
//! s-round window after its mining round during which it stays in all honest chains.
[[nodiscard]] std::vector<WeightGrowthViolation> weight_growth_check(const SimTrace& trace, const Real& tau,
                                                                     std::uint64_t s, std::uint64_t stride = 1);

struct FreshBlockReport {
    //! latency[a-1]: smallest L such that an honest block mined in [a, a+L-1] is in every
    //! honest chain from round a+L-1 to the end of the trace; nullopt if none.
    std::vector<std::optional<std::uint64_t>> latency;
    std::uint64_t checked{0};  // starts a with a + u - 1 <= rounds
    std::uint64_t violations{0};
    std::optional<std::uint64_t> first_violation;
};

[[nodiscard]] FreshBlockReport fresh_block_check(const SimTrace& trace, std::uint64_t u);

// -- ledger ------------------------------------------------------------------

struct LedgerReport {
    std::uint64_t transactions{0};
    std::uint64_t persistence_violations{0};
    std::optional<std::uint64_t> first_persistence_violation;
    std::uint64_t liveness_checked{0};   // injected at r with r + u <= rounds
    std::uint64_t liveness_met{0};
    std::uint64_t liveness_pending{0};   // window not finished inside the trace
    std::optional<std::uint64_t> first_liveness_failure;
};

//! A transaction is stable for a party once a block carrying it is in the party's K-prefix.
//! Persistence: every stability report places it at the same (depth, slot). Liveness: a
//! transaction injected at round r is stable for every honest party at round r + u.
[[nodiscard]] LedgerReport ledger_checks(const SimTrace& trace, const PrefixTable& table, std::uint64_t u);
[[nodiscard]] LedgerReport ledger_checks(const SimTrace& trace, const Real& K, std::uint64_t u);

// -- metrics -----------------------------------------------------------------

struct ForkDuration {
    std::uint64_t rounds{0};
    bool resolved{true};  // false when the honest parties never agreed before the trace ended
};

struct ThroughputMetrics {
    double honest_fraction{1.0};
    double psi_f{0.0};            // 1 - Y / X~
    double psi_collision{0.0};    // successful rounds with two honest blocks at one depth
    ForkDuration fork_duration;
};

[[nodiscard]] ForkDuration fork_duration(const SimTrace& trace);
[[nodiscard]] ThroughputMetrics throughput_metrics(const SimTrace& trace);

struct Distances {
    std::int64_t to_head{0};   // min honest main-chain length at the round minus depth(B)
    std::uint32_t to_leaf{0};  // height of T(B) in the first honest view at the round
};

[[nodiscard]] Distances distance_metrics(const SimTrace& trace, std::uint64_t round, BlockId block);

// -- report ------------------------------------------------------------------

struct CheckRecord {
    std::string check;
    std::string params_digest;
    bool pass{true};
    std::optional<std::uint64_t> first_violation_round;
    std::string detail;
};

//! 16 hex digits of FNV-1a over a canonical rendering of the parameters, c and seed.
[[nodiscard]] std::string params_digest(const ProtocolParams& params, const WeightCoefficient& c, std::uint64_t seed);

//! CSV with header `check_name,params_digest,result,first_violation_round,detail`.
void write_report(std::ostream& out, std::span<const CheckRecord> records);

}  // namespace medium
