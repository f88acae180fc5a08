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
#include <limits>
#include <memory>
#include <optional>
#include <vector>

#include "medium/adversary.hpp"
#include "medium/block_tree.hpp"
#include "medium/diffusion.hpp"
#include "medium/params.hpp"
#include "medium/round_stats.hpp"
#include "medium/view.hpp"
#include "medium/weight.hpp"

namespace medium {

struct SimOptions {
    ProtocolParams params;
    WeightCoefficient c = WeightCoefficient::ghost();
    std::uint64_t seed{1};
    std::uint64_t rounds{1000};
    //! A strategy's finished() is only honoured from this round on.
    std::uint64_t min_rounds{0};
    //! Inject one transaction every tx_interval rounds (0 disables transactions).
    std::uint64_t tx_interval{0};
    bool log_events{false};
};

//! Main chain of one view group at the end of a round. `arrival_limit` is the view's
//! size at that moment, so the view as it was can be recovered from the final tree.
struct Snapshot {
    std::uint32_t view{0};
    BlockTree::Index arrival_limit{0};
    BlockTree::Index head{0};
    BlockId head_id{kGenesisId};
    std::uint32_t length{0};
};

struct Transaction {
    TxId id{0};
    std::uint64_t injected{0};
};

inline constexpr std::uint64_t kNever = std::numeric_limits<std::uint64_t>::max();

struct SimTrace {
    ProtocolParams params;
    WeightCoefficient c = WeightCoefficient::ghost();
    std::uint64_t seed{0};
    std::uint64_t rounds{0};  // rounds actually simulated

    //! Every block ever mined, in mining order.
    BlockTree registry;
    //! Round in which a block first reached an honest party, by block id.
    std::vector<std::uint64_t> delivered_round;

    std::vector<RoundStats> stats;  // stats[r-1] describes round r
    std::vector<Snapshot> snapshots;
    //! party_snapshot[r-1][party] indexes `snapshots`; kNoSnapshot for corrupted parties.
    std::vector<std::vector<std::uint32_t>> party_snapshot;
    std::vector<std::shared_ptr<const View>> views;

    //! Main-chain length of the union of honest views before and after the round's honest blocks.
    std::vector<std::uint32_t> union_length_before;
    std::vector<std::uint32_t> union_length_after;
    std::vector<bool> partitioned;
    std::vector<bool> adversary_delivered;

    std::vector<Transaction> transactions;
    std::vector<DeliveryEvent> events;

    static constexpr std::uint32_t kNoSnapshot = std::numeric_limits<std::uint32_t>::max();

    [[nodiscard]] std::vector<PartyId> honest_parties() const;
    [[nodiscard]] const Snapshot& snapshot(std::uint64_t round, PartyId party) const {
        return snapshots[party_snapshot[round - 1][party]];
    }
    [[nodiscard]] const View& view(const Snapshot& s) const { return *views[s.view]; }
    //! Final main chain of the lowest-indexed honest party.
    [[nodiscard]] const Snapshot& final_snapshot() const;
};

[[nodiscard]] SimTrace simulate(const SimOptions& options, AdversaryStrategy& adversary);
[[nodiscard]] SimTrace simulate(const SimOptions& options, const AdversaryConfig& adversary);

}  // namespace medium
