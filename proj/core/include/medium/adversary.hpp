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
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "medium/diffusion.hpp"
#include "medium/params.hpp"
#include "medium/view.hpp"
#include "medium/weight.hpp"

namespace medium {

//! What a strategy may look at during a round. `views` has one entry per party,
//! null for corrupted parties. During choose_parent the views are those at the
//! start of the round; during act they already include this round's honest traffic.
struct RoundContext {
    std::uint64_t round{0};
    const ProtocolParams& params;
    const WeightCoefficient& c;
    std::span<const View* const> views;
    std::span<const BlockPtr> honest_mined;

    [[nodiscard]] const View& view_of(PartyId party) const { return *views[party]; }
    //! View of the lowest-indexed honest party.
    [[nodiscard]] const View& first_honest_view() const;
    [[nodiscard]] std::vector<PartyId> honest_parties() const;
};

class AdversaryStrategy {
  public:
    virtual ~AdversaryStrategy() = default;

    [[nodiscard]] virtual std::string name() const = 0;
    //! Called before any mining; may change the partition.
    virtual void before_round(const RoundContext& ctx, DiffusionState& net) {
        (void)ctx;
        (void)net;
    }
    //! Parent for the next block found by corrupted party `party` this round.
    [[nodiscard]] virtual BlockId choose_parent(const RoundContext& ctx, PartyId party) = 0;
    virtual void on_mined(const RoundContext& ctx, const BlockPtr& block) = 0;
    //! Rushing step: sees the round's honest messages, returns its own deliveries.
    [[nodiscard]] virtual std::vector<AdversaryMessage> act(const RoundContext& ctx) = 0;
    //! True once the strategy has nothing left to do and the run may end.
    [[nodiscard]] virtual bool finished(const RoundContext& ctx) const {
        (void)ctx;
        return false;
    }
};

//! Corrupted parties behave like honest miners on the first honest party's head
//! and deliver their blocks to everyone at once.
class NullAdversary final : public AdversaryStrategy {
  public:
    [[nodiscard]] std::string name() const override { return "none"; }
    [[nodiscard]] BlockId choose_parent(const RoundContext& ctx, PartyId party) override;
    void on_mined(const RoundContext& ctx, const BlockPtr& block) override;
    [[nodiscard]] std::vector<AdversaryMessage> act(const RoundContext& ctx) override;

  private:
    std::vector<BlockPtr> pending_;
};

//! Mines a private chain from the honest head for `withhold` rounds, then publishes it
//! if it beats every honest sibling subtree at the fork point, otherwise drops it.
class SecretChainAdversary final : public AdversaryStrategy {
  public:
    explicit SecretChainAdversary(std::uint32_t withhold = 8);

    [[nodiscard]] std::string name() const override { return "secret-chain"; }
    void before_round(const RoundContext& ctx, DiffusionState& net) override;
    [[nodiscard]] BlockId choose_parent(const RoundContext& ctx, PartyId party) override;
    void on_mined(const RoundContext& ctx, const BlockPtr& block) override;
    [[nodiscard]] std::vector<AdversaryMessage> act(const RoundContext& ctx) override;

    [[nodiscard]] std::uint64_t releases() const noexcept { return releases_; }
    [[nodiscard]] std::uint64_t discards() const noexcept { return discards_; }

  private:
    std::uint32_t withhold_;
    BlockId fork_point_{kGenesisId};
    std::vector<BlockPtr> private_;
    std::uint64_t releases_{0};
    std::uint64_t discards_{0};
};

//! True when a private bare chain of `length` blocks hanging off `fork` in `view`
//! strictly beats every existing child of `fork` on weight, then main-chain length.
[[nodiscard]] bool private_chain_wins(const View& view, BlockTree::Index fork, std::uint32_t length);

enum class BalanceOutcome { Balanced, Release, Lost };

struct BalancePlan {
    BalanceOutcome outcome{BalanceOutcome::Balanced};
    std::vector<std::size_t> release;  // positions in the bank
};

//! Chooses banked blocks to hand to the parties of one side so that, in `view`, the
//! subtree rooted at `side_root` wins the cascade against every other child of genesis.
//! Greedy: release the shallowest single block that suffices; otherwise commit the
//! deepest remaining block and retry.
[[nodiscard]] BalancePlan plan_balance(const View& view, BlockTree::Index side_root, std::span<const BlockPtr> bank);

//! Two-sided partition for `tau` rounds followed by bank-driven balancing.
class BalanceAdversary final : public AdversaryStrategy {
  public:
    explicit BalanceAdversary(std::uint64_t tau = 100);

    [[nodiscard]] std::string name() const override { return "balance"; }
    void before_round(const RoundContext& ctx, DiffusionState& net) override;
    [[nodiscard]] BlockId choose_parent(const RoundContext& ctx, PartyId party) override;
    void on_mined(const RoundContext& ctx, const BlockPtr& block) override;
    [[nodiscard]] std::vector<AdversaryMessage> act(const RoundContext& ctx) override;
    [[nodiscard]] bool finished(const RoundContext& ctx) const override;

    [[nodiscard]] std::uint64_t tau() const noexcept { return tau_; }
    //! Banked blocks held when the partition heals.
    [[nodiscard]] std::uint64_t bank_at_heal() const noexcept { return bank_at_heal_; }
    [[nodiscard]] std::optional<std::uint64_t> lost_round() const noexcept { return lost_round_; }
    [[nodiscard]] std::uint64_t released() const noexcept { return released_; }
    [[nodiscard]] int side_of(PartyId party) const { return side_.at(party); }

  private:
    void assign_sides(const ProtocolParams& params);
    [[nodiscard]] const View* side_view(const RoundContext& ctx, int side) const;

    std::uint64_t tau_;
    std::vector<int> side_;
    std::array<std::vector<PartyId>, 2> honest_side_;
    std::array<std::vector<BlockPtr>, 2> bank_;
    std::array<std::optional<BlockId>, 2> root_;
    std::uint64_t bank_at_heal_{0};
    std::uint64_t released_{0};
    std::optional<std::uint64_t> lost_round_;
    bool over_{false};
};

enum class AdversaryKind { None, SecretChain, Balance };

struct AdversaryConfig {
    AdversaryKind kind{AdversaryKind::None};
    std::uint32_t withhold{8};
    std::uint64_t tau{100};
};

[[nodiscard]] std::unique_ptr<AdversaryStrategy> make_adversary(const AdversaryConfig& config);
[[nodiscard]] AdversaryKind parse_adversary_kind(const std::string& text);
[[nodiscard]] std::string to_string(AdversaryKind kind);

}  // namespace medium
