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

#include "medium/adversary.hpp"

#include <algorithm>
#include <numeric>

#include "medium/errors.hpp"

namespace medium {

using Index = BlockTree::Index;

const View& RoundContext::first_honest_view() const {
    for (const View* v : views)
        if (v) return *v;
    throw std::logic_error("no honest party");
}

std::vector<PartyId> RoundContext::honest_parties() const {
    std::vector<PartyId> out;
    for (PartyId i = 0; i < views.size(); ++i)
        if (views[i]) out.push_back(i);
    return out;
}

// -- none -------------------------------------------------------------------

BlockId NullAdversary::choose_parent(const RoundContext& ctx, PartyId) { return ctx.first_honest_view().head_id(); }

void NullAdversary::on_mined(const RoundContext&, const BlockPtr& block) { pending_.push_back(block); }

std::vector<AdversaryMessage> NullAdversary::act(const RoundContext& ctx) {
    std::vector<AdversaryMessage> out;
    const auto everyone = ctx.honest_parties();
    for (auto& b : pending_) out.push_back({std::move(b), everyone, false});
    pending_.clear();
    return out;
}

// -- secret chain -----------------------------------------------------------

SecretChainAdversary::SecretChainAdversary(std::uint32_t withhold) : withhold_(withhold) {
    if (withhold_ == 0) throw ConfigError("withhold period must be at least 1 round");
}

void SecretChainAdversary::before_round(const RoundContext& ctx, DiffusionState&) {
    if ((ctx.round - 1) % withhold_ == 0) {
        fork_point_ = ctx.first_honest_view().head_id();
        private_.clear();
    }
}

BlockId SecretChainAdversary::choose_parent(const RoundContext&, PartyId) {
    return private_.empty() ? fork_point_ : private_.back()->id;
}

void SecretChainAdversary::on_mined(const RoundContext&, const BlockPtr& block) { private_.push_back(block); }

bool private_chain_wins(const View& view, Index fork, std::uint32_t length) {
    if (length == 0) return false;
    const BlockTree& tree = view.tree;
    const WeightPoly priv(std::vector<std::uint64_t>(length, 1));
    const std::uint32_t priv_len = tree.depth(fork) + length;
    for (Index ch : tree.children(fork)) {
        const auto w = compare_subtree_weight(priv, tree.weight_poly(ch), view.selector.coefficient());
        if (w < 0) return false;
        if (w == 0 && priv_len <= tree.depth(view.selector.head_from(tree, ch))) return false;
    }
    return true;
}

std::vector<AdversaryMessage> SecretChainAdversary::act(const RoundContext& ctx) {
    if (ctx.round % withhold_ != 0 || private_.empty()) return {};
    const View& view = ctx.first_honest_view();
    const auto fork = view.tree.find(fork_point_);
    std::vector<AdversaryMessage> out;
    if (fork && private_chain_wins(view, *fork, static_cast<std::uint32_t>(private_.size()))) {
        const auto everyone = ctx.honest_parties();
        for (const auto& b : private_) out.push_back({b, everyone, false});
        ++releases_;
    } else {
        ++discards_;
    }
    private_.clear();
    return out;
}

// -- balance ----------------------------------------------------------------

BalancePlan plan_balance(const View& view, Index side_root, std::span<const BlockPtr> bank) {
    const BlockTree& tree = view.tree;
    const WeightCoefficient& c = view.selector.coefficient();

    struct Rival {
        Index root;
        WeightPoly poly;
        std::uint32_t length;
    };
    std::vector<Rival> rivals;
    for (Index ch : tree.children(tree.root())) {
        if (ch == side_root) continue;
        rivals.push_back({ch, tree.weight_poly(ch), tree.depth(view.selector.head_from(tree, ch))});
    }
    const Index side_head = view.selector.head_from(tree, side_root);
    WeightPoly poly = tree.weight_poly(side_root);
    std::uint32_t length = tree.depth(side_head);

    auto wins = [&](const WeightPoly& p, std::uint32_t len) {
        for (const auto& r : rivals) {
            auto w = compare_subtree_weight(p, r.poly, c);
            if (w == 0) w = len <=> r.length;
            if (w == 0) w = r.root <=> side_root;  // earlier arrival wins the last tie
            if (w < 0) return false;
        }
        return true;
    };
    if (wins(poly, length)) return {};

    struct Candidate {
        std::size_t pos;
        std::uint32_t depth;
        bool on_head;
    };
    std::vector<Candidate> cand;
    for (std::size_t k = 0; k < bank.size(); ++k) {
        const auto p = tree.find(*bank[k]->parent);
        if (!p || !tree.is_ancestor(side_root, *p) || tree.contains(bank[k]->id)) continue;
        cand.push_back({k, tree.depth(*p) + 1, *p == side_head});
    }
    std::sort(cand.begin(), cand.end(), [](const Candidate& a, const Candidate& b) {
        return std::tie(a.depth, a.on_head, a.pos) < std::tie(b.depth, b.on_head, b.pos);
    });

    BalancePlan plan;
    auto with = [&](const Candidate& x) {
        WeightPoly p = poly;
        p.add(x.depth - 1);
        return std::pair{p, x.on_head ? std::max(length, x.depth) : length};
    };
    while (!cand.empty()) {
        // shallowest single addition that completes the balance
        std::size_t lo = 0, hi = cand.size();
        while (lo < hi) {
            const std::size_t mid = (lo + hi) / 2;
            auto [p, len] = with(cand[mid]);
            if (wins(p, len)) hi = mid;
            else lo = mid + 1;
        }
        if (lo < cand.size()) {
            plan.release.push_back(cand[lo].pos);
            plan.outcome = BalanceOutcome::Release;
            return plan;
        }
        auto [p, len] = with(cand.back());
        poly = std::move(p);
        length = len;
        plan.release.push_back(cand.back().pos);
        cand.pop_back();
        if (wins(poly, length)) {
            plan.outcome = BalanceOutcome::Release;
            return plan;
        }
    }
    return {BalanceOutcome::Lost, {}};
}

BalanceAdversary::BalanceAdversary(std::uint64_t tau) : tau_(tau) {}

void BalanceAdversary::assign_sides(const ProtocolParams& params) {
    side_.assign(params.n, 0);
    const std::uint32_t h = params.honest();
    for (PartyId i = 0; i < params.n; ++i) {
        if (i < h) side_[i] = i < h / 2 ? 0 : 1;
        else side_[i] = (i - h) < params.t / 2 ? 0 : 1;
        if (i < h) honest_side_[side_[i]].push_back(i);
    }
}

const View* BalanceAdversary::side_view(const RoundContext& ctx, int side) const {
    const auto& members = honest_side_[side];
    return members.empty() ? nullptr : ctx.views[members.front()];
}

void BalanceAdversary::before_round(const RoundContext& ctx, DiffusionState& net) {
    if (ctx.round == 1) {
        assign_sides(ctx.params);
        if (tau_ == 0 || honest_side_[0].empty() || honest_side_[1].empty()) {
            over_ = true;
            return;
        }
        std::vector<std::uint32_t> labels(side_.begin(), side_.end());
        net.set_partition(std::move(labels));
    }
    if (!over_ && ctx.round == tau_ + 1) {
        for (int s = 0; s < 2; ++s) {
            const View* v = side_view(ctx, s);
            if (v->length() > 0) root_[s] = v->tree.id(v->tree.ancestor_at_depth(v->head, 1));
        }
        bank_at_heal_ = bank_[0].size() + bank_[1].size();
        net.heal();
        if (!root_[0] || !root_[1]) {
            over_ = true;
            lost_round_ = ctx.round;
        }
    }
}

BlockId BalanceAdversary::choose_parent(const RoundContext& ctx, PartyId party) {
    const View* v = side_.empty() ? nullptr : side_view(ctx, side_[party]);
    return v ? v->head_id() : ctx.first_honest_view().head_id();
}

void BalanceAdversary::on_mined(const RoundContext&, const BlockPtr& block) {
    if (over_) return;
    bank_[side_[block->miner.party]].push_back(block);
}

std::vector<AdversaryMessage> BalanceAdversary::act(const RoundContext& ctx) {
    std::vector<AdversaryMessage> out;
    if (over_ || ctx.round <= tau_) return out;
    for (int s = 0; s < 2; ++s) {
        const View* v = side_view(ctx, s);
        const auto root = v->tree.find(*root_[s]);
        if (!root) continue;
        const BalancePlan plan = plan_balance(*v, *root, bank_[s]);
        if (plan.outcome == BalanceOutcome::Lost) {
            over_ = true;
            lost_round_ = ctx.round;
            return {};
        }
        if (plan.outcome != BalanceOutcome::Release) continue;
        std::vector<bool> drop(bank_[s].size(), false);
        for (std::size_t pos : plan.release) {
            out.push_back({bank_[s][pos], honest_side_[s], false});
            drop[pos] = true;
        }
        released_ += plan.release.size();
        std::vector<BlockPtr> kept;
        for (std::size_t k = 0; k < bank_[s].size(); ++k)
            if (!drop[k]) kept.push_back(bank_[s][k]);
        bank_[s] = std::move(kept);
    }
    return out;
}

bool BalanceAdversary::finished(const RoundContext& ctx) const {
    if (tau_ == 0) return true;
    if (ctx.round <= tau_) return false;
    std::optional<BlockId> agreed;
    for (const View* v : ctx.views) {
        if (!v) continue;
        const BlockId root = v->length() ? v->tree.id(v->tree.ancestor_at_depth(v->head, 1)) : kGenesisId;
        if (agreed && *agreed != root) return false;
        agreed = root;
    }
    return true;
}

// -- factory ----------------------------------------------------------------

std::unique_ptr<AdversaryStrategy> make_adversary(const AdversaryConfig& config) {
    switch (config.kind) {
    case AdversaryKind::None: return std::make_unique<NullAdversary>();
    case AdversaryKind::SecretChain: return std::make_unique<SecretChainAdversary>(config.withhold);
    case AdversaryKind::Balance: return std::make_unique<BalanceAdversary>(config.tau);
    }
    return nullptr;
}

AdversaryKind parse_adversary_kind(const std::string& text) {
    if (text == "none") return AdversaryKind::None;
    if (text == "secret-chain" || text == "secret" || text == "withhold") return AdversaryKind::SecretChain;
    if (text == "balance") return AdversaryKind::Balance;
    throw ConfigError("unknown adversary: " + text);
}

std::string to_string(AdversaryKind kind) {
    switch (kind) {
    case AdversaryKind::None: return "none";
    case AdversaryKind::SecretChain: return "secret-chain";
    case AdversaryKind::Balance: return "balance";
    }
    return {};
}

}  // namespace medium
