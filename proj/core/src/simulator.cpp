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

#include "medium/simulator.hpp"

#include <algorithm>
#include <unordered_map>

#include "medium/mining.hpp"

namespace medium {

std::vector<PartyId> SimTrace::honest_parties() const {
    std::vector<PartyId> out;
    for (PartyId i = 0; i < params.n; ++i)
        if (!params.is_corrupted(i)) out.push_back(i);
    return out;
}

const Snapshot& SimTrace::final_snapshot() const {
    for (PartyId i = 0; i < params.n; ++i)
        if (!params.is_corrupted(i)) return snapshot(rounds, i);
    throw std::logic_error("no honest party");
}

namespace {

    constexpr std::uint32_t kNoView = std::numeric_limits<std::uint32_t>::max();

    class Engine {
      public:
        Engine(const SimOptions& opt, AdversaryStrategy& adv)
            : opt_(opt),
              adv_(adv),
              oracle_(opt.seed, opt.params.p, opt.params.q),
              net_(opt.params.n, opt.log_events),
              observer_(kNoView, opt.c) {
            trace_.params = opt.params;
            trace_.c = opt.c;
            trace_.seed = opt.seed;
            party_view_.assign(opt.params.n, kNoView);
            auto first = std::make_shared<View>(0, opt.c);
            views_.push_back(first);
            for (PartyId i = 0; i < opt.params.n; ++i)
                if (!opt.params.is_corrupted(i)) party_view_[i] = 0;
            rebroadcast_.resize(opt.params.n);
            trace_.delivered_round.assign(1, 0);
            refresh_pointers();
        }

        SimTrace run() {
            for (std::uint64_t r = 1; r <= opt_.rounds; ++r) {
                step(r);
                trace_.rounds = r;
                if (r >= opt_.min_rounds && adv_.finished(context(r, {}))) break;
            }
            for (auto& v : views_) trace_.views.push_back(v);
            trace_.events = net_.events();
            return std::move(trace_);
        }

      private:
        RoundContext context(std::uint64_t r, std::span<const BlockPtr> mined) const {
            return RoundContext{r, opt_.params, opt_.c, pointers_, mined};
        }

        void refresh_pointers() {
            pointers_.assign(opt_.params.n, nullptr);
            for (PartyId i = 0; i < opt_.params.n; ++i)
                if (party_view_[i] != kNoView) pointers_[i] = views_[party_view_[i]].get();
        }

        void mark_delivered(BlockId id, std::uint64_t r) {
            if (trace_.delivered_round.size() <= id) trace_.delivered_round.resize(id + 1, kNever);
            if (trace_.delivered_round[id] == kNever) trace_.delivered_round[id] = r;
        }

        bool tx_in_chain(const View& v, TxId tx) const {
            auto it = tx_blocks_.find(tx);
            if (it == tx_blocks_.end()) return false;
            for (BlockId b : it->second) {
                const auto idx = v.tree.find(b);
                if (idx && v.tree.is_ancestor(*idx, v.head)) return true;
            }
            return false;
        }

        std::vector<TxId> payload_for(const View& v) const {
            std::vector<TxId> out;
            for (const auto& tx : trace_.transactions)
                if (!tx_in_chain(v, tx.id)) out.push_back(tx.id);
            return out;
        }

        // Drains honest buffers into their views. Parties sharing a view but holding
        // different buffers get split onto copies of that view.
        std::vector<std::vector<BlockPtr>> process_buffers() {
            std::vector<std::vector<BlockPtr>> accepted(opt_.params.n);
            struct Member {
                PartyId party;
                std::vector<BlockPtr> buffer;
            };
            std::vector<std::uint32_t> order;
            std::unordered_map<std::uint32_t, std::vector<Member>> by_view;
            for (PartyId i = 0; i < opt_.params.n; ++i) {
                auto buf = net_.take(i);
                if (party_view_[i] == kNoView) continue;
                auto& members = by_view[party_view_[i]];
                if (members.empty()) order.push_back(party_view_[i]);
                members.push_back({i, std::move(buf)});
            }

            auto same = [](const std::vector<BlockPtr>& a, const std::vector<BlockPtr>& b) {
                return std::equal(a.begin(), a.end(), b.begin(), b.end(),
                                  [](const BlockPtr& x, const BlockPtr& y) { return x->id == y->id; });
            };

            for (std::uint32_t vid : order) {
                auto& members = by_view[vid];
                std::vector<std::vector<std::size_t>> classes;
                for (std::size_t k = 0; k < members.size(); ++k) {
                    bool placed = false;
                    for (auto& cls : classes) {
                        if (same(members[cls.front()].buffer, members[k].buffer)) {
                            cls.push_back(k);
                            placed = true;
                            break;
                        }
                    }
                    if (!placed) classes.push_back({k});
                }
                // the class with an empty buffer (or else the first) keeps the original view
                std::size_t keeper = 0;
                for (std::size_t k = 0; k < classes.size(); ++k)
                    if (members[classes[k].front()].buffer.empty()) keeper = k;
                for (std::size_t k = 0; k < classes.size(); ++k) {
                    const auto& buf = members[classes[k].front()].buffer;
                    std::shared_ptr<View> view = views_[vid];
                    if (k != keeper) {
                        auto copy = std::make_shared<View>(*view);
                        copy->id = static_cast<std::uint32_t>(views_.size());
                        views_.push_back(copy);
                        view = copy;
                        for (std::size_t m : classes[k]) party_view_[members[m].party] = view->id;
                    }
                    if (buf.empty()) continue;
                    auto got = view->tree.validate_and_attach(buf);
                    if (got.empty()) continue;
                    view->reselect();
                    for (std::size_t m : classes[k]) accepted[members[m].party] = got;
                }
            }
            refresh_pointers();
            return accepted;
        }

        void step(std::uint64_t r) {
            const auto& P = opt_.params;
            adv_.before_round(context(r, {}), net_);
            trace_.partitioned.push_back(net_.partitioned());

            if (opt_.tx_interval > 0 && r % opt_.tx_interval == 0)
                trace_.transactions.push_back({trace_.transactions.size(), r});

            trace_.union_length_before.push_back(observer_.length());

            // honest mining on the start-of-round heads
            std::vector<BlockPtr> mined;
            std::vector<std::vector<BlockPtr>> outbox(P.n);
            RoundStats stats;
            for (PartyId i = 0; i < P.n; ++i) {
                if (P.is_corrupted(i)) continue;
                const auto ctr = oracle_.first_success(r, i);
                if (!ctr) continue;
                const View& v = *pointers_[i];
                auto payload = payload_for(v);
                auto b = make_block(next_id_++, v.head_id(), {MinerKind::Honest, i}, r, *ctr, payload);
                for (TxId tx : b->payload) tx_blocks_[tx].push_back(b->id);
                trace_.registry.attach(b);
                observer_.tree.attach(b);
                mark_delivered(b->id, r);
                mined.push_back(b);
                outbox[i].push_back(b);
            }
            if (!mined.empty()) observer_.reselect();
            trace_.union_length_after.push_back(observer_.length());

            // corrupted mining, parents chosen by the strategy
            std::uint32_t corrupted = 0;
            const auto start_ctx = context(r, mined);
            for (PartyId i = 0; i < P.n; ++i) {
                if (!P.is_corrupted(i)) continue;
                for (std::uint32_t ctr : oracle_.all_successes(r, i)) {
                    const BlockId parent = adv_.choose_parent(start_ctx, i);
                    auto b = make_block(next_id_++, parent, {MinerKind::Corrupted, i}, r, ctr);
                    trace_.registry.attach(b);
                    adv_.on_mined(start_ctx, b);
                    ++corrupted;
                }
            }

            // end of round, honest part: full trees after a heal, re-broadcasts, new blocks
            std::vector<HonestBroadcast> broadcasts;
            if (net_.take_heal_flag()) {
                std::vector<bool> sent(views_.size(), false);
                for (PartyId i = 0; i < P.n; ++i) {
                    if (party_view_[i] == kNoView || sent[party_view_[i]]) continue;
                    sent[party_view_[i]] = true;
                    const auto& tree = views_[party_view_[i]]->tree;
                    for (BlockTree::Index k = 1; k < tree.size(); ++k) broadcasts.push_back({i, tree.block_ptr(k)});
                }
            }
            for (PartyId i = 0; i < P.n; ++i) {
                for (auto& b : rebroadcast_[i]) broadcasts.push_back({i, std::move(b)});
                rebroadcast_[i].clear();
                for (auto& b : outbox[i]) broadcasts.push_back({i, std::move(b)});
            }
            net_.deliver_honest(r, broadcasts);
            process_buffers();

            // rushing adversary
            auto messages = adv_.act(context(r, mined));
            std::uint32_t released = 0;
            std::vector<BlockPtr> adv_blocks;
            for (const auto& m : messages) {
                if (m.recipients.empty()) continue;
                if (trace_.delivered_round.size() <= m.block->id || trace_.delivered_round[m.block->id] == kNever) {
                    mark_delivered(m.block->id, r);
                    if (m.block->miner.is_corrupted()) ++released;
                }
                adv_blocks.push_back(m.block);
            }
            trace_.adversary_delivered.push_back(!adv_blocks.empty());
            if (!adv_blocks.empty()) {
                net_.deliver_adversary(r, messages);
                if (!observer_.tree.validate_and_attach(adv_blocks).empty()) observer_.reselect();
                auto accepted = process_buffers();
                for (PartyId i = 0; i < P.n; ++i) rebroadcast_[i] = std::move(accepted[i]);
            }

            stats.honest = static_cast<std::uint32_t>(mined.size());
            stats.successful = stats.honest > 0 ? 1 : 0;
            stats.unique = stats.honest == 1 ? 1 : 0;
            stats.corrupted = corrupted;
            stats.released = released;
            trace_.stats.push_back(stats);
            record_snapshots();
        }

        void record_snapshots() {
            std::vector<std::uint32_t> row(opt_.params.n, SimTrace::kNoSnapshot);
            std::unordered_map<std::uint32_t, std::uint32_t> taken;
            for (PartyId i = 0; i < opt_.params.n; ++i) {
                if (party_view_[i] == kNoView) continue;
                auto [it, fresh] = taken.try_emplace(party_view_[i], static_cast<std::uint32_t>(trace_.snapshots.size()));
                if (fresh) {
                    const View& v = *views_[party_view_[i]];
                    trace_.snapshots.push_back({v.id, static_cast<BlockTree::Index>(v.tree.size()), v.head, v.head_id(),
                                                v.length()});
                }
                row[i] = it->second;
            }
            trace_.party_snapshot.push_back(std::move(row));
        }

        const SimOptions& opt_;
        AdversaryStrategy& adv_;
        MiningOracle oracle_;
        DiffusionState net_;
        SimTrace trace_;
        std::vector<std::shared_ptr<View>> views_;
        std::vector<std::uint32_t> party_view_;
        std::vector<const View*> pointers_;
        View observer_;
        std::vector<std::vector<BlockPtr>> rebroadcast_;
        std::unordered_map<TxId, std::vector<BlockId>> tx_blocks_;
        BlockId next_id_{1};
    };

}  // namespace

SimTrace simulate(const SimOptions& options, AdversaryStrategy& adversary) {
    validate(options.params);
    Engine engine(options, adversary);
    return engine.run();
}

SimTrace simulate(const SimOptions& options, const AdversaryConfig& adversary) {
    auto strategy = make_adversary(adversary);
    return simulate(options, *strategy);
}

}  // namespace medium
