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

#include "medium/diffusion.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <stdexcept>
#include <unordered_set>

namespace medium {

DiffusionState::DiffusionState(std::uint32_t parties, bool log_events)
    : buffers_(parties), labels_(parties, 0), log_events_(log_events) {}

void DiffusionState::set_partition(std::vector<std::uint32_t> labels) {
    if (labels.size() != buffers_.size()) throw std::invalid_argument("partition must assign every party");
    labels_ = std::move(labels);
    partitioned_ = std::any_of(labels_.begin(), labels_.end(), [&](auto l) { return l != labels_.front(); });
}

void DiffusionState::heal() {
    std::fill(labels_.begin(), labels_.end(), 0);
    partitioned_ = false;
    heal_pending_ = true;
}

bool DiffusionState::take_heal_flag() noexcept { return std::exchange(heal_pending_, false); }

void DiffusionState::deliver_honest(std::uint64_t round, std::span<const HonestBroadcast> broadcasts) {
    std::vector<const HonestBroadcast*> ordered;
    ordered.reserve(broadcasts.size());
    for (const auto& b : broadcasts) ordered.push_back(&b);
    std::stable_sort(ordered.begin(), ordered.end(), [](auto* a, auto* b) { return a->sender < b->sender; });

    // ordered, de-duplicated union per partition label
    std::map<std::uint32_t, std::vector<const HonestBroadcast*>> per_label;
    std::map<std::uint32_t, std::unordered_set<BlockId>> seen;
    for (const auto* b : ordered) {
        const auto l = labels_[b->sender];
        if (seen[l].insert(b->block->id).second) per_label[l].push_back(b);
    }
    for (PartyId r = 0; r < buffers_.size(); ++r) {
        auto it = per_label.find(labels_[r]);
        if (it == per_label.end()) continue;
        auto& buf = buffers_[r];
        for (const auto* b : it->second) {
            buf.push_back(b->block);
            if (log_events_) events_.push_back({round, r, b->block->id, DeliverySource::Honest, b->sender});
        }
    }
}

void DiffusionState::deliver_adversary(std::uint64_t round, std::span<const AdversaryMessage> messages) {
    for (const auto& m : messages) {
        if (!m.cross_partition && !m.recipients.empty()) {
            const auto l = labels_.at(m.recipients.front());
            for (PartyId r : m.recipients)
                if (labels_.at(r) != l) throw std::invalid_argument("adversary message crosses partitions");
        }
        for (PartyId r : m.recipients) {
            auto& buf = buffers_.at(r);
            const bool dup =
                std::any_of(buf.begin(), buf.end(), [&](const BlockPtr& b) { return b->id == m.block->id; });
            if (dup) continue;
            buf.push_back(m.block);
            if (log_events_) events_.push_back({round, r, m.block->id, DeliverySource::Adversary, 0});
        }
    }
}

void DiffusionState::end_of_round(std::uint64_t round, std::span<const HonestBroadcast> broadcasts,
                                  std::span<const AdversaryMessage> messages) {
    deliver_honest(round, broadcasts);
    deliver_adversary(round, messages);
}

std::vector<BlockPtr> DiffusionState::take(PartyId party) { return std::exchange(buffers_.at(party), {}); }

void DiffusionState::write_events(std::ostream& out) const { medium::write_events(out, events_); }

void write_events(std::ostream& out, std::span<const DeliveryEvent> events) {
    for (const auto& e : events) {
        out << e.round << ' ' << e.recipient << ' ' << e.block << ' ';
        if (e.source == DeliverySource::Honest) out << 'h' << e.sender;
        else out << "adv";
        out << '\n';
    }
}

}  // namespace medium
