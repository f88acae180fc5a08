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
#include <iosfwd>
#include <span>
#include <vector>

#include "medium/block.hpp"

namespace medium {

struct HonestBroadcast {
    PartyId sender{0};
    BlockPtr block;
};

struct AdversaryMessage {
    BlockPtr block;
    std::vector<PartyId> recipients;
    bool cross_partition{false};  // required when recipients span several partitions
};

enum class DeliverySource : std::uint8_t { Honest, Adversary };

struct DeliveryEvent {
    std::uint64_t round{0};
    PartyId recipient{0};
    BlockId block{0};
    DeliverySource source{DeliverySource::Honest};
    PartyId sender{0};  // meaningful for honest deliveries
};

//! One line per delivery: `round recipient block_id source`, source `h<sender>` or `adv`.
void write_events(std::ostream& out, std::span<const DeliveryEvent> events);

//! Receive buffers and partition state of the synchronous network.
//!
//! Within a buffer, honest broadcasts come first (ordered by sender index, duplicates
//! dropped), followed by adversarial messages in submission order.
class DiffusionState {
  public:
    explicit DiffusionState(std::uint32_t parties, bool log_events = false);

    [[nodiscard]] std::uint32_t parties() const noexcept { return static_cast<std::uint32_t>(buffers_.size()); }

    //! One label per party; parties with equal labels can talk to each other.
    void set_partition(std::vector<std::uint32_t> labels);
    //! Restores a single partition. The next call to take_heal_flag() returns true,
    //! which tells the node loop to re-broadcast full local trees once.
    void heal();
    [[nodiscard]] bool partitioned() const noexcept { return partitioned_; }
    [[nodiscard]] std::uint32_t label(PartyId party) const { return labels_[party]; }
    [[nodiscard]] const std::vector<std::uint32_t>& labels() const noexcept { return labels_; }
    bool take_heal_flag() noexcept;

    void deliver_honest(std::uint64_t round, std::span<const HonestBroadcast> broadcasts);
    void deliver_adversary(std::uint64_t round, std::span<const AdversaryMessage> messages);
    void end_of_round(std::uint64_t round, std::span<const HonestBroadcast> broadcasts,
                      std::span<const AdversaryMessage> messages);

    [[nodiscard]] const std::vector<BlockPtr>& buffer(PartyId party) const { return buffers_[party]; }
    [[nodiscard]] std::vector<BlockPtr> take(PartyId party);

    [[nodiscard]] const std::vector<DeliveryEvent>& events() const noexcept { return events_; }
    //! One line per delivery: `round recipient block_id source`, source being `h<sender>` or `adv`.
    void write_events(std::ostream& out) const;

  private:
    std::vector<std::vector<BlockPtr>> buffers_;
    std::vector<std::uint32_t> labels_;
    bool partitioned_{false};
    bool heal_pending_{false};
    bool log_events_{false};
    std::vector<DeliveryEvent> events_;
};

}  // namespace medium
