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
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace medium {

using BlockId = std::uint64_t;
using TxId = std::uint64_t;
using PartyId = std::uint32_t;

inline constexpr BlockId kGenesisId = 0;

enum class MinerKind : std::uint8_t { System, Honest, Corrupted };

struct Miner {
    MinerKind kind{MinerKind::System};
    PartyId party{0};

    [[nodiscard]] bool is_honest() const noexcept { return kind == MinerKind::Honest; }
    [[nodiscard]] bool is_corrupted() const noexcept { return kind == MinerKind::Corrupted; }
    //! "system", "h<party>" or "a<party>".
    [[nodiscard]] std::string label() const;

    friend bool operator==(const Miner&, const Miner&) = default;
};

struct Block {
    BlockId id{kGenesisId};
    std::optional<BlockId> parent;
    Miner miner;
    std::uint64_t round_mined{0};
    std::uint32_t ctr{0};
    std::vector<TxId> payload;
};

using BlockPtr = std::shared_ptr<const Block>;

[[nodiscard]] BlockPtr make_genesis();
[[nodiscard]] BlockPtr make_block(BlockId id, BlockId parent, Miner miner, std::uint64_t round, std::uint32_t ctr = 1,
                                  std::vector<TxId> payload = {});

//! Block ids from genesis to head.
struct Chain {
    std::vector<BlockId> blocks;

    //! Number of blocks after genesis.
    [[nodiscard]] std::size_t length() const noexcept { return blocks.empty() ? 0 : blocks.size() - 1; }
    [[nodiscard]] BlockId head() const { return blocks.back(); }
    [[nodiscard]] bool is_prefix_of(const Chain& other) const;

    friend bool operator==(const Chain&, const Chain&) = default;
};

}  // namespace medium
