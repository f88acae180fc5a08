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

#include "medium/mining.hpp"

#include <random>
#include <stdexcept>

namespace medium {

namespace {

    std::uint64_t mix(std::uint64_t x) noexcept { return SplitMix64(x)(); }

    // failures before the next success
    std::uint64_t gap(SplitMix64& rng, double p) {
        if (p >= 1.0) return 0;
        if (p <= 0.0) return std::numeric_limits<std::uint64_t>::max();
        std::geometric_distribution<std::uint64_t> geo(p);
        return geo(rng);
    }

}  // namespace

SplitMix64 stream_for(std::uint64_t seed, std::uint64_t round, std::uint64_t party) noexcept {
    return SplitMix64(mix(seed ^ mix(round ^ mix(party + 0x632BE59BD9B4E019ULL))));
}

std::optional<std::uint32_t> MiningOracle::first_success(std::uint64_t round, PartyId party) const {
    auto rng = stream_for(seed_, round, party);
    const std::uint64_t k = gap(rng, p_);
    if (k >= q_) return std::nullopt;
    return static_cast<std::uint32_t>(k + 1);
}

std::vector<std::uint32_t> MiningOracle::all_successes(std::uint64_t round, PartyId party) const {
    auto rng = stream_for(seed_, round, party);
    std::vector<std::uint32_t> out;
    std::uint64_t pos = 0;
    while (true) {
        const std::uint64_t k = gap(rng, p_);
        if (k >= q_ - pos) break;
        pos += k + 1;
        out.push_back(static_cast<std::uint32_t>(pos));
        if (pos >= q_) break;
    }
    return out;
}

std::vector<Block> mine_round(const ProtocolParams& params, std::uint64_t round, std::span<const BlockId> tips,
                              const MiningOracle& oracle, BlockId& next_id) {
    if (tips.size() != params.n) throw std::invalid_argument("one tip per party required");
    std::vector<Block> out;
    for (PartyId i = 0; i < params.n; ++i) {
        if (params.is_corrupted(i)) {
            for (std::uint32_t ctr : oracle.all_successes(round, i))
                out.push_back(Block{next_id++, tips[i], {MinerKind::Corrupted, i}, round, ctr, {}});
        } else if (auto ctr = oracle.first_success(round, i)) {
            out.push_back(Block{next_id++, tips[i], {MinerKind::Honest, i}, round, *ctr, {}});
        }
    }
    return out;
}

}  // namespace medium
