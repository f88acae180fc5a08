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
#include <optional>
#include <span>
#include <vector>

#include "medium/block.hpp"
#include "medium/params.hpp"

namespace medium {

//! SplitMix64 as a UniformRandomBitGenerator.
class SplitMix64 {
  public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t state) noexcept : state_(state) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

  private:
    std::uint64_t state_;
};

//! Independent random stream for one (seed, round, party) triple.
[[nodiscard]] SplitMix64 stream_for(std::uint64_t seed, std::uint64_t round, std::uint64_t party) noexcept;

//! Bernoulli(p) trials of the q-bounded mining model. Streams are keyed by
//! (seed, round, party), so the outcome of one party never depends on another's.
class MiningOracle {
  public:
    MiningOracle(std::uint64_t seed, double p, std::uint32_t q) noexcept : seed_(seed), p_(p), q_(q) {}

    //! Query index of the first success among q trials, if any.
    [[nodiscard]] std::optional<std::uint32_t> first_success(std::uint64_t round, PartyId party) const;
    //! Query indices of every success among q trials.
    [[nodiscard]] std::vector<std::uint32_t> all_successes(std::uint64_t round, PartyId party) const;

    [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }

  private:
    std::uint64_t seed_;
    double p_;
    std::uint32_t q_;
};

//! One round of mining against fixed tips: honest parties stop at their first success,
//! corrupted parties (the last t indices) keep every success. Ids are assigned from
//! `next_id` in party order.
[[nodiscard]] std::vector<Block> mine_round(const ProtocolParams& params, std::uint64_t round,
                                            std::span<const BlockId> tips, const MiningOracle& oracle,
                                            BlockId& next_id);

}  // namespace medium
