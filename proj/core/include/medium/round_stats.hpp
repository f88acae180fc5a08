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
#include <span>
#include <vector>

namespace medium {

//! Mining counters of one round.
struct RoundStats {
    std::uint32_t honest{0};          // X: honest blocks mined
    std::uint32_t successful{0};      // X~: 1 if any honest block was mined
    std::uint32_t unique{0};          // Y: 1 if exactly one honest block was mined
    std::uint32_t corrupted{0};       // Z: corrupted blocks mined
    std::uint32_t released{0};        // corrupted blocks first delivered to an honest party this round

    friend bool operator==(const RoundStats&, const RoundStats&) = default;
};

[[nodiscard]] RoundStats make_round_stats(std::uint32_t honest_blocks, std::uint32_t corrupted_blocks,
                                          std::uint32_t released = 0);

struct WindowSums {
    std::uint64_t honest{0};
    std::uint64_t successful{0};
    std::uint64_t unique{0};
    std::uint64_t corrupted{0};
    std::uint64_t released{0};

    friend bool operator==(const WindowSums&, const WindowSums&) = default;
};

//! Prefix sums over a trace's round statistics for O(1) window queries.
class WindowIndex {
  public:
    explicit WindowIndex(std::span<const RoundStats> stats);

    [[nodiscard]] std::uint64_t rounds() const noexcept { return prefix_.size() - 1; }
    //! Sums over rounds first..last (1-based, inclusive).
    [[nodiscard]] WindowSums sums(std::uint64_t first, std::uint64_t last) const;

  private:
    std::vector<WindowSums> prefix_;
};

[[nodiscard]] WindowSums window_sums(std::span<const RoundStats> stats, std::uint64_t first, std::uint64_t last);

}  // namespace medium
