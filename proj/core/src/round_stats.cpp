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

#include "medium/round_stats.hpp"

#include <stdexcept>

namespace medium {

RoundStats make_round_stats(std::uint32_t honest_blocks, std::uint32_t corrupted_blocks, std::uint32_t released) {
    return {honest_blocks, honest_blocks > 0 ? 1u : 0u, honest_blocks == 1 ? 1u : 0u, corrupted_blocks, released};
}

WindowIndex::WindowIndex(std::span<const RoundStats> stats) {
    prefix_.reserve(stats.size() + 1);
    prefix_.emplace_back();
    for (const auto& s : stats) {
        WindowSums w = prefix_.back();
        w.honest += s.honest;
        w.successful += s.successful;
        w.unique += s.unique;
        w.corrupted += s.corrupted;
        w.released += s.released;
        prefix_.push_back(w);
    }
}

WindowSums WindowIndex::sums(std::uint64_t first, std::uint64_t last) const {
    if (first < 1 || last < first || last >= prefix_.size()) throw std::out_of_range("window outside trace");
    const auto& a = prefix_[first - 1];
    const auto& b = prefix_[last];
    return {b.honest - a.honest, b.successful - a.successful, b.unique - a.unique, b.corrupted - a.corrupted,
            b.released - a.released};
}

WindowSums window_sums(std::span<const RoundStats> stats, std::uint64_t first, std::uint64_t last) {
    return WindowIndex(stats).sums(first, last);
}

}  // namespace medium
