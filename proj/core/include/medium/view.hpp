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

#include "medium/block_tree.hpp"
#include "medium/selection.hpp"

namespace medium {

//! A local block tree together with its selector and current main-chain head.
//! Parties that received identical messages share one View.
struct View {
    std::uint32_t id{0};
    BlockTree tree;
    mutable ChainSelector selector;  // only its cache mutates
    BlockTree::Index head{0};

    View(std::uint32_t view_id, const WeightCoefficient& c) : id(view_id), selector(c) {}

    [[nodiscard]] BlockId head_id() const { return tree.id(head); }
    [[nodiscard]] std::uint32_t length() const { return tree.depth(head); }
    void reselect() { head = selector.head(tree); }
};

}  // namespace medium
