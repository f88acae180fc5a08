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

#include <iosfwd>
#include <string>

#include "medium/block_tree.hpp"

namespace medium {

//! Writes `id parent depth miner round arrival`, one block per line in arrival order.
//! The genesis parent is written as `-`.
void dump_tree(const BlockTree& tree, std::ostream& out);
[[nodiscard]] std::string dump_tree(const BlockTree& tree);

//! Rebuilds a tree from dump_tree output. Payloads are not part of the format.
[[nodiscard]] BlockTree load_tree(std::istream& in);

[[nodiscard]] Miner parse_miner(const std::string& token);

}  // namespace medium
