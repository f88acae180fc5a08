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

#include "medium/tree_io.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include "medium/errors.hpp"

namespace medium {

void dump_tree(const BlockTree& tree, std::ostream& out) {
    for (BlockTree::Index i = 0; i < tree.size(); ++i) {
        const Block& b = tree.block(i);
        out << b.id << ' ';
        if (b.parent) out << *b.parent;
        else out << '-';
        out << ' ' << tree.depth(i) << ' ' << b.miner.label() << ' ' << b.round_mined << ' ' << i << '\n';
    }
}

std::string dump_tree(const BlockTree& tree) {
    std::ostringstream os;
    dump_tree(tree, os);
    return os.str();
}

Miner parse_miner(const std::string& token) {
    if (token == "system") return {};
    if (token.size() >= 2 && (token[0] == 'h' || token[0] == 'a')) {
        const auto party = static_cast<PartyId>(std::stoul(token.substr(1)));
        return {token[0] == 'h' ? MinerKind::Honest : MinerKind::Corrupted, party};
    }
    throw ConfigError("bad miner token: " + token);
}

BlockTree load_tree(std::istream& in) {
    std::string line;
    std::optional<BlockTree> tree;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ls(line);
        BlockId id{};
        std::string parent, miner;
        std::uint64_t depth{}, round{}, arrival{};
        if (!(ls >> id >> parent >> depth >> miner >> round >> arrival))
            throw ConfigError("malformed tree line " + std::to_string(lineno));
        Block b;
        b.id = id;
        b.miner = parse_miner(miner);
        b.round_mined = round;
        if (parent != "-") b.parent = std::stoull(parent);
        auto ptr = std::make_shared<const Block>(std::move(b));
        if (!tree) {
            tree.emplace(ptr);
            continue;
        }
        if (!tree->attach(ptr)) throw ConfigError("cannot attach block on line " + std::to_string(lineno));
    }
    if (!tree) throw ConfigError("empty tree dump");
    return std::move(*tree);
}

}  // namespace medium
