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

#include "medium/block_tree.hpp"

#include <algorithm>

#include "medium/errors.hpp"

namespace medium {

namespace {

    constexpr BlockId kMaxDenseId = BlockId{1} << 31;

    std::uint32_t invert_lowest_one(std::uint32_t n) { return n & (n - 1); }

    // Same skip-list shape as Bitcoin Core's CBlockIndex::GetSkipHeight.
    std::uint32_t skip_depth(std::uint32_t depth) {
        if (depth < 2) return 0;
        return (depth & 1) ? invert_lowest_one(invert_lowest_one(depth - 1)) + 1 : invert_lowest_one(depth);
    }

}  // namespace

std::string Miner::label() const {
    switch (kind) {
    case MinerKind::System: return "system";
    case MinerKind::Honest: return "h" + std::to_string(party);
    case MinerKind::Corrupted: return "a" + std::to_string(party);
    }
    return {};
}

BlockPtr make_genesis() { return std::make_shared<const Block>(); }

BlockPtr make_block(BlockId id, BlockId parent, Miner miner, std::uint64_t round, std::uint32_t ctr,
                    std::vector<TxId> payload) {
    return std::make_shared<const Block>(Block{id, parent, miner, round, ctr, std::move(payload)});
}

bool Chain::is_prefix_of(const Chain& other) const {
    return blocks.size() <= other.blocks.size() && std::equal(blocks.begin(), blocks.end(), other.blocks.begin());
}

BlockTree::BlockTree() : BlockTree(make_genesis()) {}

BlockTree::BlockTree(BlockPtr genesis) {
    if (!genesis || genesis->parent) throw std::invalid_argument("genesis block must not have a parent");
    add_node(genesis, kNone);
}

std::optional<BlockTree::Index> BlockTree::find(BlockId id) const noexcept {
    if (id >= by_id_.size() || by_id_[id] == kNone) return std::nullopt;
    return by_id_[id];
}

BlockTree::Index BlockTree::index_of(BlockId id) const {
    if (auto i = find(id)) return *i;
    throw UnknownBlockError("unknown block id " + std::to_string(id));
}

BlockTree::Index BlockTree::ancestor_at_depth(Index i, std::uint32_t target) const {
    if (target > nodes_[i].depth) return kNone;
    Index walk = i;
    std::uint32_t d = nodes_[i].depth;
    while (d > target) {
        const std::int64_t sd = skip_depth(d);
        const std::int64_t sd_prev = skip_depth(d - 1);
        const std::int64_t t = target;
        const Node& node = nodes_[walk];
        if (node.skip != kNone && (sd == t || (sd > t && !(sd_prev < sd - 2 && sd_prev >= t)))) {
            walk = node.skip;
            d = static_cast<std::uint32_t>(sd);
        } else {
            walk = node.parent;
            --d;
        }
    }
    return walk;
}

bool BlockTree::is_ancestor(Index a, Index b) const {
    if (nodes_[a].depth > nodes_[b].depth) return false;
    return ancestor_at_depth(b, nodes_[a].depth) == a;
}

BlockTree::Index BlockTree::lca(Index a, Index b) const {
    if (nodes_[a].depth > nodes_[b].depth) a = ancestor_at_depth(a, nodes_[b].depth);
    else if (nodes_[b].depth > nodes_[a].depth) b = ancestor_at_depth(b, nodes_[a].depth);
    if (a == b) return a;
    // binary search on depth for the first common ancestor
    std::uint32_t lo = 0, hi = nodes_[a].depth;
    while (lo < hi) {
        const std::uint32_t mid = lo + (hi - lo + 1) / 2;
        if (ancestor_at_depth(a, mid) == ancestor_at_depth(b, mid)) lo = mid;
        else hi = mid - 1;
    }
    return ancestor_at_depth(a, lo);
}

void BlockTree::add_node(const BlockPtr& block, Index parent) {
    if (block->id >= kMaxDenseId) throw std::invalid_argument("block id out of range");
    const auto idx = static_cast<Index>(nodes_.size());
    Node node;
    node.block = block;
    node.parent = parent;
    if (parent != kNone) {
        node.depth = nodes_[parent].depth + 1;
        node.skip = ancestor_at_depth(parent, skip_depth(node.depth));
    }
    const std::uint32_t depth = node.depth;
    nodes_.push_back(std::move(node));
    if (by_id_.size() <= block->id) by_id_.resize(block->id + 1, kNone);
    by_id_[block->id] = idx;

    if (parent == kNone) return;
    nodes_[parent].children.push_back(idx);
    bool height_open = true;
    for (Index a = parent; a != kNone; a = nodes_[a].parent) {
        Node& anc = nodes_[a];
        ++anc.subtree_size;
        if (height_open) {
            const std::uint32_t h = depth - anc.depth;
            if (h > anc.height) anc.height = h;
            else height_open = false;
        }
    }
}

bool BlockTree::attach(const BlockPtr& block) {
    if (!block || !block->parent || contains(block->id)) return false;
    const auto p = find(*block->parent);
    if (!p) return false;
    add_node(block, *p);
    return true;
}

std::vector<BlockPtr> BlockTree::validate_and_attach(std::span<const BlockPtr> incoming, const Validator& validator) {
    std::vector<BlockPtr> accepted;
    std::vector<BlockPtr> pending;
    pending.reserve(incoming.size());
    for (const auto& b : incoming)
        if (b && b->parent) pending.push_back(b);

    bool progress = true;
    while (progress && !pending.empty()) {
        progress = false;
        std::vector<BlockPtr> next;
        for (auto& b : pending) {
            if (contains(b->id)) continue;
            if (!contains(*b->parent)) {
                next.push_back(std::move(b));
                continue;
            }
            if (validator && !validator(*b, *this)) continue;
            attach(b);
            accepted.push_back(b);
            progress = true;
        }
        pending = std::move(next);
    }
    return accepted;
}

WeightPoly BlockTree::weight_poly(Index root, Index arrival_limit) const {
    if (root >= nodes_.size()) throw UnknownBlockError("unknown node index " + std::to_string(root));
    if (root >= arrival_limit) return {};
    std::vector<std::uint64_t> levels(nodes_[root].height + 1, 0);
    std::vector<Index> stack{root};
    const std::uint32_t base = nodes_[root].depth;
    while (!stack.empty()) {
        const Index i = stack.back();
        stack.pop_back();
        ++levels[nodes_[i].depth - base];
        for (Index c : nodes_[i].children) {
            if (c >= arrival_limit) break;
            stack.push_back(c);
        }
    }
    return WeightPoly(std::move(levels));
}

std::vector<BlockTree::Index> BlockTree::path_to(Index head) const {
    std::vector<Index> path(nodes_[head].depth + 1);
    for (Index i = head; i != kNone; i = nodes_[i].parent) path[nodes_[i].depth] = i;
    return path;
}

Chain BlockTree::chain_to(Index head) const {
    Chain c;
    c.blocks.resize(nodes_[head].depth + 1);
    for (Index i = head; i != kNone; i = nodes_[i].parent) c.blocks[nodes_[i].depth] = nodes_[i].block->id;
    return c;
}

std::vector<BlockTree::Index> BlockTree::resolve(const Chain& chain) const {
    std::vector<Index> out;
    out.reserve(chain.blocks.size());
    for (std::size_t k = 0; k < chain.blocks.size(); ++k) {
        const Index i = index_of(chain.blocks[k]);
        if ((k == 0 && i != root()) || (k > 0 && nodes_[i].parent != out.back()))
            throw UnknownBlockError("chain does not follow the tree at position " + std::to_string(k));
        out.push_back(i);
    }
    if (out.empty()) throw UnknownBlockError("empty chain");
    return out;
}

}  // namespace medium
