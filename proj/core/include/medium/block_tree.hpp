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
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "medium/block.hpp"
#include "medium/weight.hpp"

namespace medium {

//! One party's view of the mined blocks. Nodes are numbered in arrival order, so a
//! node's index doubles as its arrival sequence number; the genesis block is node 0.
class BlockTree {
  public:
    using Index = std::uint32_t;
    static constexpr Index kNone = std::numeric_limits<Index>::max();
    static constexpr Index kAll = std::numeric_limits<Index>::max();

    using Validator = std::function<bool(const Block&, const BlockTree&)>;

    BlockTree();
    explicit BlockTree(BlockPtr genesis);

    [[nodiscard]] std::size_t size() const noexcept { return nodes_.size(); }
    [[nodiscard]] Index root() const noexcept { return 0; }

    [[nodiscard]] bool contains(BlockId id) const noexcept { return find(id).has_value(); }
    [[nodiscard]] std::optional<Index> find(BlockId id) const noexcept;
    //! Throws UnknownBlockError.
    [[nodiscard]] Index index_of(BlockId id) const;

    [[nodiscard]] const Block& block(Index i) const { return *nodes_[i].block; }
    [[nodiscard]] const BlockPtr& block_ptr(Index i) const { return nodes_[i].block; }
    [[nodiscard]] BlockId id(Index i) const { return nodes_[i].block->id; }
    [[nodiscard]] Index parent(Index i) const { return nodes_[i].parent; }
    [[nodiscard]] std::uint32_t depth(Index i) const { return nodes_[i].depth; }
    [[nodiscard]] std::uint32_t subtree_size(Index i) const { return nodes_[i].subtree_size; }
    //! Longest downward distance from i to a leaf of its subtree.
    [[nodiscard]] std::uint32_t height(Index i) const { return nodes_[i].height; }
    [[nodiscard]] const std::vector<Index>& children(Index i) const { return nodes_[i].children; }
    [[nodiscard]] std::uint32_t max_depth() const { return nodes_[0].height; }

    [[nodiscard]] Index ancestor_at_depth(Index i, std::uint32_t depth) const;
    //! True when a is b or an ancestor of b.
    [[nodiscard]] bool is_ancestor(Index a, Index b) const;
    [[nodiscard]] Index lca(Index a, Index b) const;

    //! Attaches a single block whose parent is present. Returns false for duplicates
    //! and orphans, leaving the tree unchanged.
    bool attach(const BlockPtr& block);

    //! Attaches every incoming block whose ancestry is available and that passes the
    //! validator, iterating to a fixpoint. Returns the accepted blocks in arrival order.
    std::vector<BlockPtr> validate_and_attach(std::span<const BlockPtr> incoming, const Validator& validator = {});

    //! Level counts of the subtree rooted at `root`, restricted to nodes with index < arrival_limit.
    [[nodiscard]] WeightPoly weight_poly(Index root, Index arrival_limit = kAll) const;
    [[nodiscard]] WeightPoly weight_poly_of(BlockId root) const { return weight_poly(index_of(root)); }

    [[nodiscard]] std::vector<Index> path_to(Index head) const;
    [[nodiscard]] Chain chain_to(Index head) const;
    //! Throws UnknownBlockError when the chain does not follow parent links of this tree.
    [[nodiscard]] std::vector<Index> resolve(const Chain& chain) const;

  private:
    struct Node {
        BlockPtr block;
        Index parent{kNone};
        Index skip{kNone};
        std::uint32_t depth{0};
        std::uint32_t subtree_size{1};
        std::uint32_t height{0};
        std::vector<Index> children;
    };

    void add_node(const BlockPtr& block, Index parent);

    std::vector<Node> nodes_;
    std::vector<Index> by_id_;  // dense id -> index map, kNone when absent
};

}  // namespace medium
