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

#include <unordered_map>
#include <vector>

#include "medium/block_tree.hpp"
#include "medium/real.hpp"
#include "medium/weight.hpp"

namespace medium {

//! Greedy heaviest-subtree descent with the weight / main-chain length / arrival
//! tie-break cascade. Keeps a per-fork cache, so an instance must stay bound to a
//! single tree that only grows; copying the tree and the selector together is fine.
class ChainSelector {
  public:
    using Index = BlockTree::Index;

    explicit ChainSelector(WeightCoefficient c, ComparisonMode mode = ComparisonMode::Reduced);

    [[nodiscard]] const WeightCoefficient& coefficient() const noexcept { return c_; }
    [[nodiscard]] ComparisonMode mode() const noexcept { return mode_; }

    [[nodiscard]] Index head(const BlockTree& tree) { return head_from(tree, tree.root()); }
    [[nodiscard]] Index head_from(const BlockTree& tree, Index node);
    [[nodiscard]] Chain select(const BlockTree& tree) { return tree.chain_to(head(tree)); }

    //! Cascade ordering of two sibling subtrees: greater means `a` is preferred
    //! on weight or resulting chain length. Arrival is not consulted.
    [[nodiscard]] std::strong_ordering weigh(const BlockTree& tree, Index a, Index b);

    void reset() { forks_.clear(); }

  private:
    struct ForkEntry {
        Index winner;
        std::vector<std::uint32_t> sizes;
    };

    Index pick_child(const BlockTree& tree, Index node);

    WeightCoefficient c_;
    ComparisonMode mode_;
    std::unordered_map<Index, ForkEntry> forks_;
};

//! Weight ordering of two subtrees from their level counts. Under the longest-chain
//! limit this compares heights.
[[nodiscard]] std::strong_ordering compare_subtree_weight(const WeightPoly& a, const WeightPoly& b,
                                                          const WeightCoefficient& c,
                                                          ComparisonMode mode = ComparisonMode::Reduced);

[[nodiscard]] Chain medium_select(const BlockTree& tree, const WeightCoefficient& c,
                                  ComparisonMode mode = ComparisonMode::Reduced);
[[nodiscard]] Chain ghost_select(const BlockTree& tree);
[[nodiscard]] Chain longest_chain_select(const BlockTree& tree);

//! Level counts of T(B); its value at c is the weight of T(B) divided by c^depth(B).
[[nodiscard]] WeightPoly normalized_tree_weight(const BlockTree& tree, BlockId b, const WeightCoefficient& c);

enum class PrefixWeighting { Normalized, Absolute };

//! True when the weight of the subtree described by `poly`, rooted at depth `depth`, is at least k.
[[nodiscard]] bool weight_at_least(const WeightPoly& poly, std::uint32_t depth, const WeightCoefficient& c,
                                   const Real& k, PrefixWeighting weighting = PrefixWeighting::Normalized);

//! Depth of the last block of the k-dominant prefix of the chain ending at `head`,
//! looking only at nodes with index below `arrival_limit`.
[[nodiscard]] std::uint32_t k_prefix_depth(const BlockTree& tree, BlockTree::Index head, const WeightCoefficient& c,
                                           const Real& k, PrefixWeighting weighting = PrefixWeighting::Normalized,
                                           BlockTree::Index arrival_limit = BlockTree::kAll);

[[nodiscard]] Chain k_dominant_prefix(const BlockTree& tree, const Chain& chain, const WeightCoefficient& c,
                                      const Real& k, PrefixWeighting weighting = PrefixWeighting::Normalized);

}  // namespace medium
