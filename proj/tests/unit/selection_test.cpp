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

#include "medium/selection.hpp"

#include <random>

#include <gtest/gtest.h>

#include "medium/errors.hpp"
#include "random_trees.hpp"

namespace medium {
namespace {

BlockPtr blk(BlockId id, BlockId parent) { return make_block(id, parent, {MinerKind::Honest, 0}, id); }

BlockTree build(std::initializer_list<std::pair<BlockId, BlockId>> edges) {
    BlockTree t;
    for (auto [id, parent] : edges) EXPECT_TRUE(t.attach(blk(id, parent)));
    return t;
}

const WeightCoefficient kTwo = WeightCoefficient::rational(2);

TEST(Selection, SingleChild) {
    const BlockTree t = build({{1, 0}});
    EXPECT_EQ(medium_select(t, kTwo).blocks, (std::vector<BlockId>{0, 1}));
    EXPECT_EQ(ghost_select(BlockTree()).blocks, std::vector<BlockId>{0});
    EXPECT_EQ(longest_chain_select(BlockTree()).blocks, std::vector<BlockId>{0});
}

TEST(Selection, ChainAgainstBushOfEqualDepth) {
    // A: 1-2-3 ; B: 4 with children 5, 6 and 5 -> 7
    const BlockTree t = build({{1, 0}, {2, 1}, {3, 2}, {4, 0}, {5, 4}, {6, 4}, {7, 5}});
    EXPECT_EQ(medium_select(t, kTwo).blocks, (std::vector<BlockId>{0, 4, 5, 7}));
    EXPECT_EQ(ghost_select(t).blocks, (std::vector<BlockId>{0, 4, 5, 7}));
    EXPECT_EQ(longest_chain_select(t).blocks, (std::vector<BlockId>{0, 1, 2, 3}));
    EXPECT_EQ(medium_select(t, WeightCoefficient::bitcoin()).blocks, longest_chain_select(t).blocks);
}

TEST(Selection, LongChainAgainstWideBush) {
    // A: 1-2-3-4 ; B: 5 with five children
    const BlockTree t = build({{1, 0}, {2, 1}, {3, 2}, {4, 3}, {5, 0}, {6, 5}, {7, 5}, {8, 5}, {9, 5}, {10, 5}});
    const std::vector<BlockId> a{0, 1, 2, 3, 4};
    EXPECT_EQ(medium_select(t, kTwo).blocks, a);
    EXPECT_EQ(longest_chain_select(t).blocks, a);
    EXPECT_EQ(ghost_select(t).blocks, (std::vector<BlockId>{0, 5, 6}));
    EXPECT_EQ(medium_select(t, WeightCoefficient::ghost()).blocks, ghost_select(t).blocks);
}

TEST(Selection, TieBreaksOnChainLengthThenArrival) {
    // equal GHOST weight: 1 -> {2, 3} versus 4 -> 5 -> 6; the deeper main chain wins
    const BlockTree t = build({{1, 0}, {2, 1}, {3, 1}, {4, 0}, {5, 4}, {6, 5}});
    EXPECT_EQ(ghost_select(t).blocks, (std::vector<BlockId>{0, 4, 5, 6}));
    EXPECT_EQ(medium_select(t, WeightCoefficient::ghost()).blocks, (std::vector<BlockId>{0, 4, 5, 6}));
    // full symmetry: earlier arrival wins
    const BlockTree s = build({{1, 0}, {2, 0}, {3, 2}, {4, 1}});
    EXPECT_EQ(medium_select(s, kTwo).blocks, (std::vector<BlockId>{0, 1, 4}));
    EXPECT_EQ(ghost_select(s).blocks, (std::vector<BlockId>{0, 1, 4}));
    EXPECT_EQ(longest_chain_select(s).blocks, (std::vector<BlockId>{0, 1, 4}));
}

TEST(Selection, AgreesWithExactOraclesOnRandomTrees) {
    std::mt19937_64 rng(3);
    for (int k = 0; k < 150; ++k) {
        const BlockTree t = testing::random_tree(rng, 1 + k % 60);
        EXPECT_EQ(medium_select(t, WeightCoefficient::ghost()).blocks, testing::oracle_select(t, 1).blocks);
        EXPECT_EQ(ghost_select(t).blocks, testing::oracle_select(t, 1).blocks);
        EXPECT_EQ(medium_select(t, kTwo).blocks, testing::oracle_select(t, 2).blocks);
        const mpq_class three_halves(3, 2);
        EXPECT_EQ(medium_select(t, WeightCoefficient::rational(three_halves)).blocks,
                  testing::oracle_select(t, three_halves).blocks);
        EXPECT_EQ(longest_chain_select(t).blocks, testing::oracle_longest(t).blocks);
        EXPECT_EQ(medium_select(t, WeightCoefficient::bitcoin()).blocks, testing::oracle_longest(t).blocks);
    }
}

TEST(Selection, SelectorCacheFollowsGrowingTree) {
    std::mt19937_64 rng(5);
    const BlockTree full = testing::random_tree(rng, 150);
    const auto c = WeightCoefficient::algebraic_root(10001521, 100);
    BlockTree grown;
    ChainSelector sel(c);
    for (BlockTree::Index i = 1; i < full.size(); ++i) {
        grown.attach(full.block_ptr(i));
        EXPECT_EQ(sel.select(grown).blocks, medium_select(grown, c).blocks) << "after " << i << " blocks";
    }
}

TEST(NormalizedWeight, MatchesRecursionAndLeafValue) {
    std::mt19937_64 rng(9);
    const BlockTree t = testing::random_tree(rng, 80);
    const auto c = WeightCoefficient::rational(mpq_class(5, 4));
    const auto rec = testing::recursive_weights(t, c, 128);
    for (BlockTree::Index i = 0; i < t.size(); ++i) {
        const Interval e = evaluate_weight(normalized_tree_weight(t, t.id(i), c), c, 128);
        EXPECT_TRUE(e.overlaps(rec[i]));
        if (t.children(i).empty()) {
            EXPECT_EQ(normalized_tree_weight(t, t.id(i), c).coeffs(), std::vector<std::uint64_t>{1});
        }
    }
    EXPECT_EQ(normalized_tree_weight(t, 0, c), t.weight_poly_of(0));
    EXPECT_THROW((void)normalized_tree_weight(t, 0, WeightCoefficient::bitcoin()), LimitModeError);
}

TEST(NormalizedWeight, ParentOutweighsScaledChild) {
    std::mt19937_64 rng(13);
    const BlockTree t = testing::random_tree(rng, 100);
    const auto c = WeightCoefficient::algebraic_root(10001521, 10);
    for (BlockTree::Index i = 1; i < t.size(); ++i) {
        const Interval parent = evaluate_weight(t.weight_poly(t.parent(i)), c, 128);
        WeightPoly shifted;
        shifted.add_shifted(t.weight_poly(i), 1);
        EXPECT_EQ(compare_weight(t.weight_poly(t.parent(i)), shifted, c, ComparisonMode::Reduced),
                  std::strong_ordering::greater);
        EXPECT_TRUE(parent.hi > evaluate_weight(shifted, c, 128).lo);
    }
}

TEST(KPrefix, ReferenceExamples) {
    const BlockTree t = build({{1, 0}, {2, 1}});
    const Chain chain = t.chain_to(t.index_of(2));
    EXPECT_EQ(k_dominant_prefix(t, chain, kTwo, Real(0.0)).blocks, chain.blocks);
    EXPECT_EQ(k_dominant_prefix(t, chain, kTwo, Real(3.0)).blocks, (std::vector<BlockId>{0, 1}));
    EXPECT_EQ(k_dominant_prefix(t, chain, kTwo, Real(3.5)).blocks, (std::vector<BlockId>{0}));
    EXPECT_EQ(k_dominant_prefix(t, chain, kTwo, Real(100.0)).blocks, (std::vector<BlockId>{0}));
    // absolute weights: G 7, A 2*3 = 6, B 4
    EXPECT_EQ(k_dominant_prefix(t, chain, kTwo, Real(4.0), PrefixWeighting::Absolute).blocks, chain.blocks);
    EXPECT_EQ(k_dominant_prefix(t, chain, kTwo, Real(6.5), PrefixWeighting::Absolute).blocks,
              (std::vector<BlockId>{0}));
}

TEST(KPrefix, PrefixOfInputAndMonotoneInK) {
    std::mt19937_64 rng(17);
    const auto c = WeightCoefficient::algebraic_root(10001521, 100);
    for (int k = 0; k < 30; ++k) {
        const BlockTree t = testing::random_tree(rng, 120);
        const Chain chain = medium_select(t, c);
        Chain previous = chain;
        for (double K : {0.0, 1.0, 2.0, 5.0, 20.0, 80.0, 500.0}) {
            const Chain pre = k_dominant_prefix(t, chain, c, Real(K));
            EXPECT_TRUE(pre.is_prefix_of(chain));
            EXPECT_TRUE(pre.is_prefix_of(previous));
            // linear scan oracle
            std::size_t keep = 0;
            for (std::size_t d = 0; d < chain.blocks.size(); ++d)
                if (evaluate_weight(t.weight_poly_of(chain.blocks[d]), c, 128).midpoint().to_double() >= K) keep = d;
            EXPECT_EQ(pre.blocks.size(), keep + 1) << "K=" << K;
            previous = pre;
        }
    }
}

TEST(WeightAtLeast, GhostAndLimit) {
    EXPECT_TRUE(weight_at_least(WeightPoly({1, 2}), 0, WeightCoefficient::ghost(), Real(3.0)));
    EXPECT_FALSE(weight_at_least(WeightPoly({1, 2}), 0, WeightCoefficient::ghost(), Real(3.5)));
    EXPECT_THROW((void)weight_at_least(WeightPoly({1}), 0, WeightCoefficient::bitcoin(), Real(1.0)), LimitModeError);
}

}  // namespace
}  // namespace medium
