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

#include <random>

#include <benchmark/benchmark.h>

#include "medium/selection.hpp"
#include "random_trees.hpp"

namespace medium {
namespace {

BlockTree tree_of(std::size_t blocks) {
    std::mt19937_64 rng(blocks);
    return testing::random_tree(rng, blocks, 0.8);
}

void BM_MediumSelect(benchmark::State& state) {
    const BlockTree tree = tree_of(static_cast<std::size_t>(state.range(0)));
    const auto c = WeightCoefficient::algebraic_root(10001521, 100);
    for (auto _ : state) benchmark::DoNotOptimize(medium_select(tree, c));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_MediumSelect)->RangeMultiplier(4)->Range(16, 4096)->Complexity();

void BM_GhostSelect(benchmark::State& state) {
    const BlockTree tree = tree_of(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(ghost_select(tree));
}
BENCHMARK(BM_GhostSelect)->RangeMultiplier(4)->Range(16, 4096);

void BM_IncrementalHead(benchmark::State& state) {
    const BlockTree full = tree_of(static_cast<std::size_t>(state.range(0)));
    const auto c = WeightCoefficient::algebraic_root(10001521, 100);
    for (auto _ : state) {
        BlockTree tree(full.block_ptr(0));
        ChainSelector selector(c);
        for (BlockTree::Index i = 1; i < full.size(); ++i) {
            tree.attach(full.block_ptr(i));
            benchmark::DoNotOptimize(selector.head(tree));
        }
    }
}
BENCHMARK(BM_IncrementalHead)->Arg(256)->Arg(1024);

}  // namespace
}  // namespace medium
