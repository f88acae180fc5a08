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
#include <random>
#include <vector>

#include <gmpxx.h>

#include "medium/block_tree.hpp"
#include "medium/real.hpp"
#include "medium/weight.hpp"

namespace medium::testing {

//! Random tree grown by attaching each new block either to one of the `recent` latest
//! blocks (probability `recent_bias`) or to a uniformly chosen one. Ids follow arrival order.
[[nodiscard]] BlockTree random_tree(std::mt19937_64& rng, std::size_t blocks, double recent_bias = 0.6,
                                    std::size_t recent = 3);

//! The recursion w(B) = c * sum of w over the children of B + 1, evaluated bottom-up with
//! outward rounding; one normalized weight per node.
[[nodiscard]] std::vector<Interval> recursive_weights(const BlockTree& tree, const WeightCoefficient& c,
                                                      mpfr_prec_t bits);

//! Exact weight of T(B) for a rational base.
[[nodiscard]] mpq_class exact_weight(const BlockTree& tree, BlockTree::Index b, const mpq_class& c);

//! Greedy descent on exact rational weights; ties go to the longer resulting chain, then
//! to the earlier arrival.
[[nodiscard]] Chain oracle_select(const BlockTree& tree, const mpq_class& c);

//! Deepest leaf, earliest arrival path among equals.
[[nodiscard]] Chain oracle_longest(const BlockTree& tree);

//! Level counts with degree at most `max_degree` and coefficients at most `max_coeff`.
[[nodiscard]] WeightPoly random_poly(std::mt19937_64& rng, std::size_t max_degree, std::uint64_t max_coeff);

}  // namespace medium::testing
