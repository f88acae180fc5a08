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

#include <algorithm>

#include "medium/errors.hpp"

namespace medium {

using Index = BlockTree::Index;

ChainSelector::ChainSelector(WeightCoefficient c, ComparisonMode mode) : c_(std::move(c)), mode_(mode) {}

Index ChainSelector::head_from(const BlockTree& tree, Index node) {
    while (!tree.children(node).empty()) node = pick_child(tree, node);
    return node;
}

std::strong_ordering ChainSelector::weigh(const BlockTree& tree, Index a, Index b) {
    std::strong_ordering w = std::strong_ordering::equal;
    switch (c_.kind()) {
    case CoefficientKind::GhostOne: w = tree.subtree_size(a) <=> tree.subtree_size(b); break;
    case CoefficientKind::BitcoinLimit: w = tree.height(a) <=> tree.height(b); break;
    default: w = compare_weight(tree.weight_poly(a), tree.weight_poly(b), c_, mode_); break;
    }
    if (w != 0) return w;
    return tree.depth(head_from(tree, a)) <=> tree.depth(head_from(tree, b));
}

Index ChainSelector::pick_child(const BlockTree& tree, Index node) {
    const auto& ch = tree.children(node);
    if (ch.size() == 1) return ch.front();

    auto it = forks_.find(node);
    if (it != forks_.end() && it->second.sizes.size() == ch.size()) {
        bool valid = true;
        for (std::size_t k = 0; k < ch.size() && valid; ++k)
            valid = ch[k] == it->second.winner || it->second.sizes[k] == tree.subtree_size(ch[k]);
        if (valid) return it->second.winner;
    }

    Index best = ch.front();
    const bool by_poly = c_.kind() == CoefficientKind::AlgebraicRoot || c_.kind() == CoefficientKind::Rational;
    if (by_poly) {
        WeightPoly best_poly = tree.weight_poly(best);
        for (std::size_t k = 1; k < ch.size(); ++k) {
            WeightPoly poly = tree.weight_poly(ch[k]);
            auto w = compare_weight(poly, best_poly, c_, mode_);
            if (w == 0) w = tree.depth(head_from(tree, ch[k])) <=> tree.depth(head_from(tree, best));
            if (w > 0) {
                best = ch[k];
                best_poly = std::move(poly);
            }
        }
    } else {
        for (std::size_t k = 1; k < ch.size(); ++k)
            if (weigh(tree, ch[k], best) > 0) best = ch[k];
    }

    ForkEntry entry{best, {}};
    entry.sizes.reserve(ch.size());
    for (Index c : ch) entry.sizes.push_back(tree.subtree_size(c));
    forks_[node] = std::move(entry);
    return best;
}

std::strong_ordering compare_subtree_weight(const WeightPoly& a, const WeightPoly& b, const WeightCoefficient& c,
                                            ComparisonMode mode) {
    switch (c.kind()) {
    case CoefficientKind::GhostOne: return a.total() <=> b.total();
    case CoefficientKind::BitcoinLimit: return a.degree() <=> b.degree();
    default: return compare_weight(a, b, c, mode);
    }
}

Chain medium_select(const BlockTree& tree, const WeightCoefficient& c, ComparisonMode mode) {
    ChainSelector sel(c, mode);
    return sel.select(tree);
}

Chain ghost_select(const BlockTree& tree) {
    // bottom-up: children always carry larger indices than their parent
    const std::size_t n = tree.size();
    std::vector<std::uint64_t> count(n, 1);
    std::vector<Index> head(n);
    for (std::size_t i = n; i-- > 0;) {
        const auto idx = static_cast<Index>(i);
        head[i] = idx;
        Index best = BlockTree::kNone;
        for (Index c : tree.children(idx)) {
            count[i] += count[c];
            if (best == BlockTree::kNone || count[c] > count[best] ||
                (count[c] == count[best] && tree.depth(head[c]) > tree.depth(head[best])))
                best = c;
        }
        if (best != BlockTree::kNone) head[i] = head[best];
    }
    return tree.chain_to(head[tree.root()]);
}

Chain longest_chain_select(const BlockTree& tree) {
    std::uint32_t deepest = 0;
    for (Index i = 0; i < tree.size(); ++i) deepest = std::max(deepest, tree.depth(i));
    std::vector<Index> best;
    for (Index i = 0; i < tree.size(); ++i) {
        if (tree.depth(i) != deepest) continue;
        auto path = tree.path_to(i);
        if (best.empty() || path < best) best = std::move(path);
    }
    return tree.chain_to(best.back());
}

WeightPoly normalized_tree_weight(const BlockTree& tree, BlockId b, const WeightCoefficient& c) {
    if (c.is_limit()) throw LimitModeError("longest-chain limit has no numeric weight");
    return tree.weight_poly(tree.index_of(b));
}

bool weight_at_least(const WeightPoly& poly, std::uint32_t depth, const WeightCoefficient& c, const Real& k,
                     PrefixWeighting weighting) {
    if (c.is_limit()) throw LimitModeError("longest-chain limit has no numeric weight");
    if (c.kind() == CoefficientKind::GhostOne) return Real(mpz_class(poly.total()), k.precision()) >= k;
    constexpr mpfr_prec_t kCap = 2048;
    for (mpfr_prec_t bits = c.precision_hint();; bits *= 2) {
        Interval w = evaluate_weight(poly, c, bits);
        if (weighting == PrefixWeighting::Absolute && depth > 0) {
            const Interval cb = c.enclose(bits);
            Real scale(bits);
            mpfr_pow_ui(scale.get(), cb.lo.get(), depth, MPFR_RNDD);
            mpfr_mul(w.lo.get(), w.lo.get(), scale.get(), MPFR_RNDD);
            mpfr_pow_ui(scale.get(), cb.hi.get(), depth, MPFR_RNDU);
            mpfr_mul(w.hi.get(), w.hi.get(), scale.get(), MPFR_RNDU);
        }
        if (w.lo >= k) return true;
        if (w.hi < k) return false;
        if (bits >= kCap) return w.midpoint() >= k;
    }
}

std::uint32_t k_prefix_depth(const BlockTree& tree, Index head, const WeightCoefficient& c, const Real& k,
                             PrefixWeighting weighting, Index arrival_limit) {
    auto qualifies = [&](std::uint32_t d) {
        const Index b = tree.ancestor_at_depth(head, d);
        return weight_at_least(tree.weight_poly(b, arrival_limit), d, c, k, weighting);
    };
    // the qualifying depths form a prefix; gallop up from the head, then bisect
    const std::uint32_t top = tree.depth(head);
    std::uint32_t fail = top;
    if (qualifies(top)) return top;
    std::uint32_t step = 1;
    std::uint32_t ok = 0;
    bool found = false;
    while (fail > 0) {
        const std::uint32_t probe = fail > step ? fail - step : 0;
        if (qualifies(probe)) {
            ok = probe;
            found = true;
            break;
        }
        fail = probe;
        step *= 2;
    }
    if (!found) return 0;
    while (fail - ok > 1) {
        const std::uint32_t mid = ok + (fail - ok) / 2;
        if (qualifies(mid)) ok = mid;
        else fail = mid;
    }
    return ok;
}

Chain k_dominant_prefix(const BlockTree& tree, const Chain& chain, const WeightCoefficient& c, const Real& k,
                        PrefixWeighting weighting) {
    const auto path = tree.resolve(chain);
    const std::uint32_t d = k_prefix_depth(tree, path.back(), c, k, weighting);
    Chain out;
    out.blocks.assign(chain.blocks.begin(), chain.blocks.begin() + d + 1);
    return out;
}

}  // namespace medium
