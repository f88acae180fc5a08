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

#include "medium/checks.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

#include "medium/csv.hpp"
#include "medium/selection.hpp"

namespace medium {

using Index = BlockTree::Index;

namespace {

    struct Member {
        std::uint32_t snapshot;
        PartyId party;  // lowest honest party holding it
    };

    // Distinct snapshots of one round. Snapshot ids of a round are contiguous, so the
    // first-seen order is also increasing id order.
    std::vector<Member> round_members(const SimTrace& trace, std::uint64_t r) {
        std::vector<Member> out;
        const auto& row = trace.party_snapshot[r - 1];
        for (PartyId i = 0; i < row.size(); ++i) {
            const auto s = row[i];
            if (s == SimTrace::kNoSnapshot) continue;
            if (std::none_of(out.begin(), out.end(), [&](const Member& m) { return m.snapshot == s; }))
                out.push_back({s, i});
        }
        return out;
    }

    std::vector<std::vector<Member>> all_members(const SimTrace& trace) {
        std::vector<std::vector<Member>> out(trace.rounds);
        for (std::uint64_t r = 1; r <= trace.rounds; ++r) out[r - 1] = round_members(trace, r);
        return out;
    }

    Index registry_index(const SimTrace& trace, BlockId id) { return trace.registry.index_of(id); }

    bool held_by_all(const SimTrace& trace, const std::vector<Member>& members, Index block,
                     const std::vector<Index>& heads) {
        return std::all_of(members.begin(), members.end(),
                           [&](const Member& m) { return trace.registry.is_ancestor(block, heads[m.snapshot]); });
    }

    std::vector<Index> snapshot_heads(const SimTrace& trace) {
        std::vector<Index> out(trace.snapshots.size());
        for (std::size_t s = 0; s < out.size(); ++s) out[s] = registry_index(trace, trace.snapshots[s].head_id);
        return out;
    }

    // Deepest qualifying depth on the chain to `head`, searched outward from `hint`.
    std::uint32_t prefix_depth(const BlockTree& tree, Index head, Index limit, const WeightCoefficient& c,
                               const Real& K, std::uint32_t hint) {
        const std::uint32_t top = tree.depth(head);
        auto ok = [&](std::uint32_t d) {
            if (d == 0) return true;
            return weight_at_least(tree.weight_poly(tree.ancestor_at_depth(head, d), limit), d, c, K);
        };
        std::uint32_t lo = 0;
        std::uint32_t hi = top + 1;  // first depth known to fail
        const std::uint32_t start = std::min(hint, top);
        if (ok(start)) {
            lo = start;
            for (std::uint32_t step = 1; lo + step <= top; step *= 2) {
                if (!ok(lo + step)) {
                    hi = lo + step;
                    break;
                }
                lo += step;
            }
        } else {
            hi = start;
            for (std::uint32_t step = 1;; step *= 2) {
                const std::uint32_t probe = hi > step ? hi - step : 0;
                if (ok(probe)) {
                    lo = probe;
                    break;
                }
                hi = probe;
            }
        }
        while (hi - lo > 1) {
            const std::uint32_t mid = lo + (hi - lo) / 2;
            if (ok(mid)) lo = mid;
            else hi = mid;
        }
        return lo;
    }

}  // namespace

// -- typical execution -------------------------------------------------------

WindowConditions window_conditions(const WindowSums& w, std::uint64_t rounds, const Rates& rates, double epsilon) {
    const double s = static_cast<double>(rounds);
    const double lo = 1 - epsilon;
    const double hi = 1 + epsilon;
    auto within = [&](double value, double expected) { return lo * expected < value && value < hi * expected; };
    const double x = static_cast<double>(w.honest);
    const double xs = static_cast<double>(w.successful);
    const double y = static_cast<double>(w.unique);
    const double z = static_cast<double>(w.corrupted);
    const double ez = rates.beta * s;

    WindowConditions out{};
    out[0] = within(x, rates.alpha * s);
    out[1] = within(xs, rates.gamma * s);
    out[2] = lo * rates.gamma_u * s < y;
    // with no corrupted mining power the strict upper bound on Z reads as Z = 0
    out[3] = z < y && (ez > 0 ? z < hi * ez : w.corrupted == 0);
    out[4] = true;
    out[5] = true;
    return out;
}

TypicalReport typical_execution_check(std::span<const RoundStats> stats, const ProtocolParams& params,
                                      std::uint64_t stride) {
    const std::uint64_t T = stats.size();
    const std::uint64_t lambda = params.lambda;
    if (lambda == 0 || T < lambda) throw std::invalid_argument("trace shorter than lambda");
    if (stride == 0) stride = std::max<std::uint64_t>(1, lambda / 4);
    const Rates rates = derived_rates(params);
    const WindowIndex index(stats);

    TypicalReport out;
    auto visit = [&](std::uint64_t a, std::uint64_t e) {
        const auto conds = window_conditions(index.sums(a, e), e - a + 1, rates, params.epsilon);
        ++out.windows;
        bool all = true;
        for (std::size_t k = 0; k < conds.size(); ++k) {
            if (conds[k]) continue;
            all = false;
            if (out.violations[k]++ == 0) out.first_violation[k] = RoundWindow{a, e};
        }
        if (all) ++out.typical_windows;
    };
    for (std::uint64_t a = 1; a + lambda - 1 <= T; a += stride)
        for (std::uint64_t e = a + lambda - 1; e <= T; ++e) visit(a, e);
    for (std::uint64_t a = 1; a + lambda - 1 <= T; ++a)
        if ((a - 1) % stride != 0) visit(a, T);
    return out;
}

// -- prefix table ------------------------------------------------------------

PrefixTable build_prefix_table(const SimTrace& trace, const Real& K) {
    PrefixTable out;
    out.head = snapshot_heads(trace);
    out.prefix.assign(trace.snapshots.size(), 0);
    std::unordered_map<std::uint32_t, std::uint32_t> hint;
    for (std::size_t s = 0; s < trace.snapshots.size(); ++s) {
        const Snapshot& snap = trace.snapshots[s];
        const View& view = trace.view(snap);
        auto [it, fresh] = hint.try_emplace(snap.view, 0);
        const std::uint32_t d = prefix_depth(view.tree, snap.head, snap.arrival_limit, trace.c, K, it->second);
        it->second = d;
        out.prefix[s] = trace.registry.ancestor_at_depth(out.head[s], d);
    }
    return out;
}

// -- chain properties --------------------------------------------------------

std::vector<PrefixViolation> common_prefix_check(const SimTrace& trace, const PrefixTable& table,
                                                 std::uint64_t stride) {
    if (stride == 0) stride = 1;
    const auto members = all_members(trace);
    const BlockTree& reg = trace.registry;
    std::vector<PrefixViolation> out;
    auto compare = [&](std::uint64_t r1, const Member& m1, std::uint64_t r2) {
        const Index p = table.prefix[m1.snapshot];
        for (const Member& m2 : members[r2 - 1]) {
            if (reg.is_ancestor(p, table.head[m2.snapshot])) continue;
            out.push_back({r1, r2, m1.party, m2.party, reg.id(p)});
        }
    };
    const std::uint64_t T = trace.rounds;
    for (std::uint64_t r1 = 1; r1 <= T; ++r1) {
        for (const Member& m1 : members[r1 - 1]) {
            compare(r1, m1, r1);
            for (std::uint64_t r2 = (r1 / stride + 1) * stride; r2 < T; r2 += stride) compare(r1, m1, r2);
            if (T > r1) compare(r1, m1, T);
        }
    }
    return out;
}

std::vector<PrefixViolation> common_prefix_check(const SimTrace& trace, const Real& K, std::uint64_t stride) {
    return common_prefix_check(trace, build_prefix_table(trace, K), stride);
}

std::vector<GrowthViolation> chain_growth_check(const SimTrace& trace, double g, std::uint64_t r0) {
    std::vector<GrowthViolation> out;
    for (std::uint64_t r = std::max<std::uint64_t>(r0, 1); r <= trace.rounds; ++r) {
        const double need = g * static_cast<double>(r);
        for (const Member& m : round_members(trace, r)) {
            const auto len = trace.snapshots[m.snapshot].length;
            if (static_cast<double>(len) < need) out.push_back({r, m.party, len, need});
        }
    }
    return out;
}

SandwichReport sandwich_check(const SimTrace& trace, std::uint64_t stride) {
    if (stride == 0) stride = 1;
    SandwichReport out;
    const auto members = all_members(trace);
    const auto heads = snapshot_heads(trace);
    const WindowIndex index(trace.stats);
    const BlockTree& reg = trace.registry;
    const auto honest = trace.honest_parties();

    for (Index b = 1; b < reg.size(); ++b) {
        const Block& block = reg.block(b);
        const std::uint64_t r0 = block.round_mined;
        if (!block.miner.is_honest() || r0 % stride != 0 || r0 >= trace.rounds) continue;
        if (!held_by_all(trace, members[r0 - 1], b, heads)) continue;
        ++out.tracked_blocks;
        const auto& start = trace.party_snapshot[r0 - 1];
        for (std::uint64_t e = r0 + 1; e <= trace.rounds; ++e) {
            if (!held_by_all(trace, members[e - 1], b, heads)) break;
            const WindowSums w = index.sums(r0 + 1, e);
            const auto lower = static_cast<std::int64_t>(w.unique) - static_cast<std::int64_t>(w.released);
            const auto upper = static_cast<std::int64_t>(w.successful + w.released);
            const auto lower_mined = static_cast<std::int64_t>(w.unique) - static_cast<std::int64_t>(w.corrupted);
            const auto upper_mined = static_cast<std::int64_t>(w.successful + w.corrupted);
            ++out.windows;
            const auto& row = trace.party_snapshot[e - 1];
            for (PartyId i : honest) {
                const std::int64_t gain = static_cast<std::int64_t>(trace.snapshots[row[i]].length) -
                                          static_cast<std::int64_t>(trace.snapshots[start[i]].length);
                if (gain < lower || gain > upper) out.violations.push_back({block.id, r0, e, i, gain, lower, upper});
                if (gain < lower_mined || gain > upper_mined) ++out.mined_reading_violations;
            }
        }
    }
    return out;
}

std::vector<StepViolation> honest_step_check(const SimTrace& trace) {
    std::vector<StepViolation> out;
    for (std::uint64_t r = 2; r <= trace.rounds; ++r) {
        if (trace.stats[r - 1].honest == 0) continue;
        if (trace.partitioned[r - 1] || trace.partitioned[r - 2] || trace.adversary_delivered[r - 2]) continue;
        const auto before = trace.union_length_before[r - 1];
        const auto after = trace.union_length_after[r - 1];
        if (after != before + 1) out.push_back({r, before, after});
    }
    return out;
}

std::vector<WeightGrowthViolation> weight_growth_check(const SimTrace& trace, const Real& tau, std::uint64_t s,
                                                       std::uint64_t stride) {
    if (stride == 0) stride = 1;
    std::vector<WeightGrowthViolation> out;
    if (s == 0) return out;
    const auto members = all_members(trace);
    const auto heads = snapshot_heads(trace);
    const BlockTree& reg = trace.registry;
    const auto honest = trace.honest_parties();

    for (Index b = 1; b < reg.size(); ++b) {
        const Block& block = reg.block(b);
        const std::uint64_t r0 = block.round_mined;
        if (!block.miner.is_honest() || r0 % stride != 0 || r0 + s > trace.rounds) continue;
        bool held = true;
        for (std::uint64_t r = r0; r <= r0 + s && held; ++r) held = held_by_all(trace, members[r - 1], b, heads);
        if (!held) continue;
        std::vector<std::pair<std::uint32_t, std::uint32_t>> seen;
        for (PartyId i : honest) {
            const std::pair pair{trace.party_snapshot[r0 - 1][i], trace.party_snapshot[r0 + s - 1][i]};
            if (std::find(seen.begin(), seen.end(), pair) != seen.end()) continue;
            seen.push_back(pair);
            const Snapshot& a = trace.snapshots[pair.first];
            const Snapshot& z = trace.snapshots[pair.second];
            const auto& ta = trace.view(a).tree;
            const auto& tz = trace.view(z).tree;
            const WeightPoly wa = ta.weight_poly(ta.index_of(block.id), a.arrival_limit);
            const WeightPoly wz = tz.weight_poly(tz.index_of(block.id), z.arrival_limit);
            std::vector<std::uint64_t> diff(wz.coeffs().begin(), wz.coeffs().end());
            bool shrunk = wa.coeffs().size() > diff.size();
            for (std::size_t k = 0; k < wa.coeffs().size() && !shrunk; ++k) {
                if (wa[k] > diff[k]) shrunk = true;
                else diff[k] -= wa[k];
            }
            if (shrunk || !weight_at_least(WeightPoly(std::move(diff)), 0, trace.c, tau))
                out.push_back({block.id, r0 + 1, i});
        }
    }
    return out;
}

FreshBlockReport fresh_block_check(const SimTrace& trace, std::uint64_t u) {
    FreshBlockReport out;
    const std::uint64_t T = trace.rounds;
    out.latency.assign(T, std::nullopt);
    if (T == 0) return out;
    const auto heads = snapshot_heads(trace);
    const BlockTree& reg = trace.registry;
    const Index final_head = registry_index(trace, trace.final_snapshot().head_id);

    // depth of the deepest final-chain block held by every honest chain, per round, then suffix minima
    std::vector<std::uint32_t> held(T + 1, 0);
    for (std::uint64_t r = 1; r <= T; ++r) {
        Index common = final_head;
        for (const Member& m : round_members(trace, r)) common = reg.lca(common, heads[m.snapshot]);
        held[r - 1] = reg.depth(common);
    }
    held[T] = std::numeric_limits<std::uint32_t>::max();
    for (std::uint64_t r = T; r-- > 0;) held[r] = std::min(held[r], held[r + 1]);

    // earliest round from which a block mined at round rb is held for good
    std::vector<std::uint64_t> best(T + 2, kNever);
    for (Index b = final_head; b != reg.root(); b = reg.parent(b)) {
        const Block& block = reg.block(b);
        if (!block.miner.is_honest()) continue;
        const std::uint32_t d = reg.depth(b);
        if (held[T - 1] < d) continue;
        const auto it = std::lower_bound(held.begin(), held.begin() + static_cast<std::ptrdiff_t>(T), d);
        const std::uint64_t stable = static_cast<std::uint64_t>(it - held.begin()) + 1;
        const std::uint64_t rb = block.round_mined;
        best[rb] = std::min(best[rb], std::max(stable, rb));
    }
    for (std::uint64_t r = T; r >= 1; --r) best[r] = std::min(best[r], best[r + 1]);

    for (std::uint64_t a = 1; a <= T; ++a) {
        if (best[a] != kNever) out.latency[a - 1] = best[a] - a + 1;
        if (u == 0 || a + u - 1 > T) continue;
        ++out.checked;
        if (!out.latency[a - 1] || *out.latency[a - 1] > u) {
            if (out.violations++ == 0) out.first_violation = a;
        }
    }
    return out;
}

// -- ledger ------------------------------------------------------------------

LedgerReport ledger_checks(const SimTrace& trace, const PrefixTable& table, std::uint64_t u) {
    LedgerReport out;
    out.transactions = trace.transactions.size();
    if (trace.transactions.empty()) return out;
    const BlockTree& reg = trace.registry;

    struct Slot {
        Index block;
        std::uint32_t slot;
    };
    std::vector<std::vector<Slot>> carriers(trace.transactions.size());
    for (Index b = 1; b < reg.size(); ++b) {
        const auto& payload = reg.block(b).payload;
        for (std::uint32_t k = 0; k < payload.size(); ++k)
            if (payload[k] < carriers.size()) carriers[payload[k]].push_back({b, k});
    }

    struct Position {
        std::uint32_t depth;
        std::uint32_t slot;
        bool operator==(const Position&) const = default;
    };
    auto position = [&](TxId tx, Index prefix) -> std::optional<Position> {
        std::optional<Position> best;
        for (const Slot& s : carriers[tx]) {
            if (!reg.is_ancestor(s.block, prefix)) continue;
            const Position p{reg.depth(s.block), s.slot};
            if (!best || std::tie(p.depth, p.slot) < std::tie(best->depth, best->slot)) best = p;
        }
        return best;
    };

    std::vector<std::optional<Position>> reported(trace.transactions.size());
    for (std::uint64_t r = 1; r <= trace.rounds; ++r) {
        const auto members = round_members(trace, r);
        for (const auto& tx : trace.transactions) {
            if (tx.injected > r) break;
            for (const Member& m : members) {
                const auto p = position(tx.id, table.prefix[m.snapshot]);
                if (!p) continue;
                if (!reported[tx.id]) reported[tx.id] = p;
                else if (!(*reported[tx.id] == *p)) {
                    if (out.persistence_violations++ == 0) out.first_persistence_violation = r;
                }
            }
        }
    }

    for (const auto& tx : trace.transactions) {
        const std::uint64_t due = tx.injected + u;
        if (u == 0 || due > trace.rounds) {
            ++out.liveness_pending;
            continue;
        }
        ++out.liveness_checked;
        const auto members = round_members(trace, due);
        const bool live = std::all_of(members.begin(), members.end(), [&](const Member& m) {
            return position(tx.id, table.prefix[m.snapshot]).has_value();
        });
        if (live) ++out.liveness_met;
        else if (!out.first_liveness_failure) out.first_liveness_failure = due;
    }
    return out;
}

LedgerReport ledger_checks(const SimTrace& trace, const Real& K, std::uint64_t u) {
    return ledger_checks(trace, build_prefix_table(trace, K), u);
}

// -- metrics -----------------------------------------------------------------

ForkDuration fork_duration(const SimTrace& trace) {
    std::uint64_t heal = 0;
    for (std::uint64_t r = 2; r <= trace.rounds; ++r) {
        if (trace.partitioned[r - 2] && !trace.partitioned[r - 1]) {
            heal = r;
            break;
        }
    }
    if (heal == 0) return {};
    const BlockTree& reg = trace.registry;
    for (std::uint64_t r = heal; r <= trace.rounds; ++r) {
        std::optional<Index> agreed;
        bool same = true;
        for (const Member& m : round_members(trace, r)) {
            const Index h = registry_index(trace, trace.snapshots[m.snapshot].head_id);
            const Index root = reg.depth(h) > 0 ? reg.ancestor_at_depth(h, 1) : reg.root();
            if (agreed && *agreed != root) {
                same = false;
                break;
            }
            agreed = root;
        }
        if (same) return {r - heal, true};
    }
    return {trace.rounds - heal + 1, false};
}

ThroughputMetrics throughput_metrics(const SimTrace& trace) {
    ThroughputMetrics out;
    const BlockTree& reg = trace.registry;
    if (trace.rounds > 0) {
        const Index head = registry_index(trace, trace.final_snapshot().head_id);
        std::uint64_t honest = 0;
        for (Index b = head; b != reg.root(); b = reg.parent(b))
            if (reg.block(b).miner.is_honest()) ++honest;
        if (reg.depth(head) > 0) out.honest_fraction = static_cast<double>(honest) / reg.depth(head);
    }

    std::uint64_t successful = 0, unique = 0;
    for (const auto& s : trace.stats) {
        successful += s.successful;
        unique += s.unique;
    }
    if (successful > 0) out.psi_f = 1.0 - static_cast<double>(unique) / static_cast<double>(successful);

    std::uint64_t collisions = 0;
    std::vector<std::uint32_t> depths;
    std::uint64_t round = 0;
    auto close_round = [&] {
        std::sort(depths.begin(), depths.end());
        if (std::adjacent_find(depths.begin(), depths.end()) != depths.end()) ++collisions;
        depths.clear();
    };
    for (Index b = 1; b < reg.size(); ++b) {
        const Block& block = reg.block(b);
        if (block.round_mined != round) {
            close_round();
            round = block.round_mined;
        }
        if (block.miner.is_honest()) depths.push_back(reg.depth(b));
    }
    close_round();
    if (successful > 0) out.psi_collision = static_cast<double>(collisions) / static_cast<double>(successful);

    out.fork_duration = fork_duration(trace);
    return out;
}

Distances distance_metrics(const SimTrace& trace, std::uint64_t round, BlockId block) {
    const auto members = round_members(trace, round);
    if (members.empty()) throw std::logic_error("no honest party");
    Distances out;
    const std::int64_t depth = trace.registry.depth(trace.registry.index_of(block));
    std::int64_t shortest = std::numeric_limits<std::int64_t>::max();
    for (const Member& m : members) shortest = std::min<std::int64_t>(shortest, trace.snapshots[m.snapshot].length);
    out.to_head = shortest - depth;

    const Snapshot& snap = trace.snapshot(round, members.front().party);
    const BlockTree& tree = trace.view(snap).tree;
    const auto start = tree.find(block);
    if (!start || *start >= snap.arrival_limit) return out;
    std::vector<std::pair<Index, std::uint32_t>> stack{{*start, 0}};
    while (!stack.empty()) {
        const auto [node, dist] = stack.back();
        stack.pop_back();
        out.to_leaf = std::max(out.to_leaf, dist);
        for (Index ch : tree.children(node)) {
            if (ch >= snap.arrival_limit) break;
            stack.push_back({ch, dist + 1});
        }
    }
    return out;
}

// -- report ------------------------------------------------------------------

std::string params_digest(const ProtocolParams& params, const WeightCoefficient& c, std::uint64_t seed) {
    const std::string text = "n=" + format_number(std::uint64_t{params.n}) + ";t=" + format_number(std::uint64_t{params.t}) +
                             ";p=" + format_number(params.p) + ";q=" + format_number(std::uint64_t{params.q}) +
                             ";eps=" + format_number(params.epsilon) + ";lambda=" +
                             format_number(std::uint64_t{params.lambda}) + ";c=" + c.label() +
                             ";seed=" + format_number(seed);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out(16, '0');
    for (int k = 15; k >= 0; --k, h >>= 4) out[static_cast<std::size_t>(k)] = kHex[h & 0xF];
    return out;
}

void write_report(std::ostream& out, std::span<const CheckRecord> records) {
    out << "check_name,params_digest,result,first_violation_round,detail\n";
    for (const auto& r : records) {
        out << csv_field(r.check) << ',' << r.params_digest << ',' << (r.pass ? "pass" : "fail") << ',';
        if (r.first_violation_round) out << *r.first_violation_round;
        out << ',' << csv_field(r.detail) << '\n';
    }
}

}  // namespace medium
