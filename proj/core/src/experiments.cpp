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

#include "medium/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

#include "medium/csv.hpp"
#include "medium/mining.hpp"

namespace medium {

std::uint64_t repetition_seed(std::uint64_t base, std::uint64_t rep) noexcept {
    return SplitMix64(base ^ (0xA0761D6478BD642FULL * (rep + 1)))();
}

namespace {

    double c_value(const WeightCoefficient& c) { return c.approx(); }

    struct RowSink {
        std::vector<ResultRow>& rows;
        std::string experiment;
        const WeightCoefficient& c;
        double var;
        std::uint64_t seed;

        void operator()(const std::string& metric, double value) const {
            rows.push_back({experiment, protocol_label(c), format_number(c_value(c)), var, seed, metric, value});
        }
    };

    SimOptions options_for(const ExperimentConfig& config, const ProtocolParams& params, const WeightCoefficient& c,
                           std::uint64_t seed) {
        SimOptions o;
        o.params = params;
        o.c = c;
        o.seed = seed;
        o.rounds = config.rounds;
        o.tx_interval = config.tx_interval;
        return o;
    }

    std::uint64_t lambda_stride(const ProtocolParams& params) { return std::max<std::uint64_t>(1, params.lambda / 4); }

}  // namespace

std::vector<ResultRow> run_single(const ExperimentConfig& config) {
    config.validate();
    std::vector<ResultRow> rows;
    for (const auto& c : config.protocols) {
        for (std::uint64_t rep = 0; rep < config.repetitions; ++rep) {
            const std::uint64_t seed = repetition_seed(config.seed, rep);
            const auto trace = simulate(options_for(config, config.params, c, seed), config.adversary);
            const auto m = throughput_metrics(trace);
            std::uint64_t honest = 0, corrupted = 0, released = 0;
            for (const auto& s : trace.stats) {
                honest += s.honest;
                corrupted += s.corrupted;
                released += s.released;
            }
            const RowSink emit{rows, "single", c, 0.0, seed};
            emit("rounds", static_cast<double>(trace.rounds));
            emit("chain_length", trace.final_snapshot().length);
            emit("honest_fraction", m.honest_fraction);
            emit("psi_f", m.psi_f);
            emit("psi_collision", m.psi_collision);
            emit("fork_duration", static_cast<double>(m.fork_duration.rounds));
            emit("honest_blocks", static_cast<double>(honest));
            emit("corrupted_blocks", static_cast<double>(corrupted));
            emit("released_blocks", static_cast<double>(released));
        }
    }
    sort_rows(rows);
    return rows;
}

std::vector<ResultRow> run_throughput_sweep(const ExperimentConfig& config) {
    config.validate();
    std::vector<ResultRow> rows;
    const auto& base = config.params;
    const double npq = static_cast<double>(base.n) * base.p * base.q;
    for (std::uint32_t t : config.t_values) {
        ProtocolParams params = base;
        params.t = t;
        const double var = static_cast<double>(t) / base.n;
        for (const auto& c : config.protocols) {
            if (std::abs(npq - 1.0) > 1e-9) RowSink{rows, "throughput", c, var, 0}("warning_npq", npq);
            for (std::uint64_t rep = 0; rep < config.repetitions; ++rep) {
                const std::uint64_t seed = repetition_seed(config.seed, rep);
                const auto trace = simulate(options_for(config, params, c, seed), config.adversary);
                const auto m = throughput_metrics(trace);
                const RowSink emit{rows, "throughput", c, var, seed};
                emit("honest_fraction", m.honest_fraction);
                emit("psi_f", m.psi_f);
                emit("psi_collision", m.psi_collision);
                emit("chain_length", trace.final_snapshot().length);
            }
        }
    }
    sort_rows(rows);
    return rows;
}

std::vector<ResultRow> run_balance_sweep(const ExperimentConfig& config) {
    config.validate();
    std::vector<ResultRow> rows;
    for (double pqn : config.pqn_values) {
        ProtocolParams params = config.params;
        params.p = pqn / (static_cast<double>(params.n) * params.q);
        for (const auto& c : config.protocols) {
            const auto tau_bound = balance_bound(0, params, c, config.adversary.tau);
            for (std::uint64_t rep = 0; rep < config.repetitions; ++rep) {
                const std::uint64_t seed = repetition_seed(config.seed, rep);
                BalanceAdversary adversary(config.adversary.tau);
                auto opts = options_for(config, params, c, seed);
                opts.rounds = std::max(config.rounds, config.adversary.tau + params.lambda);
                opts.min_rounds = config.adversary.tau + params.lambda;
                const auto trace = simulate(opts, adversary);
                const auto duration = fork_duration(trace);
                const auto bound = balance_bound(static_cast<double>(adversary.bank_at_heal()), params, c);
                const bool typical = typical_execution_check(trace.stats, params).typical();
                const RowSink emit{rows, "balance", c, pqn, seed};
                emit("fork_duration", static_cast<double>(duration.rounds));
                emit("resolved", duration.resolved ? 1.0 : 0.0);
                emit("bank_at_heal", static_cast<double>(adversary.bank_at_heal()));
                emit("released", static_cast<double>(adversary.released()));
                emit("bound_rounds", static_cast<double>(bound.rounds));
                emit("bound_rounds_tau", static_cast<double>(tau_bound.rounds_tau));
                emit("typical", typical ? 1.0 : 0.0);
            }
        }
    }
    sort_rows(rows);
    return rows;
}

std::vector<ResultRow> params_report(const ExperimentConfig& config) {
    config.validate();
    std::vector<ResultRow> rows;
    const auto& P = config.params;
    const auto rates = derived_rates(P);
    for (const auto& c : config.protocols) {
        const RowSink emit{rows, "params", c, 0.0, 0};
        emit("alpha", rates.alpha);
        emit("beta", rates.beta);
        emit("gamma", rates.gamma);
        emit("gamma_u", rates.gamma_u);
        emit("f", rates.f);
        emit("g", rates.growth(P.epsilon));
        emit("balance_bound_rounds_tau", static_cast<double>(balance_bound(0, P, c, config.adversary.tau).rounds_tau));
        if (c.is_limit()) continue;
        const auto d = derive_params(P, c);
        emit("K", d.cap.K.to_double());
        emit("K_terms", static_cast<double>(d.cap.terms));
        emit("K_threshold", static_cast<double>(d.cap.threshold));
        emit("R", static_cast<double>(d.fresh.R));
        emit("R_statement", static_cast<double>(d.fresh.R_statement));
        emit("R_proof", static_cast<double>(d.fresh.R_proof));
        emit("R_hat", static_cast<double>(d.fresh.R_hat));
        emit("u", d.fresh.u.to_double());
        emit("tau_growth", d.tau_growth.to_double());
    }
    return rows;
}

PropertyChecks run_property_checks(const SimTrace& trace, const CheckOptions& options) {
    const auto& P = trace.params;
    const std::uint64_t stride = options.sample_stride ? options.sample_stride : lambda_stride(P);
    PropertyChecks out;
    out.g = derived_rates(P).growth(P.epsilon);
    if (trace.rounds >= P.lambda) out.typical = typical_execution_check(trace.stats, P, options.window_stride);
    out.sandwich = sandwich_check(trace, stride);
    out.growth = chain_growth_check(trace, out.g, P.lambda);
    out.steps = honest_step_check(trace);
    if (!trace.c.is_limit()) {
        out.derived = derive_params(P, trace.c);
        const auto table = build_prefix_table(trace, out.derived->cap.K);
        out.prefix = common_prefix_check(trace, table, stride);
        out.weight_growth = weight_growth_check(trace, out.derived->tau_growth, P.lambda, stride);
        out.fresh = fresh_block_check(trace, out.derived->fresh.u_rounds);
        out.ledger = ledger_checks(trace, table, out.derived->fresh.u_rounds);
    }
    return out;
}

std::vector<CheckRecord> to_records(const PropertyChecks& k, const std::string& digest) {
    std::vector<CheckRecord> out;
    auto add = [&](std::string name, bool pass, std::optional<std::uint64_t> first, std::string detail) {
        out.push_back({std::move(name), digest, pass, first, std::move(detail)});
    };
    {
        std::optional<std::uint64_t> first;
        for (const auto& w : k.typical.first_violation)
            if (w && (!first || w->first < *first)) first = w->first;
        add("typical_execution", k.typical.typical(), first,
            "windows=" + format_number(k.typical.windows) + " typical=" + format_number(k.typical.typical_windows) +
                " conditions5,6=structural");
    }
    add("length_sandwich", k.sandwich.violations.empty(),
        k.sandwich.violations.empty() ? std::nullopt : std::optional(k.sandwich.violations.front().window_end),
        "tracked=" + format_number(k.sandwich.tracked_blocks) + " windows=" + format_number(k.sandwich.windows) +
            " mined_reading_violations=" + format_number(k.sandwich.mined_reading_violations));
    add("chain_growth", k.growth.empty(), k.growth.empty() ? std::nullopt : std::optional(k.growth.front().round),
        "g=" + format_number(k.g));
    add("honest_step", k.steps.empty(), k.steps.empty() ? std::nullopt : std::optional(k.steps.front().round),
        "violations=" + format_number(std::uint64_t{k.steps.size()}));
    if (!k.derived) return out;
    add("common_prefix", k.prefix.empty(), k.prefix.empty() ? std::nullopt : std::optional(k.prefix.front().late_round),
        "K=" + k.derived->cap.K.to_string(10) + " violations=" + format_number(std::uint64_t{k.prefix.size()}));
    add("weight_growth", k.weight_growth.empty(),
        k.weight_growth.empty() ? std::nullopt : std::optional(k.weight_growth.front().window_start),
        "tau=" + k.derived->tau_growth.to_string(10));
    add("fresh_block", k.fresh.violations == 0, k.fresh.first_violation,
        "u=" + format_number(k.derived->fresh.u_rounds) + " checked=" + format_number(k.fresh.checked));
    add("persistence", k.ledger.persistence_violations == 0, k.ledger.first_persistence_violation,
        "transactions=" + format_number(k.ledger.transactions));
    add("liveness", k.ledger.liveness_met == k.ledger.liveness_checked, k.ledger.first_liveness_failure,
        "checked=" + format_number(k.ledger.liveness_checked) + " pending=" + format_number(k.ledger.liveness_pending));
    return out;
}

std::vector<CheckRecord> run_check_campaign(const ExperimentConfig& config) {
    config.validate();
    std::vector<CheckRecord> out;
    for (const auto& c : config.protocols) {
        for (std::uint64_t rep = 0; rep < config.repetitions; ++rep) {
            const std::uint64_t seed = repetition_seed(config.seed, rep);
            const auto trace = simulate(options_for(config, config.params, c, seed), config.adversary);
            auto records = to_records(run_property_checks(trace), params_digest(config.params, c, seed));
            out.insert(out.end(), records.begin(), records.end());
        }
    }
    return out;
}

std::vector<ResultRow> run_experiment(const ExperimentConfig& config) {
    switch (config.kind) {
    case ExperimentKind::Single: return run_single(config);
    case ExperimentKind::Throughput: return run_throughput_sweep(config);
    case ExperimentKind::Balance: return run_balance_sweep(config);
    case ExperimentKind::Params: return params_report(config);
    case ExperimentKind::Check: {
        config.validate();
        std::vector<ResultRow> rows;
        for (const auto& c : config.protocols) {
            for (std::uint64_t rep = 0; rep < config.repetitions; ++rep) {
                const std::uint64_t seed = repetition_seed(config.seed, rep);
                const auto trace = simulate(options_for(config, config.params, c, seed), config.adversary);
                const RowSink emit{rows, "check", c, 0.0, seed};
                for (const auto& r : to_records(run_property_checks(trace), params_digest(config.params, c, seed)))
                    emit(r.check, r.pass ? 1.0 : 0.0);
            }
        }
        sort_rows(rows);
        return rows;
    }
    }
    return {};
}

void sort_rows(std::vector<ResultRow>& rows) {
    std::stable_sort(rows.begin(), rows.end(), [](const ResultRow& a, const ResultRow& b) {
        return std::tie(a.var, a.protocol, a.seed) < std::tie(b.var, b.protocol, b.seed);
    });
}

void write_rows(std::ostream& out, std::span<const ResultRow> rows) {
    out << "experiment,protocol,c,var,seed,metric,value\n";
    for (const auto& r : rows) {
        out << csv_field(r.experiment) << ',' << csv_field(r.protocol) << ',' << csv_field(r.c) << ','
            << format_number(r.var) << ',' << r.seed << ',' << csv_field(r.metric) << ',' << format_number(r.value)
            << '\n';
    }
}

std::vector<Summary> summarize(std::span<const ResultRow> rows) {
    using Key = std::tuple<std::string, std::string, std::string, double, std::string>;
    std::map<Key, std::vector<double>> groups;
    for (const auto& r : rows) groups[{r.experiment, r.protocol, r.c, r.var, r.metric}].push_back(r.value);
    std::vector<Summary> out;
    for (auto& [key, values] : groups) {
        std::sort(values.begin(), values.end());
        Summary s{std::get<0>(key), std::get<1>(key), std::get<2>(key), std::get<3>(key), std::get<4>(key),
                  values.size(), 0, 0};
        double sum = 0;
        for (double v : values) sum += v;
        s.mean = sum / static_cast<double>(values.size());
        if (values.size() > 1) {
            double sq = 0;
            for (double v : values) sq += (v - s.mean) * (v - s.mean);
            s.stddev = std::sqrt(sq / static_cast<double>(values.size() - 1));
        }
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace medium
