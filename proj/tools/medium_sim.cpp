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

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "medium/config.hpp"
#include "medium/csv.hpp"
#include "medium/errors.hpp"
#include "medium/experiments.hpp"
#include "medium/tree_io.hpp"

namespace {

struct Common {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> reps;
    std::optional<std::uint64_t> rounds;
    std::string out;
    std::vector<std::string> settings;
};

void add_common(CLI::App* app, Common& c) {
    app->add_option("--config", c.config, "flat key = value configuration file")->check(CLI::ExistingFile);
    app->add_option("--seed", c.seed, "base seed");
    app->add_option("--reps", c.reps, "repetitions per sweep point");
    app->add_option("--rounds", c.rounds, "rounds per simulation");
    app->add_option("--out", c.out, "output CSV path (stdout when omitted)");
    app->add_option("--set", c.settings, "extra key=value setting, applied after the config file");
}

medium::ExperimentConfig resolve(medium::ExperimentKind kind, const Common& c) {
    auto config = c.config.empty() ? medium::default_config(kind) : medium::load_config(c.config);
    config.kind = kind;
    for (const auto& s : c.settings) {
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw medium::ConfigError("--set expects key=value, got " + s);
        medium::apply_setting(config, s.substr(0, eq), s.substr(eq + 1));
    }
    if (c.seed) config.seed = *c.seed;
    if (c.reps) config.repetitions = *c.reps;
    if (c.rounds) config.rounds = *c.rounds;
    if (!c.out.empty()) config.output = c.out;
    config.validate();
    return config;
}

template <class F>
void with_output(const std::string& path, F write) {
    if (path.empty()) {
        write(std::cout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw medium::ConfigError("cannot write " + path);
    write(out);
}

void print_summary(const std::vector<medium::ResultRow>& rows, const std::string& metric) {
    for (const auto& s : medium::summarize(rows)) {
        if (s.metric != metric) continue;
        std::cerr << s.protocol << " var=" << medium::format_number(s.var) << ' ' << metric
                  << " mean=" << medium::format_number(s.mean) << " sd=" << medium::format_number(s.stddev)
                  << " n=" << s.count << '\n';
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Discrete-round simulator for weighted-tree chain selection"};
    app.require_subcommand(1);

    Common sim_opts, thr_opts, bal_opts, par_opts, chk_opts;
    std::string events_path, tree_path;

    auto* sim = app.add_subcommand("simulate", "single runs, one metrics block per protocol and repetition");
    add_common(sim, sim_opts);
    sim->add_option("--events", events_path, "write the delivery log of the first run");
    sim->add_option("--tree", tree_path, "write the block tree of the first run");

    auto* thr = app.add_subcommand("throughput", "honest-block fraction under secret-chain withholding");
    add_common(thr, thr_opts);
    auto* bal = app.add_subcommand("balance", "fork duration under the balance attack");
    add_common(bal, bal_opts);
    auto* par = app.add_subcommand("params", "derived parameters for each protocol");
    add_common(par, par_opts);
    auto* chk = app.add_subcommand("check", "property checks, one report record per check and run");
    add_common(chk, chk_opts);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*sim) {
            const auto config = resolve(medium::ExperimentKind::Single, sim_opts);
            const auto rows = medium::run_single(config);
            with_output(config.output, [&](std::ostream& o) { medium::write_rows(o, rows); });
            if (!events_path.empty() || !tree_path.empty()) {
                medium::SimOptions o;
                o.params = config.params;
                o.c = config.protocols.front();
                o.seed = medium::repetition_seed(config.seed, 0);
                o.rounds = config.rounds;
                o.tx_interval = config.tx_interval;
                o.log_events = !events_path.empty();
                const auto trace = medium::simulate(o, config.adversary);
                if (!events_path.empty())
                    with_output(events_path, [&](std::ostream& out) { medium::write_events(out, trace.events); });
                if (!tree_path.empty())
                    with_output(tree_path, [&](std::ostream& out) { medium::dump_tree(trace.registry, out); });
            }
        } else if (*thr) {
            const auto config = resolve(medium::ExperimentKind::Throughput, thr_opts);
            const auto rows = medium::run_throughput_sweep(config);
            with_output(config.output, [&](std::ostream& o) { medium::write_rows(o, rows); });
            print_summary(rows, "honest_fraction");
        } else if (*bal) {
            const auto config = resolve(medium::ExperimentKind::Balance, bal_opts);
            const auto rows = medium::run_balance_sweep(config);
            with_output(config.output, [&](std::ostream& o) { medium::write_rows(o, rows); });
            print_summary(rows, "fork_duration");
        } else if (*par) {
            const auto config = resolve(medium::ExperimentKind::Params, par_opts);
            const auto rows = medium::params_report(config);
            with_output(config.output, [&](std::ostream& o) { medium::write_rows(o, rows); });
            for (const auto& w : medium::validate(config.params)) std::cerr << "warning: " << w << '\n';
        } else if (*chk) {
            const auto config = resolve(medium::ExperimentKind::Check, chk_opts);
            const auto records = medium::run_check_campaign(config);
            with_output(config.output, [&](std::ostream& o) { medium::write_report(o, records); });
            std::size_t failed = 0;
            for (const auto& r : records) failed += r.pass ? 0 : 1;
            std::cerr << records.size() - failed << " of " << records.size() << " checks passed\n";
            return failed ? 1 : 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "medium-sim: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
