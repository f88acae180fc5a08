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

#include "medium/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "medium/csv.hpp"
#include "medium/errors.hpp"

namespace medium {

namespace {

    std::string_view trim(std::string_view s) {
        const auto b = s.find_first_not_of(" \t\r");
        if (b == std::string_view::npos) return {};
        const auto e = s.find_last_not_of(" \t\r");
        return s.substr(b, e - b + 1);
    }

    std::vector<std::string_view> split(std::string_view s) {
        std::vector<std::string_view> out;
        while (true) {
            const auto comma = s.find(',');
            const auto item = trim(s.substr(0, comma));
            if (!item.empty()) out.push_back(item);
            if (comma == std::string_view::npos) break;
            s = s.substr(comma + 1);
        }
        return out;
    }

    template <class T>
    T number(std::string_view key, std::string_view text) {
        T value{};
        const auto* end = text.data() + text.size();
        const auto res = std::from_chars(text.data(), end, value);
        if (res.ec != std::errc{} || res.ptr != end)
            throw ConfigError("bad value for " + std::string(key) + ": " + std::string(text));
        return value;
    }

    std::uint32_t u32(std::string_view key, std::string_view text) { return number<std::uint32_t>(key, text); }
    std::uint64_t u64(std::string_view key, std::string_view text) { return number<std::uint64_t>(key, text); }
    double real(std::string_view key, std::string_view text) { return number<double>(key, text); }

    template <class T, class F>
    std::string join(const std::vector<T>& items, F render) {
        std::string out;
        for (std::size_t k = 0; k < items.size(); ++k) {
            if (k) out += ", ";
            out += render(items[k]);
        }
        return out;
    }

}  // namespace

std::string to_string(ExperimentKind kind) {
    switch (kind) {
    case ExperimentKind::Single: return "single";
    case ExperimentKind::Throughput: return "throughput";
    case ExperimentKind::Balance: return "balance";
    case ExperimentKind::Params: return "params";
    case ExperimentKind::Check: return "check";
    }
    return {};
}

ExperimentKind parse_experiment_kind(std::string_view text) {
    if (text == "single" || text == "simulate") return ExperimentKind::Single;
    if (text == "throughput") return ExperimentKind::Throughput;
    if (text == "balance") return ExperimentKind::Balance;
    if (text == "params") return ExperimentKind::Params;
    if (text == "check") return ExperimentKind::Check;
    throw ConfigError("unknown experiment: " + std::string(text));
}

std::vector<WeightCoefficient> default_protocols() {
    return {WeightCoefficient::ghost(), WeightCoefficient::algebraic_root(10001521, 10),
            WeightCoefficient::algebraic_root(10001521, 100), WeightCoefficient::algebraic_root(10001521, 100000),
            WeightCoefficient::bitcoin()};
}

std::string protocol_label(const WeightCoefficient& c) {
    switch (c.kind()) {
    case CoefficientKind::GhostOne: return "GHOST";
    case CoefficientKind::BitcoinLimit: return "Bitcoin";
    default: return "Medium(" + c.label() + ")";
    }
}

void ExperimentConfig::validate() const {
    if (protocols.empty()) throw ConfigError("protocol list is empty");
    if (repetitions == 0) throw ConfigError("repetitions must be at least 1");
    if (rounds == 0) throw ConfigError("rounds must be at least 1");
    if (kind == ExperimentKind::Throughput && t_values.empty()) throw ConfigError("t_values is empty");
    if (kind == ExperimentKind::Balance && pqn_values.empty()) throw ConfigError("pqn_values is empty");
    for (auto t : t_values)
        if (kind == ExperimentKind::Throughput && t > params.n) throw ConfigError("t_values entry exceeds n");
    for (double v : pqn_values)
        if (kind == ExperimentKind::Balance && !(v > 0)) throw ConfigError("pqn_values must be positive");
    (void)medium::validate(params);
}

ExperimentConfig default_config(ExperimentKind kind) {
    ExperimentConfig c;
    c.kind = kind;
    if (kind == ExperimentKind::Throughput) {
        c.adversary = {AdversaryKind::SecretChain, 8, 100};
    } else if (kind == ExperimentKind::Balance) {
        c.adversary = {AdversaryKind::Balance, 8, 100};
        c.params.t = 20;
        c.repetitions = 50;
    } else if (kind == ExperimentKind::Check) {
        c.adversary = {AdversaryKind::SecretChain, 8, 100};
        c.params.t = 20;
        c.rounds = 10000;
        c.repetitions = 20;
        c.tx_interval = 50;
        c.protocols = {WeightCoefficient::algebraic_root(10001521, 100)};
    }
    return c;
}

void apply_setting(ExperimentConfig& c, std::string_view key, std::string_view value) {
    key = trim(key);
    value = trim(value);
    auto& P = c.params;
    if (key == "experiment") c.kind = parse_experiment_kind(value);
    else if (key == "protocols") {
        c.protocols.clear();
        for (auto item : split(value)) c.protocols.push_back(WeightCoefficient::parse(item));
    } else if (key == "n") P.n = u32(key, value);
    else if (key == "t") P.t = u32(key, value);
    else if (key == "p") P.p = real(key, value);
    else if (key == "q") P.q = u32(key, value);
    else if (key == "npq") P.p = real(key, value) / (static_cast<double>(P.n) * P.q);
    else if (key == "epsilon") P.epsilon = real(key, value);
    else if (key == "lambda") P.lambda = u32(key, value);
    else if (key == "delta") P.delta = real(key, value);
    else if (key == "kappa") P.kappa = u32(key, value);
    else if (key == "t_values") {
        c.t_values.clear();
        for (auto item : split(value)) c.t_values.push_back(u32(key, item));
    } else if (key == "pqn_values") {
        c.pqn_values.clear();
        for (auto item : split(value)) c.pqn_values.push_back(real(key, item));
    } else if (key == "rounds") c.rounds = u64(key, value);
    else if (key == "repetitions") c.repetitions = u64(key, value);
    else if (key == "seed") c.seed = u64(key, value);
    else if (key == "adversary") c.adversary.kind = parse_adversary_kind(std::string(value));
    else if (key == "withhold") c.adversary.withhold = u32(key, value);
    else if (key == "tau") c.adversary.tau = u64(key, value);
    else if (key == "tx_interval") c.tx_interval = u64(key, value);
    else if (key == "output") c.output = std::string(value);
    else throw ConfigError("unknown setting: " + std::string(key));
}

ExperimentConfig parse_config(std::istream& in) {
    ExperimentConfig config;
    std::string line;
    bool first = true;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view text(line);
        text = trim(text.substr(0, text.find('#')));
        if (text.empty()) continue;
        const auto eq = text.find('=');
        if (eq == std::string_view::npos) throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
        const auto key = trim(text.substr(0, eq));
        const auto value = trim(text.substr(eq + 1));
        if (key == "experiment") {
            if (!first) throw ConfigError("line " + std::to_string(line_no) + ": experiment must come first");
            config = default_config(parse_experiment_kind(value));
        } else {
            apply_setting(config, key, value);
        }
        first = false;
    }
    return config;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config " + path.string());
    return parse_config(in);
}

std::string to_text(const ExperimentConfig& c) {
    const auto& P = c.params;
    std::ostringstream out;
    out << "experiment = " << to_string(c.kind) << '\n';
    out << "protocols = " << join(c.protocols, [](const WeightCoefficient& w) { return w.label(); }) << '\n';
    out << "n = " << P.n << '\n' << "t = " << P.t << '\n';
    out << "p = " << format_number(P.p) << '\n' << "q = " << P.q << '\n';
    out << "epsilon = " << format_number(P.epsilon) << '\n' << "lambda = " << P.lambda << '\n';
    out << "delta = " << format_number(P.delta) << '\n';
    if (P.kappa) out << "kappa = " << *P.kappa << '\n';
    out << "t_values = " << join(c.t_values, [](std::uint32_t t) { return std::to_string(t); }) << '\n';
    out << "pqn_values = " << join(c.pqn_values, [](double v) { return format_number(v); }) << '\n';
    out << "rounds = " << c.rounds << '\n' << "repetitions = " << c.repetitions << '\n';
    out << "seed = " << c.seed << '\n';
    out << "adversary = " << to_string(c.adversary.kind) << '\n';
    out << "withhold = " << c.adversary.withhold << '\n' << "tau = " << c.adversary.tau << '\n';
    out << "tx_interval = " << c.tx_interval << '\n';
    if (!c.output.empty()) out << "output = " << c.output << '\n';
    return out.str();
}

}  // namespace medium
