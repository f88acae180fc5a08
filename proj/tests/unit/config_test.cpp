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

#include <sstream>

#include <gtest/gtest.h>

#include "medium/errors.hpp"

namespace medium {
namespace {

ExperimentConfig parse(const std::string& text) {
    std::istringstream in(text);
    return parse_config(in);
}

TEST(Config, DefaultsPerExperiment) {
    const auto tp = default_config(ExperimentKind::Throughput);
    EXPECT_EQ(tp.adversary.kind, AdversaryKind::SecretChain);
    EXPECT_EQ(tp.adversary.withhold, 8u);
    const auto bal = default_config(ExperimentKind::Balance);
    EXPECT_EQ(bal.adversary.kind, AdversaryKind::Balance);
    EXPECT_EQ(bal.adversary.tau, 100u);
    EXPECT_EQ(bal.params.t, 20u);
    EXPECT_EQ(default_protocols().size(), 5u);
    EXPECT_EQ(protocol_label(WeightCoefficient::ghost()), "GHOST");
    EXPECT_EQ(protocol_label(WeightCoefficient::bitcoin()), "Bitcoin");
}

TEST(Config, ParsesSettingsAndComments) {
    const auto c = parse("experiment = throughput  # sweep\n"
                         "\n"
                         "n = 50\n"
                         "t_values = 5, 10,15\n"
                         "protocols = ghost, 10001521^(1/100)\n"
                         "npq = 2\n"
                         "repetitions = 7\n"
                         "output = out/a.csv\n");
    EXPECT_EQ(c.kind, ExperimentKind::Throughput);
    EXPECT_EQ(c.params.n, 50u);
    EXPECT_EQ(c.t_values, (std::vector<std::uint32_t>{5, 10, 15}));
    ASSERT_EQ(c.protocols.size(), 2u);
    EXPECT_EQ(c.protocols[0], WeightCoefficient::ghost());
    EXPECT_EQ(c.protocols[1], WeightCoefficient::algebraic_root(10001521, 100));
    EXPECT_DOUBLE_EQ(c.params.n * c.params.p * c.params.q, 2.0);
    EXPECT_EQ(c.repetitions, 7u);
    EXPECT_EQ(c.output, "out/a.csv");
    EXPECT_EQ(c.adversary.kind, AdversaryKind::SecretChain);
}

TEST(Config, TextRoundTrip) {
    for (auto kind : {ExperimentKind::Single, ExperimentKind::Throughput, ExperimentKind::Balance,
                      ExperimentKind::Params, ExperimentKind::Check}) {
        auto c = default_config(kind);
        c.seed = 99;
        c.params.p = 1.0 / 3000;
        c.pqn_values = {0.25, 3};
        const std::string text = to_text(c);
        const auto back = parse(text);
        EXPECT_EQ(to_text(back), text);
        EXPECT_EQ(back.kind, kind);
        EXPECT_EQ(back.params.p, c.params.p);
        EXPECT_EQ(back.protocols, c.protocols);
    }
}

TEST(Config, Errors) {
    EXPECT_THROW((void)parse("n = 10\nexperiment = balance\n"), ConfigError);
    EXPECT_THROW((void)parse("no equals sign\n"), ConfigError);
    EXPECT_THROW((void)parse("colour = blue\n"), ConfigError);
    EXPECT_THROW((void)parse("n = ten\n"), ConfigError);
    EXPECT_THROW((void)parse("experiment = bake\n"), ConfigError);
    EXPECT_THROW((void)parse("repetitions = 0\n").validate(), ConfigError);
    EXPECT_THROW((void)parse("experiment = throughput\nt_values =\n").validate(), ConfigError);
    EXPECT_THROW((void)parse("n = 10\nt = 11\n").validate(), ConfigError);
}

}  // namespace
}  // namespace medium
