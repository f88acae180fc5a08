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

#include "medium/diffusion.hpp"

#include <sstream>

#include <gtest/gtest.h>

namespace medium {
namespace {

BlockPtr blk(BlockId id) { return make_block(id, 0, {MinerKind::Honest, 0}, 1); }

std::vector<BlockId> ids(const std::vector<BlockPtr>& blocks) {
    std::vector<BlockId> out;
    for (const auto& b : blocks) out.push_back(b->id);
    return out;
}

TEST(Diffusion, HonestBroadcastReachesEveryoneSortedAndDeduplicated) {
    DiffusionState net(3);
    const auto a = blk(1), b = blk(2);
    const std::vector<HonestBroadcast> out{{2, b}, {0, a}, {1, a}};
    net.deliver_honest(1, out);
    for (PartyId r = 0; r < 3; ++r) EXPECT_EQ(ids(net.buffer(r)), (std::vector<BlockId>{1, 2}));
    EXPECT_EQ(ids(net.take(1)), (std::vector<BlockId>{1, 2}));
    EXPECT_TRUE(net.buffer(1).empty());
}

TEST(Diffusion, PartitionConfinesHonestTraffic) {
    DiffusionState net(4);
    net.set_partition({0, 0, 1, 1});
    EXPECT_TRUE(net.partitioned());
    const std::vector<HonestBroadcast> out{{0, blk(1)}, {3, blk(2)}};
    net.deliver_honest(1, out);
    EXPECT_EQ(ids(net.buffer(1)), std::vector<BlockId>{1});
    EXPECT_EQ(ids(net.buffer(2)), std::vector<BlockId>{2});
    net.heal();
    EXPECT_FALSE(net.partitioned());
    EXPECT_TRUE(net.take_heal_flag());
    EXPECT_FALSE(net.take_heal_flag());
    net.set_partition({5, 5, 5, 5});
    EXPECT_FALSE(net.partitioned());
    EXPECT_THROW(net.set_partition({0, 1}), std::invalid_argument);
}

TEST(Diffusion, AdversaryMessagesComeAfterHonestAndRespectPartitions) {
    DiffusionState net(4, true);
    net.set_partition({0, 0, 1, 1});
    const std::vector<HonestBroadcast> honest{{0, blk(1)}};
    const std::vector<AdversaryMessage> adv{{blk(9), {0, 1}, false}, {blk(1), {0}, false}};
    net.end_of_round(3, honest, adv);
    EXPECT_EQ(ids(net.buffer(0)), (std::vector<BlockId>{1, 9}));
    EXPECT_TRUE(net.buffer(2).empty());

    const std::vector<AdversaryMessage> crossing{{blk(8), {1, 2}, false}};
    EXPECT_THROW(net.deliver_adversary(3, crossing), std::invalid_argument);
    const std::vector<AdversaryMessage> allowed{{blk(7), {1, 2}, true}};
    net.deliver_adversary(3, allowed);
    EXPECT_EQ(ids(net.buffer(2)), std::vector<BlockId>{7});

    std::ostringstream log;
    net.write_events(log);
    EXPECT_EQ(log.str().substr(0, 14), "3 0 1 h0\n3 1 1");
    EXPECT_NE(log.str().find("3 2 7 adv\n"), std::string::npos);
}

}  // namespace
}  // namespace medium
