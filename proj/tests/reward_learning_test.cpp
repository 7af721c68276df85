// Copyright 2026 The softgait Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "oracles.hpp"
#include "softgait.hpp"

namespace softgait {
namespace {

using testing::tabletop_table;
using testing::three_limb;

ObservationRecord obs(const char* from, const char* to, double dx, double dy,
                      double dt, double w = 1.0) {
  const RobotSpec spec = three_limb();
  return {parse_state(spec, from), parse_state(spec, to), dx, dy, dt, w, {}};
}

const RewardVector& entry(const RewardTable& t, const char* from, const char* to) {
  const RobotSpec spec = three_limb();
  const RewardVector* r = t.find(parse_state(spec, from), parse_state(spec, to));
  EXPECT_NE(r, nullptr);
  static const RewardVector kZero;
  return r ? *r : kZero;
}

TEST(RewardLearning, AggregateExamples) {
  EXPECT_EQ(entry(aggregate_observations({obs("111", "100", 5, 0, 0)}), "111", "100"),
            (RewardVector{5, 0, 0}));
  EXPECT_EQ(entry(aggregate_observations({obs("000", "001", 1, 0, 0),
                                          obs("000", "001", 3, 0, 0)}),
                  "000", "001")
                .dx,
            2.0);
  EXPECT_EQ(entry(aggregate_observations({obs("000", "001", 1, 0, 0, 3),
                                          obs("000", "001", 5, 0, 0, 1)}),
                  "000", "001")
                .dx,
            2.0);
}

TEST(RewardLearning, TransitionsWithoutRecordsAbsent) {
  const auto t = aggregate_observations({obs("111", "100", 5, 0, 0)});
  EXPECT_EQ(t.size(), 1u);
  EXPECT_EQ(t.observation_counts.begin()->second, 1);
  EXPECT_TRUE(aggregate_observations({}).entries.empty());
}

TEST(RewardLearning, ZeroTotalWeightNamesTransition) {
  try {
    aggregate_observations({obs("000", "001", 1, 0, 0, 0), obs("000", "001", 2, 0, 0, 0)});
    FAIL() << "expected DegenerateWeightError";
  } catch (const DegenerateWeightError& e) {
    EXPECT_NE(std::string(e.what()).find("000->001"), std::string::npos);
  }
  EXPECT_THROW(aggregate_observations({obs("000", "001", 1, 0, 0, -1)}), DataError);
  EXPECT_THROW(aggregate_observations({obs("000", "000", 1, 0, 0)}), DataError);
}

TEST(RewardLearning, WeightScaleInvariance) {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> val(-10, 10);
  std::uniform_real_distribution<double> wt(0.1, 5);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<ObservationRecord> recs;
    const int k = 1 + trial % 6;
    for (int i = 0; i < k; ++i) {
      recs.push_back(obs("010", "110", val(rng), val(rng), val(rng), wt(rng)));
    }
    const RewardVector base = entry(aggregate_observations(recs), "010", "110");
    // Power-of-two factors scale exactly.
    for (double s : {0.25, 2.0, 1024.0}) {
      auto scaled = recs;
      for (auto& r : scaled) r.weight *= s;
      EXPECT_EQ(entry(aggregate_observations(scaled), "010", "110"), base);
    }
    auto scaled = recs;
    for (auto& r : scaled) r.weight *= 3.7;
    const RewardVector v = entry(aggregate_observations(scaled), "010", "110");
    for (Axis a : kAllAxes) EXPECT_NEAR(v[a], base[a], 1e-12);
  }
}

TEST(RewardLearning, CsvRowExamples) {
  std::istringstream in("from,to,dx,dy,dtheta\n111,100,5,0,0\n000,111,1,0.5,0\n");
  const auto t = load_reward_table(in, three_limb());
  EXPECT_EQ(t.size(), 2u);
  EXPECT_EQ(entry(t, "111", "100"), (RewardVector{5, 0, 0}));
  EXPECT_EQ(entry(t, "000", "111"), (RewardVector{1, 0.5, 0}));
}

TEST(RewardLearning, EmptyFileIsEmptyTable) {
  std::istringstream in("");
  EXPECT_EQ(load_reward_table(in, three_limb()).size(), 0u);
}

TEST(RewardLearning, DuplicateRowsLastWins) {
  std::istringstream in("from,to,dx,dy,dtheta\n111,100,5,0,0\n111,100,4,0,1\n");
  std::vector<std::string> warnings;
  const auto t = load_reward_table(in, three_limb(), &warnings);
  EXPECT_EQ(entry(t, "111", "100"), (RewardVector{4, 0, 1}));
  ASSERT_EQ(warnings.size(), 1u);
  EXPECT_NE(warnings[0].find("line 3"), std::string::npos);
}

TEST(RewardLearning, MalformedRowsRejected) {
  auto load = [](const std::string& body) {
    std::istringstream in("from,to,dx,dy,dtheta\n" + body);
    return load_reward_table(in, three_limb());
  };
  EXPECT_THROW(load("111,100,5,0\n"), ParseError);
  EXPECT_THROW(load("111,100,5,0,0,9\n"), ParseError);
  EXPECT_THROW(load("111,102,5,0,0\n"), InvalidStateError);
  EXPECT_THROW(load("1111,100,5,0,0\n"), InvalidStateError);
  EXPECT_THROW(load("111,100,five,0,0\n"), ParseError);
  EXPECT_THROW(load("111,100,nan,0,0\n"), ParseError);
  EXPECT_THROW(load("111,111,1,0,0\n"), InvalidTableError);
  std::istringstream no_header("111,100,5,0,0\n");
  EXPECT_THROW(load_reward_table(no_header, three_limb()), ParseError);
  try {
    load("111,100,5,0,0\n111,100,x,0,0\n");
  } catch (const ParseError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("line 3"), std::string::npos);
    EXPECT_NE(msg.find("dx"), std::string::npos);
  }
}

TEST(RewardLearning, SaveLoadRoundTripBitExact) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> val(-1e3, 1e3);
  const RobotSpec spec = three_limb();
  RewardTable t;
  for (int u = 1; u <= 8; ++u) {
    for (int v = 1; v <= 8; ++v) {
      if (u == v) continue;
      t.entries[{decode_node(spec, NodeId{u}), decode_node(spec, NodeId{v})}] = {
          val(rng), val(rng) * 1e-7, val(rng) * 1e9};
    }
  }
  std::ostringstream out;
  save_reward_table(out, t);
  std::istringstream in(out.str());
  const auto back = load_reward_table(in, spec);
  EXPECT_EQ(back.entries, t.entries);
  std::ostringstream again;
  save_reward_table(again, back);
  EXPECT_EQ(again.str(), out.str());
}

TEST(RewardLearning, BundledTableHasEveryPair) {
  const auto t = tabletop_table();
  EXPECT_EQ(t.size(), 56u);
  for (const auto& [key, r] : t.entries) {
    EXPECT_NE(key.first, key.second);
    EXPECT_TRUE(r.is_finite());
  }
}

// Each bundled row becomes three observations whose weighted mean is the
// row (r - 1, r + 1 with weight 1 and r with weight 2; exact in binary).
TEST(RewardLearning, SyntheticLogsReproduceBundledTable) {
  const auto table = tabletop_table();
  std::ostringstream log;
  int trial = 0;
  for (const auto& [key, r] : table.entries) {
    for (auto [off, w] : {std::pair{-1.0, 1.0}, {1.0, 1.0}, {0.0, 2.0}}) {
      nlohmann::json j{{"from", format_state(key.first)},
                       {"to", format_state(key.second)},
                       {"dx", r.dx + off},
                       {"dy", r.dy - off},
                       {"dtheta", r.dtheta + 2 * off},
                       {"weight", w},
                       {"trial", ++trial}};
      log << j.dump() << '\n';
    }
  }
  std::istringstream in(log.str());
  const auto learned = aggregate_observations(load_observations(in, three_limb()));
  std::ostringstream saved;
  save_reward_table(saved, learned);
  std::istringstream reread(saved.str());
  EXPECT_EQ(load_reward_table(reread, three_limb()).entries, table.entries);

  std::ifstream bundled(testing::data_path("tabletop_rewards.csv"));
  std::stringstream original;
  original << bundled.rdbuf();
  EXPECT_EQ(saved.str(), original.str());
}

TEST(RewardLearning, ObservationLogErrors) {
  const RobotSpec spec = three_limb();
  auto load = [&](const std::string& s) {
    std::istringstream in(s);
    return load_observations(in, spec);
  };
  EXPECT_EQ(load("{\"from\":\"000\",\"to\":\"001\",\"dx\":1,\"dy\":0,\"dtheta\":0}\n")
                .front()
                .weight,
            1.0);
  EXPECT_THROW(load("{\"from\":\"000\",\"to\":\"001\",\"dx\":1}\n"), ParseError);
  EXPECT_THROW(load("{\"from\":\"000\",\"to\":\"009\",\"dx\":1,\"dy\":0,\"dtheta\":0}\n"),
               InvalidStateError);
  EXPECT_THROW(load("not json\n"), ParseError);
  EXPECT_THROW(
      load("{\"from\":\"000\",\"to\":\"001\",\"dx\":\"1\",\"dy\":0,\"dtheta\":0}\n"),
      ParseError);
}

TEST(RewardLearning, BundledSampleLog) {
  std::ifstream in(testing::data_path("observations_sample.jsonl"));
  ASSERT_TRUE(in);
  const auto t = aggregate_observations(load_observations(in, three_limb()));
  EXPECT_EQ(entry(t, "111", "100"), (RewardVector{5, 0, 0}));
}

}  // namespace
}  // namespace softgait
