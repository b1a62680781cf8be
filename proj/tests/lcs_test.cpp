// Copyright 2026 The uprprc Authors
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

#include "uprprc/lcs.hpp"

#include <gtest/gtest.h>

#include <random>

#include "support/synthetic.hpp"
#include "uprprc/error.hpp"

namespace uprprc {
namespace {

std::vector<FlatToken> stream(const std::vector<std::string>& words) {
  std::vector<FlatToken> out;
  for (std::size_t i = 0; i < words.size(); ++i)
    out.push_back(FlatToken{words[i], static_cast<std::uint32_t>(words[i].size()), 0, i});
  return out;
}

using Pairs = std::vector<MatchPair>;

TEST(Lcs, Identity) {
  auto s = stream({"a", "b", "c"});
  auto r = lcs_hunt_szymanski(s, s);
  EXPECT_EQ(r.pairs, (Pairs{{0, 0}, {1, 1}, {2, 2}}));
  EXPECT_EQ(r.stats.lcs_len, 3u);
  EXPECT_EQ(r.stats.matching_pairs, 3u);
}

TEST(Lcs, PicksSmallestPairSequence) {
  auto src = stream({"a", "x", "b"});
  auto tgt = stream({"b", "a", "b"});
  auto r = lcs_hunt_szymanski(src, tgt);
  EXPECT_EQ(r.stats.lcs_len, 2u);
  EXPECT_EQ(r.pairs, (Pairs{{0, 1}, {2, 2}}));
  EXPECT_EQ(r.stats.matching_pairs, 3u);
}

TEST(Lcs, EmptyStreams) {
  auto a = stream({"a"});
  auto none = stream({});
  EXPECT_TRUE(lcs_hunt_szymanski(none, a).pairs.empty());
  EXPECT_TRUE(lcs_hunt_szymanski(a, none).pairs.empty());
  EXPECT_TRUE(lcs_dp_oracle(none, a).pairs.empty());
}

TEST(Lcs, NoCommonWords) {
  auto r = lcs_hunt_szymanski(stream({"a", "b"}), stream({"c", "d", "e"}));
  EXPECT_TRUE(r.pairs.empty());
  EXPECT_EQ(r.stats, (LcsStats{2, 3, 0, 0}));
}

// Each pair shares the index's 32-bit surface key.
TEST(Lcs, KeyCollisionsDoNotMatch) {
  auto src = stream({"collide-d1e2f04194", "q19364", "q63d7f"});
  auto tgt = stream({"qe9e9f", "q19364", "collide-4894f5feca", "collide-d1e2f04194", "q50a33"});
  auto r = lcs_hunt_szymanski(src, tgt);
  EXPECT_EQ(r.stats.matching_pairs, 2u);
  EXPECT_EQ(r.stats.lcs_len, 1u);
  EXPECT_EQ(r.pairs, (Pairs{{0, 3}}));
  EXPECT_EQ(r.stats.lcs_len, lcs_dp_oracle(src, tgt).stats.lcs_len);
}

TEST(LcsOracle, SameAnswerOnExamples) {
  auto src = stream({"a", "x", "b"});
  auto tgt = stream({"b", "a", "b"});
  auto r = lcs_dp_oracle(src, tgt);
  EXPECT_EQ(r.pairs, (Pairs{{0, 1}, {2, 2}}));
  EXPECT_EQ(r.stats, lcs_hunt_szymanski(src, tgt).stats);
}

TEST(LcsOracle, CellCap) {
  std::mt19937_64 rng(1);
  auto big = testing::random_stream(rng, 2001, 50);
  auto other = testing::random_stream(rng, 2000, 50);
  EXPECT_NO_THROW(lcs_dp_oracle(std::span(other).first(2000), other));
  EXPECT_THROW(lcs_dp_oracle(big, other), OracleTooLarge);
}

TEST(Lcs, MatchesOracleOnRandomStreams) {
  std::mt19937_64 rng(314);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t alphabet = std::vector<std::size_t>{2, 5, 10, 50}[trial % 4];
    auto src = testing::random_stream(rng, rng() % 120, alphabet);
    auto tgt = testing::random_stream(rng, rng() % 120, alphabet);
    auto fast = lcs_hunt_szymanski(src, tgt);
    auto slow = lcs_dp_oracle(src, tgt);
    ASSERT_EQ(fast.stats, slow.stats);
    ASSERT_EQ(fast.pairs, slow.pairs);
  }
}

TEST(Lcs, PairsAreACommonSubsequence) {
  std::mt19937_64 rng(2718);
  for (int trial = 0; trial < 200; ++trial) {
    auto src = testing::random_stream(rng, 1 + rng() % 200, 10);
    auto tgt = testing::random_stream(rng, 1 + rng() % 200, 10);
    auto r = lcs_hunt_szymanski(src, tgt);
    ASSERT_EQ(r.pairs.size(), r.stats.lcs_len);
    for (std::size_t k = 0; k < r.pairs.size(); ++k) {
      EXPECT_EQ(src[r.pairs[k].src_pos].surface, tgt[r.pairs[k].tgt_pos].surface);
      if (k > 0) {
        EXPECT_LT(r.pairs[k - 1].src_pos, r.pairs[k].src_pos);
        EXPECT_LT(r.pairs[k - 1].tgt_pos, r.pairs[k].tgt_pos);
      }
    }
  }
}

TEST(FlattenTokens, CarriesParagraphIndex) {
  auto doc = Document::from_text("S", "en", "One two.\n\nThree.");
  auto flat = flatten_tokens(doc);
  ASSERT_EQ(flat.size(), 3u);
  EXPECT_EQ(flat[2].surface, "three");
  EXPECT_EQ(flat[2].para_index, 1u);
  EXPECT_EQ(flat[2].token_index, 2u);
  EXPECT_EQ(flat[1].token_index, 1u);
}

}  // namespace
}  // namespace uprprc
