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

#include "uprprc/gapa.hpp"

#include <gtest/gtest.h>

#include <random>

#include "support/synthetic.hpp"

namespace uprprc {
namespace {

FlatToken tok(std::string surface, std::size_t para) {
  const auto letters = static_cast<std::uint32_t>(surface.size());
  return FlatToken{std::move(surface), letters, para, 0};
}

using Links = std::vector<ParaLink>;
using Pairs = std::vector<MatchPair>;

TEST(BuildLinks, SingleParagraphPair) {
  std::vector<FlatToken> src = {tok("abc", 0), tok("de", 0)};
  std::vector<FlatToken> tgt = {tok("abc", 0), tok("de", 0)};
  EXPECT_EQ(build_links(Pairs{{0, 0}, {1, 1}}, src, tgt), (Links{{0, 0, 5}}));
}

TEST(BuildLinks, AggregatesPerParagraphPair) {
  std::vector<FlatToken> src = {tok("ab", 0), tok("cde", 1), tok("f", 1)};
  std::vector<FlatToken> tgt = {tok("ab", 0), tok("cde", 0), tok("f", 0)};
  EXPECT_EQ(build_links(Pairs{{0, 0}, {1, 1}, {2, 2}}, src, tgt),
            (Links{{0, 0, 2}, {1, 0, 4}}));
}

TEST(BuildLinks, NoMatches) {
  std::vector<FlatToken> none;
  EXPECT_TRUE(build_links(Pairs{}, none, none).empty());
}

Paragraph para_with_letters(std::vector<std::uint32_t> letters) {
  Paragraph p;
  for (auto l : letters) p.tokens.push_back(Token{std::string(l, 'x'), l});
  return p;
}

TEST(HitRate, Ratio) {
  const auto p = para_with_letters({3, 7, 4});
  EXPECT_DOUBLE_EQ(hit_rate(p, 14), 1.0);
  EXPECT_DOUBLE_EQ(hit_rate(p, 3 + 4), 0.5);
  EXPECT_DOUBLE_EQ(hit_rate(p, 0), 0.0);
  EXPECT_DOUBLE_EQ(hit_rate(Paragraph{}, 0), 0.0);
}

HitRates rates(std::vector<double> src, std::vector<double> tgt) {
  return HitRates{std::move(src), std::move(tgt)};
}

TEST(FilterNodes, ZeroThresholdKeepsEverything) {
  const Links links = {{0, 0, 3}, {1, 1, 2}};
  auto f = filter_nodes(links, rates({0.0, 0.1}, {0.0, 0.2}), 0.0);
  EXPECT_EQ(f.links, links);
  EXPECT_TRUE(f.dropped_src.empty());
  EXPECT_TRUE(f.dropped_tgt.empty());
}

TEST(FilterNodes, DropsBelowThreshold) {
  const Links links = {{0, 0, 3}, {1, 1, 2}};
  auto f = filter_nodes(links, rates({0.9, 0.2}, {0.8, 0.9}), 0.3);
  EXPECT_EQ(f.links, (Links{{0, 0, 3}}));
  EXPECT_EQ(f.dropped_src, std::vector<std::size_t>{1});
  EXPECT_TRUE(f.dropped_tgt.empty());
}

TEST(FilterNodes, ThresholdIsStrict) {
  const Links links = {{0, 0, 3}};
  auto f = filter_nodes(links, rates({0.3}, {0.3}), 0.3);
  EXPECT_EQ(f.links, links);
}

TEST(FilterNodes, FullThresholdKeepsPerfectOnly) {
  const Links links = {{0, 0, 3}, {1, 1, 2}, {2, 1, 1}};
  auto f = filter_nodes(links, rates({1.0, 0.95, 0.6}, {1.0, 0.99}), 1.0);
  EXPECT_EQ(f.links, (Links{{0, 0, 3}}));
  EXPECT_EQ(f.dropped_src, (std::vector<std::size_t>{1, 2}));
  EXPECT_EQ(f.dropped_tgt, std::vector<std::size_t>{1});
}

TEST(ConnectedComponents, SharedSource) {
  auto c = connected_components(Links{{0, 0, 1}, {0, 1, 1}});
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c[0].src, std::vector<std::size_t>{0});
  EXPECT_EQ(c[0].tgt, (std::vector<std::size_t>{0, 1}));
}

TEST(ConnectedComponents, Separate) {
  EXPECT_EQ(connected_components(Links{{0, 0, 1}, {1, 1, 1}}).size(), 2u);
  EXPECT_TRUE(connected_components(Links{}).empty());
}

std::vector<std::pair<IndexRange, IndexRange>> shape(const std::vector<AlignmentGroup>& groups) {
  std::vector<std::pair<IndexRange, IndexRange>> out;
  for (const auto& g : groups) out.emplace_back(g.src, g.tgt);
  return out;
}

using Shape = std::vector<std::pair<IndexRange, IndexRange>>;

TEST(Canonicalize, AlreadyCanonical) {
  std::vector<Component> comps = {{{0}, {0, 1}}, {{1}, {2}}};
  EXPECT_EQ(shape(canonicalize_groups(comps, 2, 3)),
            (Shape{{{0, 0}, {0, 1}}, {{1, 1}, {2, 2}}}));
}

TEST(Canonicalize, CrossingMerged) {
  std::vector<Component> comps = {{{0}, {1}}, {{1}, {0}}};
  EXPECT_EQ(shape(canonicalize_groups(comps, 2, 2)), (Shape{{{0, 1}, {0, 1}}}));
}

TEST(Canonicalize, AbsorbsUnlinkedInterior) {
  std::vector<Component> comps = {{{0, 2}, {0}}};
  EXPECT_EQ(shape(canonicalize_groups(comps, 3, 1)), (Shape{{{0, 2}, {0, 0}}}));
}

TEST(Canonicalize, GroupsAreOrderedAndDisjoint) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t m = 1 + rng() % 12;
    const std::size_t n = 1 + rng() % 12;
    Links links;
    const std::size_t count = rng() % 15;
    for (std::size_t k = 0; k < count; ++k) links.push_back({rng() % m, rng() % n, 1});
    std::sort(links.begin(), links.end(), [](const ParaLink& a, const ParaLink& b) {
      return std::pair(a.src_para, a.tgt_para) < std::pair(b.src_para, b.tgt_para);
    });
    links.erase(std::unique(links.begin(), links.end()), links.end());
    auto groups = canonicalize_groups(connected_components(links), m, n);
    for (std::size_t g = 1; g < groups.size(); ++g) {
      EXPECT_LT(groups[g - 1].src.last, groups[g].src.first);
      EXPECT_LT(groups[g - 1].tgt.last, groups[g].tgt.first);
    }
    for (const auto& l : links) {
      const auto owner = std::find_if(groups.begin(), groups.end(), [&](const AlignmentGroup& g) {
        return g.src.contains(l.src_para);
      });
      ASSERT_NE(owner, groups.end());
      EXPECT_TRUE(owner->tgt.contains(l.tgt_para));
    }
  }
}

Document doc(const std::vector<std::string>& paras) {
  return Document::from_paragraphs("S", "en", paras);
}

TEST(AlignDocuments, SelfAlignment) {
  auto d = doc({"The General Assembly met today.", "It adopted the budget.", "Closing words."});
  auto r = align_documents(d, d, 0.3);
  EXPECT_EQ(shape(r.groups),
            (Shape{{{0, 0}, {0, 0}}, {{1, 1}, {1, 1}}, {{2, 2}, {2, 2}}}));
  for (double h : r.hit_rates.src) EXPECT_DOUBLE_EQ(h, 1.0);
  for (double h : r.hit_rates.tgt) EXPECT_DOUBLE_EQ(h, 1.0);
  EXPECT_TRUE(r.dropped_src.empty());
  EXPECT_TRUE(r.dropped_tgt.empty());
  EXPECT_DOUBLE_EQ(r.groups[1].min_hit_rate, 1.0);
}

TEST(AlignDocuments, SplitParagraph) {
  auto src = doc({"Opening remarks by the chair.", "Second item on the agenda.",
                  "The committee reviewed the report and then approved the budget proposal."});
  auto tgt = doc({"Opening remarks by the chair.", "Second item on the agenda.",
                  "The committee reviewed the report", "and then approved the budget proposal."});
  auto r = align_documents(src, tgt, 0.3);
  ASSERT_EQ(r.groups.size(), 3u);
  EXPECT_EQ(r.groups[2].src, (IndexRange{2, 2}));
  EXPECT_EQ(r.groups[2].tgt, (IndexRange{2, 3}));
  EXPECT_EQ(r.groups[2].merged_tgt_text,
            "The committee reviewed the report\n\nand then approved the budget proposal.");
}

TEST(AlignDocuments, GibberishDropped) {
  auto src = doc({"Opening remarks by the chair.", "Xqzv jjkw vvq zzxq qqj the xvz.",
                  "Second item on the agenda."});
  auto tgt = doc({"Opening remarks by the chair.", "Second item on the agenda."});
  auto r = align_documents(src, tgt, 0.3);
  EXPECT_EQ(r.dropped_src, std::vector<std::size_t>{1});
  EXPECT_EQ(shape(r.groups), (Shape{{{0, 0}, {0, 0}}, {{2, 2}, {1, 1}}}));
}

TEST(AlignDocuments, EmptySide) {
  auto d = doc({"text"});
  EXPECT_THROW(align_documents(d, doc({}), 0.3), EmptyDocument);
}

TEST(AlignDocuments, WholeDocumentGroupDiagnostic) {
  auto src = doc({"alpha beta gamma", "delta epsilon"});
  auto tgt = doc({"alpha delta", "beta gamma epsilon"});
  auto r = align_documents(src, tgt, 0.0);
  ASSERT_EQ(r.groups.size(), 1u);
  EXPECT_FALSE(r.diagnostics.empty());
}

TEST(AlignDocuments, RecoversSyntheticGroups) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    auto pair = testing::make_synthetic_pair(rng, {});
    auto r = align_documents(doc(pair.src_paragraphs), doc(pair.tgt_paragraphs), 0.0);
    EXPECT_EQ(shape(r.groups), pair.truth);
  }
}

TEST(AlignDocuments, DroppedGrowsWithThreshold) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    testing::SyntheticPairOptions opts;
    opts.gibberish_ratio = 0.2;
    auto pair = testing::make_synthetic_pair(rng, opts);
    auto src = doc(pair.src_paragraphs);
    auto tgt = doc(pair.tgt_paragraphs);
    std::size_t prev = 0;
    for (double h : {0.0, 0.1, 0.2, 0.3, 0.4, 0.6, 0.8, 1.0}) {
      auto r = align_documents(src, tgt, h);
      const std::size_t dropped = r.dropped_src.size() + r.dropped_tgt.size();
      EXPECT_GE(dropped, prev);
      prev = dropped;
    }
  }
}

}  // namespace
}  // namespace uprprc
