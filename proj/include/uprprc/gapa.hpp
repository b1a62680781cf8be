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

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "uprprc/error.hpp"
#include "uprprc/lcs.hpp"
#include "uprprc/text_normalize.hpp"

namespace uprprc {

// Hit-rate threshold h_c, exposed to users as DROP_THRESHOLD.
inline constexpr double kDefaultDropThreshold = 0.3;

// Members of a merged group are joined with this separator. Paragraphs never
// contain a blank line, so the join is reversible.
inline constexpr std::string_view kParagraphJoiner = "\n\n";

struct ParaLink {
  std::size_t src_para = 0;
  std::size_t tgt_para = 0;
  std::uint64_t letter_weight = 0;

  bool operator==(const ParaLink&) const = default;
};

struct HitRates {
  std::vector<double> src;
  std::vector<double> tgt;
};

// Inclusive paragraph index interval.
struct IndexRange {
  std::size_t first = 0;
  std::size_t last = 0;

  std::size_t size() const { return last - first + 1; }
  bool contains(std::size_t i) const { return first <= i && i <= last; }
  bool operator==(const IndexRange&) const = default;
};

struct AlignmentGroup {
  IndexRange src;
  IndexRange tgt;
  double min_hit_rate = 0.0;
  double min_src_hit_rate = 0.0;
  double min_tgt_hit_rate = 0.0;
  std::string merged_src_text;
  std::string merged_tgt_text;
};

struct AlignmentResult {
  std::vector<AlignmentGroup> groups;
  std::vector<std::size_t> dropped_src;
  std::vector<std::size_t> dropped_tgt;
  HitRates hit_rates;
  double h_c = kDefaultDropThreshold;
  Diagnostics diagnostics;
};

// Every match adds its word's letter count to the (source paragraph, target
// paragraph) link it falls in. Links come back sorted by (src, tgt).
std::vector<ParaLink> build_links(std::span<const MatchPair> matches,
                                  std::span<const FlatToken> src,
                                  std::span<const FlatToken> tgt);

// Letters of matched words over letters of the paragraph; 0 for a paragraph
// without letters.
double hit_rate(const Paragraph& para, std::uint64_t lcs_letter_sum);

HitRates compute_hit_rates(const Document& src_doc, const Document& tgt_doc,
                           std::span<const MatchPair> matches,
                           std::span<const FlatToken> src,
                           std::span<const FlatToken> tgt);

struct FilteredLinks {
  std::vector<ParaLink> links;
  std::vector<std::size_t> dropped_src;
  std::vector<std::size_t> dropped_tgt;
};

// Drops every paragraph whose hit rate is strictly below h_c together with
// its links. h_c = 0 is a no-op.
FilteredLinks filter_nodes(std::span<const ParaLink> links, const HitRates& rates,
                           double h_c);

struct Component {
  std::vector<std::size_t> src;  // sorted
  std::vector<std::size_t> tgt;  // sorted
};

// Connected components of the bipartite link graph, ordered by smallest
// source index.
std::vector<Component> connected_components(std::span<const ParaLink> links);

// Maps components onto index intervals and unions any that overlap or cross
// until groups are disjoint and ordered on both sides. Paragraphs inside a
// group's interval belong to that group. Texts and rates are left empty.
std::vector<AlignmentGroup> canonicalize_groups(std::span<const Component> components,
                                                std::size_t m, std::size_t n);

// The whole procedure: LCS, links, hit rates, filtering, components, groups.
// Throws EmptyDocument when either side has no paragraphs.
AlignmentResult align_documents(const Document& src_doc_translated,
                                const Document& tgt_doc,
                                double h_c = kDefaultDropThreshold);

}  // namespace uprprc
