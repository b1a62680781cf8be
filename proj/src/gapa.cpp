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

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_map>

namespace uprprc {

std::vector<ParaLink> build_links(std::span<const MatchPair> matches,
                                  std::span<const FlatToken> src,
                                  std::span<const FlatToken> tgt) {
  std::map<std::pair<std::size_t, std::size_t>, std::uint64_t> weights;
  for (const auto& m : matches) {
    const auto& s = src[m.src_pos];
    weights[{s.para_index, tgt[m.tgt_pos].para_index}] += s.letters;
  }
  std::vector<ParaLink> links;
  links.reserve(weights.size());
  for (const auto& [key, w] : weights) links.push_back(ParaLink{key.first, key.second, w});
  return links;
}

double hit_rate(const Paragraph& para, std::uint64_t lcs_letter_sum) {
  const std::uint64_t total = para.letter_count();
  if (total == 0) return 0.0;
  return static_cast<double>(lcs_letter_sum) / static_cast<double>(total);
}

HitRates compute_hit_rates(const Document& src_doc, const Document& tgt_doc,
                           std::span<const MatchPair> matches,
                           std::span<const FlatToken> src,
                           std::span<const FlatToken> tgt) {
  std::vector<std::uint64_t> src_hits(src_doc.size(), 0);
  std::vector<std::uint64_t> tgt_hits(tgt_doc.size(), 0);
  for (const auto& m : matches) {
    src_hits[src[m.src_pos].para_index] += src[m.src_pos].letters;
    tgt_hits[tgt[m.tgt_pos].para_index] += tgt[m.tgt_pos].letters;
  }
  HitRates rates;
  rates.src.reserve(src_doc.size());
  rates.tgt.reserve(tgt_doc.size());
  for (const auto& p : src_doc.paragraphs) rates.src.push_back(hit_rate(p, src_hits[p.index]));
  for (const auto& p : tgt_doc.paragraphs) rates.tgt.push_back(hit_rate(p, tgt_hits[p.index]));
  return rates;
}

FilteredLinks filter_nodes(std::span<const ParaLink> links, const HitRates& rates,
                           double h_c) {
  FilteredLinks out;
  for (std::size_t i = 0; i < rates.src.size(); ++i)
    if (rates.src[i] < h_c) out.dropped_src.push_back(i);
  for (std::size_t j = 0; j < rates.tgt.size(); ++j)
    if (rates.tgt[j] < h_c) out.dropped_tgt.push_back(j);
  for (const auto& l : links) {
    if (rates.src[l.src_para] < h_c || rates.tgt[l.tgt_para] < h_c) continue;
    out.links.push_back(l);
  }
  return out;
}

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

std::vector<Component> connected_components(std::span<const ParaLink> links) {
  // Dense node ids: source paragraphs first, then target paragraphs.
  std::map<std::size_t, std::size_t> src_ids;
  std::map<std::size_t, std::size_t> tgt_ids;
  for (const auto& l : links) {
    src_ids.try_emplace(l.src_para, 0);
    tgt_ids.try_emplace(l.tgt_para, 0);
  }
  std::size_t next = 0;
  for (auto& [para, id] : src_ids) id = next++;
  for (auto& [para, id] : tgt_ids) id = next++;

  DisjointSets sets(next);
  for (const auto& l : links) sets.unite(src_ids[l.src_para], tgt_ids[l.tgt_para]);

  std::map<std::size_t, Component> by_root;
  for (const auto& [para, id] : src_ids) by_root[sets.find(id)].src.push_back(para);
  for (const auto& [para, id] : tgt_ids) by_root[sets.find(id)].tgt.push_back(para);

  // Every root is a source node (smallest id wins and sources come first),
  // so ordering by root orders by smallest source index.
  std::vector<Component> out;
  out.reserve(by_root.size());
  for (auto& [root, comp] : by_root) out.push_back(std::move(comp));
  return out;
}

std::vector<AlignmentGroup> canonicalize_groups(std::span<const Component> components,
                                                std::size_t m, std::size_t n) {
  std::vector<AlignmentGroup> boxes;
  for (const auto& c : components) {
    if (c.src.empty() || c.tgt.empty()) continue;
    AlignmentGroup g;
    g.src = {c.src.front(), c.src.back()};
    g.tgt = {*std::min_element(c.tgt.begin(), c.tgt.end()),
             *std::max_element(c.tgt.begin(), c.tgt.end())};
    if (g.src.last >= m || g.tgt.last >= n) continue;
    boxes.push_back(std::move(g));
  }
  std::sort(boxes.begin(), boxes.end(), [](const AlignmentGroup& a, const AlignmentGroup& b) {
    return a.src.first < b.src.first;
  });

  // Stack of groups strictly ordered on both sides; a new box that overlaps
  // or crosses the top is merged into it, and the merge may cascade.
  std::vector<AlignmentGroup> stack;
  for (auto& box : boxes) {
    while (!stack.empty()) {
      const auto& top = stack.back();
      const bool ordered = top.src.last < box.src.first && top.tgt.last < box.tgt.first;
      if (ordered) break;
      box.src = {std::min(top.src.first, box.src.first), std::max(top.src.last, box.src.last)};
      box.tgt = {std::min(top.tgt.first, box.tgt.first), std::max(top.tgt.last, box.tgt.last)};
      stack.pop_back();
    }
    stack.push_back(std::move(box));
  }
  return stack;
}

namespace {

std::string merge_texts(const Document& doc, IndexRange range) {
  std::string out;
  for (std::size_t i = range.first; i <= range.last; ++i) {
    if (i > range.first) out += kParagraphJoiner;
    out += doc.paragraphs[i].text;
  }
  return out;
}

double range_min(const std::vector<double>& rates, IndexRange range) {
  return *std::min_element(rates.begin() + static_cast<std::ptrdiff_t>(range.first),
                           rates.begin() + static_cast<std::ptrdiff_t>(range.last) + 1);
}

std::vector<std::size_t> uncovered(std::size_t count, const std::vector<AlignmentGroup>& groups,
                                   bool source_side) {
  std::vector<bool> covered(count, false);
  for (const auto& g : groups) {
    const auto& r = source_side ? g.src : g.tgt;
    for (std::size_t i = r.first; i <= r.last; ++i) covered[i] = true;
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < count; ++i)
    if (!covered[i]) out.push_back(i);
  return out;
}

}  // namespace

AlignmentResult align_documents(const Document& src_doc_translated, const Document& tgt_doc,
                                double h_c) {
  if (src_doc_translated.empty() || tgt_doc.empty()) {
    throw EmptyDocument("cannot align " + src_doc_translated.symbol +
                        ": a side has no paragraphs");
  }
  const std::size_t m = src_doc_translated.size();
  const std::size_t n = tgt_doc.size();

  const auto src = flatten_tokens(src_doc_translated);
  const auto tgt = flatten_tokens(tgt_doc);
  const auto lcs = lcs_hunt_szymanski(src, tgt);
  const auto links = build_links(lcs.pairs, src, tgt);

  AlignmentResult result;
  result.h_c = h_c;
  result.hit_rates = compute_hit_rates(src_doc_translated, tgt_doc, lcs.pairs, src, tgt);
  const auto filtered = filter_nodes(links, result.hit_rates, h_c);
  const auto components = connected_components(filtered.links);
  result.groups = canonicalize_groups(components, m, n);

  for (auto& g : result.groups) {
    g.min_src_hit_rate = range_min(result.hit_rates.src, g.src);
    g.min_tgt_hit_rate = range_min(result.hit_rates.tgt, g.tgt);
    g.min_hit_rate = std::min(g.min_src_hit_rate, g.min_tgt_hit_rate);
    g.merged_src_text = merge_texts(src_doc_translated, g.src);
    g.merged_tgt_text = merge_texts(tgt_doc, g.tgt);
    if ((m >= 2 && 2 * g.src.size() > m) || (n >= 2 && 2 * g.tgt.size() > n)) {
      result.diagnostics.push_back(
          "group src[" + std::to_string(g.src.first) + "-" + std::to_string(g.src.last) +
          "] tgt[" + std::to_string(g.tgt.first) + "-" + std::to_string(g.tgt.last) +
          "] covers more than half of a side");
    }
  }
  result.dropped_src = uncovered(m, result.groups, true);
  result.dropped_tgt = uncovered(n, result.groups, false);
  return result;
}

}  // namespace uprprc
