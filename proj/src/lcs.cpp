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

#include <algorithm>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string_view>

#include "uprprc/error.hpp"

namespace uprprc {

std::vector<FlatToken> flatten_tokens(const Document& doc) {
  std::vector<FlatToken> out;
  for (const auto& p : doc.paragraphs) {
    for (const auto& t : p.tokens) {
      out.push_back(FlatToken{t.surface, t.letters, p.index, out.size()});
    }
  }
  return out;
}

namespace {

// For every source position, the ascending target positions holding the same
// surface: targets[offset[i], offset[i+1]).
struct MatchIndex {
  std::vector<std::uint32_t> offset;
  std::vector<std::uint32_t> targets;
};

std::uint64_t hash_surface(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) h = (h ^ c) * 0x100000001b3ULL;
  return h ^ (h >> 29);
}

constexpr std::uint64_t kLongSurface = ~std::uint64_t{0};

// Surfaces up to 7 bytes packed with their length; an exact, injective key.
std::uint64_t pack_surface(std::string_view s) {
  if (s.size() > 7) return kLongSurface;
  std::uint64_t v = static_cast<std::uint64_t>(s.size()) << 56;
  for (std::size_t k = 0; k < s.size(); ++k) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(s[k])) << (8 * k);
  return v;
}

struct Keyed {
  std::uint32_t key;
  std::uint32_t item;  // target position, or n_tgt + source position
};

// Stable LSD radix sort on the 32-bit key, 11 bits per pass.
void radix_sort(std::vector<Keyed>& a) {
  constexpr int kBits = 11;
  constexpr std::uint32_t kMask = (1u << kBits) - 1;
  std::vector<Keyed> buf(a.size());
  std::vector<std::size_t> count(kMask + 2);
  for (int shift = 0; shift < 32; shift += kBits) {
    std::fill(count.begin(), count.end(), 0);
    for (const auto& x : a) ++count[((x.key >> shift) & kMask) + 1];
    for (std::uint32_t d = 0; d <= kMask; ++d) count[d + 1] += count[d];
    for (const auto& x : a) buf[count[(x.key >> shift) & kMask]++] = x;
    a.swap(buf);
  }
}

// Tokens are sorted by surface hash; equal-hash runs are split by exact
// surface, so collisions never produce false matches. Within a group the
// target items precede the source items and both stay in stream order.
MatchIndex index_matches(std::span<const FlatToken> src, std::span<const FlatToken> tgt) {
  const std::size_t m = tgt.size();
  const std::size_t n = src.size();
  auto surface = [&](std::uint32_t item) -> const std::string& {
    return item < m ? tgt[item].surface : src[item - m].surface;
  };
  std::vector<Keyed> a(m + n);
  std::vector<std::uint64_t> packed(m + n);
  for (std::size_t j = 0; j < m; ++j) {
    a[j] = {static_cast<std::uint32_t>(hash_surface(tgt[j].surface) >> 32), static_cast<std::uint32_t>(j)};
    packed[j] = pack_surface(tgt[j].surface);
  }
  for (std::size_t i = 0; i < n; ++i) {
    a[m + i] = {static_cast<std::uint32_t>(hash_surface(src[i].surface) >> 32),
                static_cast<std::uint32_t>(m + i)};
    packed[m + i] = pack_surface(src[i].surface);
  }
  auto same = [&](std::uint32_t x, std::uint32_t y) {
    if (packed[x] != kLongSurface || packed[y] != kLongSurface) return packed[x] == packed[y];
    return surface(x) == surface(y);
  };
  radix_sort(a);

  struct Group {
    std::size_t begin, mid, end;  // [begin, mid) target items, [mid, end) source items
  };
  std::vector<Group> groups;
  auto add_group = [&](std::size_t begin, std::size_t end) {
    std::size_t mid = begin;
    while (mid < end && a[mid].item < m) ++mid;
    if (mid > begin && mid < end) groups.push_back({begin, mid, end});
  };
  std::vector<Keyed> scratch;
  for (std::size_t r0 = 0; r0 < a.size();) {
    std::size_t r1 = r0 + 1;
    while (r1 < a.size() && a[r1].key == a[r0].key) ++r1;
    bool uniform = true;
    for (std::size_t k = r0 + 1; k < r1 && uniform; ++k)
      uniform = same(a[k].item, a[r0].item);
    if (uniform) {
      add_group(r0, r1);
    } else {
      // Hash collision: regroup the run by surface, keeping relative order.
      scratch.assign(a.begin() + static_cast<std::ptrdiff_t>(r0), a.begin() + static_cast<std::ptrdiff_t>(r1));
      std::vector<bool> used(scratch.size(), false);
      std::size_t out = r0;
      for (std::size_t k = 0; k < scratch.size(); ++k) {
        if (used[k]) continue;
        const std::size_t begin = out;
        for (std::size_t q = k; q < scratch.size(); ++q) {
          if (!used[q] && same(scratch[q].item, scratch[k].item)) {
            used[q] = true;
            a[out++] = scratch[q];
          }
        }
        add_group(begin, out);
      }
    }
    r0 = r1;
  }

  MatchIndex idx;
  idx.offset.assign(n + 1, 0);
  for (const auto& g : groups)
    for (std::size_t k = g.mid; k < g.end; ++k) idx.offset[a[k].item - m + 1] = static_cast<std::uint32_t>(g.mid - g.begin);
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    total += idx.offset[i + 1];
    if (total > std::numeric_limits<std::uint32_t>::max())
      throw std::length_error("lcs_hunt_szymanski: too many matching pairs");
    idx.offset[i + 1] = static_cast<std::uint32_t>(total);
  }
  idx.targets.resize(idx.offset[n]);
  for (const auto& g : groups) {
    for (std::size_t k = g.mid; k < g.end; ++k) {
      auto* dst = idx.targets.data() + idx.offset[a[k].item - m];
      for (std::size_t t = g.begin; t < g.mid; ++t) *dst++ = a[t].item;
    }
  }
  return idx;
}

}  // namespace

LcsResult lcs_hunt_szymanski(std::span<const FlatToken> src,
                             std::span<const FlatToken> tgt) {
  LcsResult result;
  result.stats.n_src = src.size();
  result.stats.n_tgt = tgt.size();
  if (src.empty() || tgt.empty()) return result;

  const MatchIndex idx = index_matches(src, tgt);
  const std::size_t n = src.size();
  const auto m = static_cast<std::uint32_t>(tgt.size());
  auto occurrences = [&](std::size_t i) {
    return std::span(idx.targets).subspan(idx.offset[i], idx.offset[i + 1] - idx.offset[i]);
  };
  result.stats.matching_pairs = idx.offset[n];

  // through[offset[i] + k] is the length of the longest common subsequence of
  // src[i:] and tgt[t:] that starts with the match (i, t), where t is the k-th
  // occurrence of src[i]'s surface in the target.
  std::vector<std::uint32_t> through(idx.offset[n]);

  // Thresholds over the reversed target: thresh[k] is the smallest reversed
  // position r = m-1-t such that a common subsequence of length k+1 exists
  // between the already processed source suffix and tgt[t:]. Strictly
  // increasing, so each match is placed by binary search.
  std::vector<std::uint32_t> thresh;
  for (std::size_t i = n; i-- > 0;) {
    const auto occ = occurrences(i);
    // Ascending t is descending reversed position, so updates made for this
    // row never feed later queries of the same row.
    for (std::size_t k = 0; k < occ.size(); ++k) {
      const std::uint32_t r = m - 1 - occ[k];
      auto it = std::lower_bound(thresh.begin(), thresh.end(), r);
      const auto level = static_cast<std::uint32_t>(it - thresh.begin());
      through[idx.offset[i] + k] = level + 1;
      if (it == thresh.end()) {
        thresh.push_back(r);
      } else {
        *it = r;
      }
    }
  }

  // Forward greedy walk: the earliest source row whose first usable target
  // occurrence still reaches the remaining length. Within a row `through` is
  // non-increasing in t, so only that first occurrence needs checking.
  std::size_t remaining = thresh.size();
  result.stats.lcs_len = remaining;
  result.pairs.reserve(remaining);
  std::uint32_t next_t = 0;
  for (std::size_t i = 0; i < n && remaining > 0; ++i) {
    const auto occ = occurrences(i);
    auto it = std::lower_bound(occ.begin(), occ.end(), next_t);
    if (it == occ.end()) continue;
    const auto k = static_cast<std::size_t>(it - occ.begin());
    if (through[idx.offset[i] + k] != remaining) continue;
    result.pairs.push_back(MatchPair{i, *it});
    next_t = *it + 1;
    --remaining;
  }
  return result;
}

LcsResult lcs_dp_oracle(std::span<const FlatToken> src, std::span<const FlatToken> tgt) {
  const std::uint64_t cells =
      static_cast<std::uint64_t>(src.size()) * static_cast<std::uint64_t>(tgt.size());
  if (cells > kOracleCellCap) {
    throw OracleTooLarge("DP oracle needs " + std::to_string(cells) +
                         " cells, cap is " + std::to_string(kOracleCellCap));
  }
  LcsResult result;
  const std::size_t n = src.size();
  const std::size_t m = tgt.size();
  result.stats.n_src = n;
  result.stats.n_tgt = m;

  // suffix[i][j] = LCS length of src[i:] and tgt[j:].
  const std::size_t width = m + 1;
  std::vector<std::uint32_t> suffix((n + 1) * width, 0);
  auto at = [&](std::size_t i, std::size_t j) -> std::uint32_t& { return suffix[i * width + j]; };
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = m; j-- > 0;) {
      if (src[i].surface == tgt[j].surface) {
        ++result.stats.matching_pairs;
        at(i, j) = at(i + 1, j + 1) + 1;
      } else {
        at(i, j) = std::max(at(i + 1, j), at(i, j + 1));
      }
    }
  }
  result.stats.lcs_len = n == 0 || m == 0 ? 0 : at(0, 0);

  std::size_t remaining = result.stats.lcs_len;
  std::size_t j0 = 0;
  for (std::size_t i = 0; i < n && remaining > 0; ++i) {
    for (std::size_t j = j0; j < m; ++j) {
      if (src[i].surface == tgt[j].surface && at(i + 1, j + 1) + 1 == remaining) {
        result.pairs.push_back(MatchPair{i, j});
        j0 = j + 1;
        --remaining;
        break;
      }
    }
  }
  return result;
}

}  // namespace uprprc
