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

#include "uprprc/text_normalize.hpp"

namespace uprprc {

// A token in the whole-document stream.
struct FlatToken {
  std::string surface;
  std::uint32_t letters = 0;
  std::size_t para_index = 0;
  std::size_t token_index = 0;
};

struct MatchPair {
  std::size_t src_pos = 0;
  std::size_t tgt_pos = 0;

  bool operator==(const MatchPair&) const = default;
  auto operator<=>(const MatchPair&) const = default;
};

struct LcsStats {
  std::size_t n_src = 0;
  std::size_t n_tgt = 0;
  std::uint64_t matching_pairs = 0;  // R: (i, j) with equal surfaces
  std::size_t lcs_len = 0;

  bool operator==(const LcsStats&) const = default;
};

struct LcsResult {
  std::vector<MatchPair> pairs;
  LcsStats stats;
};

// Concatenates the paragraph token lists into one stream.
std::vector<FlatToken> flatten_tokens(const Document& doc);

// Sparse LCS in O((R + N) log N). Among all maximum-length common
// subsequences, returns the one whose (src_pos, tgt_pos) sequence is
// lexicographically smallest.
LcsResult lcs_hunt_szymanski(std::span<const FlatToken> src,
                             std::span<const FlatToken> tgt);

inline constexpr std::uint64_t kOracleCellCap = 4'000'000;

// Quadratic dynamic-programming reference with the same contract. Throws
// OracleTooLarge when n_src * n_tgt exceeds kOracleCellCap.
LcsResult lcs_dp_oracle(std::span<const FlatToken> src, std::span<const FlatToken> tgt);

}  // namespace uprprc
