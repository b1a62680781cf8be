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

// Seeded generators shared by the unit and acceptance suites.

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "uprprc/gapa.hpp"
#include "uprprc/lcs.hpp"
#include "uprprc/tables.hpp"

namespace uprprc::testing {

// Uniform draws from an alphabet of `alphabet` letter-only symbols.
std::vector<FlatToken> random_stream(std::mt19937_64& rng, std::size_t length,
                                     std::size_t alphabet);

// Surface for symbol `k` of a synthetic alphabet (letters only).
std::string symbol_word(std::size_t k);

struct SyntheticPairOptions {
  std::size_t groups = 12;
  std::size_t max_shape = 5;       // largest m or n in an M-N group
  double gibberish_ratio = 0.0;    // fraction of source paragraphs to inject
};

struct SyntheticPair {
  std::vector<std::string> src_paragraphs;
  std::vector<std::string> tgt_paragraphs;
  // Ground-truth groups in final (post-injection) indices.
  std::vector<std::pair<IndexRange, IndexRange>> truth;
  std::vector<std::size_t> gibberish_src;  // injected paragraph indices
};

// A base text cut into groups; each group is split into m source and n
// target paragraphs at disjoint cut points, so the groups are exactly the
// connected pieces of the paragraph overlap graph. Optional gibberish
// paragraphs (nonsense words plus a few function words) go between groups
// on the source side.
SyntheticPair make_synthetic_pair(std::mt19937_64& rng, const SyntheticPairOptions& options);

struct PlantedTable {
  TableKind kind;
  LineSpan span;  // line span inside the generated document
  std::vector<std::vector<std::string>> cells;  // logical cell texts
};

struct TableDocument {
  std::string text;
  std::vector<PlantedTable> tables;
};

// Renders one table of the given kind. Cell texts may mix ASCII and CJK
// words; some cells wrap onto several lines.
std::vector<std::string> render_table(std::mt19937_64& rng, TableKind kind,
                                      std::vector<std::vector<std::string>>& cells_out);

// Prose paragraphs interleaved with 1-3 random tables.
TableDocument make_table_document(std::mt19937_64& rng);

}  // namespace uprprc::testing
