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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "uprprc/error.hpp"

namespace uprprc {

enum class TableKind {
  DashRuled,           // top rule, header, splitter rule, body, bottom rule
  TopBottomDelimited,  // segmented top rule, body, matching bottom rule
  Grid,                // '+'/'-' borders with '|' cell separators
};

const char* to_string(TableKind kind);

// Half-open range of line indices.
struct LineSpan {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  bool operator==(const LineSpan&) const = default;
};

struct TableBlock {
  TableKind kind = TableKind::Grid;
  LineSpan line_span;
  // Column start offsets in display-width units. For grid tables these are
  // the positions of the '+' corners, excluding the closing one.
  std::vector<std::size_t> col_bounds;
  // Grid tables only: display column of the closing '+'.
  std::size_t right_edge = 0;
  // Logical rows; every row has exactly col_bounds.size() cells.
  std::vector<std::vector<std::string>> rows;
  // Physical line indices (into the detector input) backing each row.
  std::vector<std::vector<std::size_t>> row_lines;
};

// 0 for combining marks, 2 for East Asian Wide/Fullwidth, 1 otherwise.
int char_width(char32_t cp);
std::size_t display_width(std::string_view s);

// A dash rule has at least three '-' and at least 80% of its non-space
// characters are '-'.
bool is_dash_rule(std::string_view line);

// Column bounds of a rule line: the start of every maximal run for dash rules,
// or every '+' but the last for grid borders. Throws NotATable when fewer
// than two columns can be derived.
std::vector<std::size_t> parse_columns(std::string_view rule_line);

// Finds non-overlapping tables in document order. Grid tables take
// precedence over dash-ruled ones, which take precedence over top/bottom
// delimited ones. Rejected candidates are reported through `diagnostics`.
std::vector<TableBlock> detect_tables(std::span<const std::string> lines,
                                      Diagnostics* diagnostics = nullptr);

// One line per logical row, non-empty cells joined by a single space.
std::vector<std::string> flatten_table(const TableBlock& block);

inline constexpr int kDefaultMaxFlattenPasses = 16;

// Repeatedly detects and inlines tables until none remain. Tables nested in
// a cell are inlined first; the enclosing table follows on the next pass.
// Throws FlattenDiverged if tables are still found after `max_passes`
// flattening passes.
std::string flatten_recursive(std::string_view text,
                              int max_passes = kDefaultMaxFlattenPasses,
                              Diagnostics* diagnostics = nullptr,
                              int* passes_used = nullptr);

std::vector<std::string> split_lines(std::string_view text);
std::string join_lines(std::span<const std::string> lines);

}  // namespace uprprc
